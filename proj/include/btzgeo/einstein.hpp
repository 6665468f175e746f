#ifndef BTZGEO_EINSTEIN_HPP
#define BTZGEO_EINSTEIN_HPP

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "btzgeo/quadric.hpp"

namespace btz {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kLightlikeTol = 1e-9;
inline constexpr int kDefaultEnvelopeGrid = 4096;

/// Point of the boundary cylinder: phi mod 2*pi on the circle, theta a lifted
/// (unbounded) time.
struct EinPoint {
    double phi = 0;
    double theta = 0;
};

/// Point of the solid cylinder (sphere x line) used for interior causality.
struct Ein3Point {
    std::array<double, 3> p{0, 0, 1};
    double theta = 0;
};

/// Causal relation of b relative to a. The future-side values are the ones
/// named by the API contract; past-side values realize antisymmetry under
/// swapping the arguments.
enum class CausalRel { strict_past, lightlike_past, none, lightlike_future, strict_future };

inline bool causally_related(CausalRel r) { return r != CausalRel::none; }
inline bool strictly_related(CausalRel r) {
    return r == CausalRel::strict_past || r == CausalRel::strict_future;
}

inline double circle_distance(double phi_a, double phi_b) {
    double d = std::fmod(std::abs(phi_a - phi_b), 2 * kPi);
    return (d > kPi) ? 2 * kPi - d : d;
}

CausalRel causal_relation(const EinPoint& a, const EinPoint& b, double tol = kLightlikeTol);
CausalRel causal_relation(const Ein3Point& a, const Ein3Point& b, double tol = kLightlikeTol);

inline Ein3Point to_ein3(const CylCoord3& c) {
    return {sphere_point(c.rho_prime, c.phi), c.theta};
}
inline Ein3Point to_ein3(const EinPoint& e) {
    return {sphere_point(kPi / 2, e.phi), e.theta};
}

/// Composition of the antipody with the half-period time shift.
inline EinPoint delta_shift(const EinPoint& p, int k = 1) {
    return {p.phi + k * kPi, p.theta + k * kPi};
}

/// Null representative (cos phi, sin phi, cos theta, sin theta) in E.
inline Vec22 ein_to_null_vector(const EinPoint& p) {
    return {std::cos(p.phi), std::sin(p.phi), std::cos(p.theta), std::sin(p.theta)};
}

/// Null lifts of a point set with a coherent sign convention: each
/// representative is flipped so its pairing with the interior basepoint
/// (0,0,1,0) is negative, anchored at the lexicographically smallest point.
/// Representatives sitting exactly on the basepoint's light cone keep the
/// canonical sign.
std::vector<Vec22> coherent_lift(const std::vector<EinPoint>& points);

struct AchronalityReport {
    bool achronal = true;
    std::optional<std::pair<std::size_t, std::size_t>> offending;
};

/// True iff no pair of points is strictly causally related; with
/// strict = true, lightlike contact also fails.
AchronalityReport achronality_check(const std::vector<EinPoint>& points, bool strict = false,
                                    double tol = kLightlikeTol);

/// Upper/lower 1-Lipschitz envelopes of an achronal point set, stored both as
/// the generating points (exact evaluation) and as a uniform grid sample.
class LipschitzEnvelope {
  public:
    LipschitzEnvelope() = default;
    LipschitzEnvelope(std::vector<EinPoint> support, bool upper, int n_grid);

    // Exact min/max formula over the generating points.
    double operator()(double phi) const;

    bool upper() const { return upper_; }
    int n_grid() const { return n_grid_; }
    const std::vector<double>& grid() const { return grid_; }
    const std::vector<EinPoint>& support() const { return support_; }
    double grid_phi(int i) const { return 2 * kPi * i / n_grid_; }

  private:
    std::vector<EinPoint> support_;
    bool upper_ = true;
    int n_grid_ = kDefaultEnvelopeGrid;
    std::vector<double> grid_;
};

struct EnvelopePair {
    LipschitzEnvelope upper;
    LipschitzEnvelope lower;
};

/// Envelopes of a nonempty achronal set (lightlike contact allowed).
/// Throws NonAchronalInput otherwise.
EnvelopePair envelopes(const std::vector<EinPoint>& points, int n_grid = kDefaultEnvelopeGrid);

/// True iff p lies strictly between the envelopes.
bool omega_membership(const EnvelopePair& env, const EinPoint& p, double tol = kLightlikeTol);

}  // namespace btz

#endif
