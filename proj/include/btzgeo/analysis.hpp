#ifndef BTZGEO_ANALYSIS_HPP
#define BTZGEO_ANALYSIS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "btzgeo/group.hpp"
#include "btzgeo/invisible.hpp"
#include "btzgeo/kerr.hpp"

namespace btz {

inline constexpr double kVisibilityMargin = 1e-5;

struct SamplingConfig {
    long n_samples = 10000;
    std::uint64_t seed = 1;
    double theta_max = 1.45;      // sampling window half-height
    double rho_prime_max = 1.25;  // sampling window colatitude bound
    double margin = 1e-7;
    long max_attempts_per_sample = 200000;
};

/// Sample columns of the closure of the boundary invisible region: the
/// future envelope graph over the positive-gap arcs plus its corner points.
struct OmegaCurve {
    std::vector<double> cphi, sphi, theta;
};

OmegaCurve build_omega_curve(const AchronalSpec& spec);

/// A validated pair (boundary datum, holonomy group) ready for analysis.
/// Construction runs action_validation and fails on invalid actions.
struct Scenario {
    std::string id = "scenario";
    SpecKind kind = SpecKind::Splitting;
    AchronalSpec spec;
    GroupPresentation group;
    SamplingConfig sampling;
    ActionValidationReport validation;
    OmegaCurve omega;
    // Declared-cyclic scenarios sample the full absolute causal domain of the
    // holonomy (including the inner band); plain elementary ones sample the
    // invisible domain only.
    bool sample_absolute_domain = false;

    static Scenario make(std::string id, AchronalSpec spec, GroupPresentation group,
                         SamplingConfig sampling);
};

enum class RegionLabel {
    End1,
    End2,
    FutureCore,
    PastCore,
    FutureHorizon,
    PastHorizon,
    Inner,  // type-III band of a non-static cyclic holonomy
    Outside,
};

std::string to_string(RegionLabel r);
RegionLabel to_region_label(SplitRegion r);

struct CloudRow {
    Vec22 point;
    CylCoord3 coords;
    RegionLabel label = RegionLabel::Outside;
    bool visible = false;
};

struct LabeledPointCloud {
    std::vector<CloudRow> rows;
    std::string scenario_id;
};

/// Largest value of theta_omega - d(v, omega) - theta_v over the closure of
/// the boundary invisible region (scanned along the future envelope graph,
/// where the supremum is attained). Nonnegative means v is visible.
double visibility_sup(const Scenario& s, const Vec22& v);

/// True iff some boundary point of Omega(Lambda) is causally reachable
/// from v.
bool visible_from_boundary(const Scenario& s, const Vec22& v);

/// Strictly invisible with margin: the visibility supremum stays below
/// -margin (margin absorbs the envelope discretization slack).
bool black_hole_membership(const Scenario& s, const Vec22& v,
                           double margin = kVisibilityMargin);

struct Ray {
    Vec22 start;      // visible end
    Vec22 direction;  // future-timelike displacement in E
};

/// Bisection of the visibility flip along the projective segment
/// start + s * direction (s in [0, 1]), to parameter tolerance tol.
/// Throws NoStraddle if both ends are on the same side.
Vec22 horizon_locate(const Scenario& s, const Ray& ray, double tol = 1e-8);

struct ProbeReport {
    long samples = 0;
    long d_members = 0;
    long d_only = 0;  // in D but failing the convex causal test
    double d_only_fraction = 0;
    std::vector<long> margin_histogram;  // log10 bins of |killing norm| for d_only points
    int word_len = 0;
    int n_max = 0;
    double margin = 0;
};

/// Falsification harness for the coincidence of the convex and absolute
/// causal domains: samples points of D(rho) and tests them against the
/// iterate-causality criterion over the same word ball.
ProbeReport coincidence_probe(const GroupPresentation& gp, long n_samples, int word_len,
                              int n_max, double margin = 1e-6, std::uint64_t seed = 7,
                              const SamplingConfig& window = {});

/// Rejection sample of the invisible domain (plus, for cyclic
/// hyperbolic-hyperbolic holonomies, the inner band of the absolute causal
/// domain), with region labels and visibility flags. Deterministic in seed.
LabeledPointCloud sample_domain(const Scenario& s, long n, std::uint64_t seed);

}  // namespace btz

#endif
