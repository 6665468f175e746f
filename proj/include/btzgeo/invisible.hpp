#ifndef BTZGEO_INVISIBLE_HPP
#define BTZGEO_INVISIBLE_HPP

#include <optional>
#include <string>
#include <vector>

#include "btzgeo/einstein.hpp"
#include "btzgeo/isometry.hpp"

namespace btz {

inline constexpr double kHorizonBandTol = 1e-6;
inline constexpr int kSegmentSamples = 512;

enum class SpecKind { Splitting, Extreme, Conical, PointCloud, LimitSet };

/// Boundary datum: an achronal subset of the boundary cylinder, normalized to
/// null representatives in E plus cached envelopes.
///  - Splitting: two non-causally related points {x, y}.
///  - Extreme:   a lightlike segment [x, y], y strictly lightlike-future of x.
///  - Conical:   an upper tent [x,z] u [z,y] with z the common future corner.
///  - PointCloud / LimitSet: finite achronal samples.
class AchronalSpec {
  public:
    static AchronalSpec splitting(const EinPoint& x, const EinPoint& y,
                                  int n_grid = kDefaultEnvelopeGrid);
    static AchronalSpec extreme(const EinPoint& x, const EinPoint& y,
                                int n_grid = kDefaultEnvelopeGrid);
    static AchronalSpec conical(const EinPoint& x, const EinPoint& corner, const EinPoint& y,
                                int n_grid = kDefaultEnvelopeGrid);
    static AchronalSpec point_cloud(const std::vector<EinPoint>& pts,
                                    int n_grid = kDefaultEnvelopeGrid);
    static AchronalSpec limit_set_spec(const std::vector<EinPoint>& pts,
                                       int n_grid = kDefaultEnvelopeGrid);

    SpecKind kind() const { return kind_; }
    const std::vector<EinPoint>& defining_points() const { return defining_; }
    const std::vector<EinPoint>& sampled_points() const { return sampled_; }
    const std::vector<Vec22>& lifts() const { return lifts_; }
    const EnvelopePair& envelope() const { return env_; }

  private:
    static AchronalSpec make(SpecKind kind, std::vector<EinPoint> defining,
                             std::vector<EinPoint> sampled, int n_grid);

    SpecKind kind_ = SpecKind::PointCloud;
    std::vector<EinPoint> defining_;  // the structural points (2 or 3, or all)
    std::vector<EinPoint> sampled_;   // defining plus segment samples
    std::vector<Vec22> lifts_;
    EnvelopePair env_;
};

/// True iff pairing(v, p) < 0 for every cached lift p. For the extreme kind
/// the test additionally requires one common time window for all constraints
/// (the invisible domain spans two affine domains there); the two versions
/// agree away from a measure-zero set.
bool invisible_membership(const AchronalSpec& spec, const Vec22& v);

/// Time-window index of v's lift inside the extreme invisible domain
/// (always 0 for the other kinds). nullopt if v is not a member.
std::optional<int> invisible_window(const AchronalSpec& spec, const Vec22& v);

/// Isometry taking the two defining points of a splitting spec to the
/// standard frame directions (1,0,1,0) and (-1,0,1,0), up to positive scale.
IsometryPair normalize_splitting(const AchronalSpec& spec);

enum class SplitRegion {
    End1,
    End2,
    FutureCore,
    PastCore,
    FutureHorizon,
    PastHorizon,
    Outside,
};

std::string to_string(SplitRegion r);

/// Affine coordinates (x, y, z) of a quadric point in the standard frame
/// chart x = x1/y1, y = x2/y1, z = y2/y1 (valid for y1 > 0).
struct AffineCoord {
    double x = 0, y = 0, z = 0;
    bool in_chart = false;
};

AffineCoord standard_affine(const Vec22& v);

/// Region label of a point of the invisible domain of a splitting spec, from
/// the sign pattern of (z - y, z + y) in the normalized affine chart.
SplitRegion split_region_classify(const AchronalSpec& spec, const Vec22& v,
                                  double band_tol = kHorizonBandTol);

/// Corner points of the envelope graph (where the active support point
/// switches between adjacent points in circular order).
std::vector<EinPoint> envelope_corner_points(const AchronalSpec& spec, bool upper);

enum class CoreSide { plus, minus };

/// Membership in the globally hyperbolic core E(Lambda^+/-): the invisibility
/// test against the lifted envelope graph.
bool core_membership(const AchronalSpec& spec, const Vec22& v, CoreSide side);

}  // namespace btz

#endif
