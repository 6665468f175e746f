#include "btzgeo/invisible.hpp"

#include <algorithm>
#include <cmath>

namespace btz {

namespace {

void append_segment_samples(std::vector<EinPoint>& out, const EinPoint& p, const EinPoint& q,
                            int n_samples) {
    // Lightlike segment from p to q: theta interpolates linearly, phi follows
    // the short arc (the gap is < pi for admitted segments).
    double dphi = std::remainder(q.phi - p.phi, 2 * kPi);
    for (int i = 1; i < n_samples; ++i) {
        const double s = static_cast<double>(i) / n_samples;
        out.push_back({p.phi + s * dphi, p.theta + s * (q.theta - p.theta)});
    }
}

void reject_pure_lightlike(const std::vector<EinPoint>& pts) {
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const double d = circle_distance(pts[i].phi, pts[j].phi);
            const double dt = std::abs(
                std::remainder(pts[i].theta - pts[j].theta, 2 * kPi));
            if (d > kPi - 1e-9 && std::abs(dt - kPi) < 1e-9)
                throw NonAchronalInput("pure lightlike set (contains an antipodal pair)");
        }
}

}  // namespace

AchronalSpec AchronalSpec::make(SpecKind kind, std::vector<EinPoint> defining,
                                std::vector<EinPoint> sampled, int n_grid) {
    AchronalSpec s;
    s.kind_ = kind;
    s.defining_ = std::move(defining);
    s.sampled_ = std::move(sampled);
    if (s.sampled_.empty()) throw EmptySpec("achronal spec: no points");
    s.env_ = envelopes(s.sampled_, n_grid);
    s.lifts_ = coherent_lift(s.sampled_);
    return s;
}

AchronalSpec AchronalSpec::splitting(const EinPoint& x, const EinPoint& y, int n_grid) {
    if (causal_relation(x, y) != CausalRel::none)
        throw NonAchronalInput("splitting spec: points must not be causally related");
    return make(SpecKind::Splitting, {x, y}, {x, y}, n_grid);
}

AchronalSpec AchronalSpec::extreme(const EinPoint& x, const EinPoint& y, int n_grid) {
    if (causal_relation(x, y) != CausalRel::lightlike_future)
        throw NonAchronalInput("extreme spec: y must be lightlike-future of x");
    if (y.theta <= x.theta || circle_distance(x.phi, y.phi) > kPi - 1e-9)
        throw NonAchronalInput("extreme spec: segment must be strict and shorter than a half-turn");
    std::vector<EinPoint> sampled = {x, y};
    append_segment_samples(sampled, x, y, kSegmentSamples);
    return make(SpecKind::Extreme, {x, y}, std::move(sampled), n_grid);
}

AchronalSpec AchronalSpec::conical(const EinPoint& x, const EinPoint& corner, const EinPoint& y,
                                   int n_grid) {
    if (causal_relation(x, corner) != CausalRel::lightlike_future ||
        causal_relation(y, corner) != CausalRel::lightlike_future)
        throw NonAchronalInput("conical spec: corner must be the lightlike future of both feet");
    if (causal_relation(x, y) != CausalRel::none)
        throw NonAchronalInput("conical spec: feet must not be causally related");
    std::vector<EinPoint> sampled = {x, corner, y};
    append_segment_samples(sampled, x, corner, kSegmentSamples);
    append_segment_samples(sampled, corner, y, kSegmentSamples);
    return make(SpecKind::Conical, {x, corner, y}, std::move(sampled), n_grid);
}

AchronalSpec AchronalSpec::point_cloud(const std::vector<EinPoint>& pts, int n_grid) {
    const auto rep = achronality_check(pts);
    if (!rep.achronal) throw NonAchronalInput("point cloud: not achronal");
    reject_pure_lightlike(pts);
    return make(SpecKind::PointCloud, pts, pts, n_grid);
}

AchronalSpec AchronalSpec::limit_set_spec(const std::vector<EinPoint>& pts, int n_grid) {
    const auto rep = achronality_check(pts);
    if (!rep.achronal) throw NonAchronalInput("limit set: not achronal");
    reject_pure_lightlike(pts);
    return make(SpecKind::LimitSet, pts, pts, n_grid);
}

std::optional<int> invisible_window(const AchronalSpec& spec, const Vec22& v) {
    if (spec.lifts().empty()) throw EmptySpec("invisible_membership: empty spec");
    if (spec.kind() != SpecKind::Extreme) {
        for (const auto& p : spec.lifts())
            if (pairing(v, p) >= 0) return std::nullopt;
        return 0;
    }
    // Extreme: all constraints must share one time window.
    const CylCoord3 c = conformal_coords(v);
    const auto vs = sphere_point(c.rho_prime, c.phi);
    for (int k = -1; k <= 1; ++k) {
        bool ok = true;
        for (const auto& p : spec.sampled_points()) {
            const double d = sphere_distance(vs, sphere_point(kPi / 2, p.phi));
            if (std::abs(c.theta + 2 * kPi * k - p.theta) >= d) {
                ok = false;
                break;
            }
        }
        if (ok) return k;
    }
    return std::nullopt;
}

bool invisible_membership(const AchronalSpec& spec, const Vec22& v) {
    if (!on_quadric(v)) throw OffQuadricError("invisible_membership: Q(v) != -1");
    return invisible_window(spec, v).has_value();
}

namespace {

struct RankOne {
    std::array<double, 2> u;
    std::array<double, 2> v;
};

RankOne split_rank_one(const Mat2& m) {
    const double n0 = std::hypot(m.a, m.c);
    const double n1 = std::hypot(m.b, m.d);
    RankOne r;
    if (n0 >= n1) {
        r.u = {m.a / n0, m.c / n0};
    } else {
        r.u = {m.b / n1, m.d / n1};
    }
    // v from M^T u, normalized.
    const double v0 = m.a * r.u[0] + m.c * r.u[1];
    const double v1 = m.b * r.u[0] + m.d * r.u[1];
    const double nv = std::hypot(v0, v1);
    r.v = {v0 / nv, v1 / nv};
    return r;
}

}  // namespace

IsometryPair normalize_splitting(const AchronalSpec& spec) {
    if (spec.kind() != SpecKind::Splitting && spec.kind() != SpecKind::Conical)
        throw std::invalid_argument("normalize_splitting: spec kind has no two-point frame");
    const EinPoint x = spec.defining_points().front();
    const EinPoint y = spec.defining_points().back();
    const RankOne p = split_rank_one(vec_to_mat(ein_to_null_vector(x)));
    const RankOne q = split_rank_one(vec_to_mat(ein_to_null_vector(y)));

    const double det_u = p.u[0] * q.u[1] - p.u[1] * q.u[0];
    const double det_v = p.v[0] * q.v[1] - p.v[1] * q.v[0];
    if (std::abs(det_u) < 1e-9 || std::abs(det_v) < 1e-9)
        throw DegenerateSpec("normalize_splitting: lifts are linearly dependent");
    if (det_u * det_v < 0)
        throw DegenerateSpec("normalize_splitting: points are causally related");

    // h_L maps u1, u2 to a1 e1, a2 e2 with a1 a2 = det U; W = h_R^{-T} does
    // the same on the v side. Taking a1 = sqrt(|det|) > 0 and a2 = det/a1
    // keeps both image scales positive exactly when det U * det V > 0.
    auto frame_map = [](const std::array<double, 2>& c1, const std::array<double, 2>& c2,
                        double det) {
        const double a1 = std::sqrt(std::abs(det));
        const double a2 = det / a1;
        const double inv00 = c2[1] / det, inv01 = -c2[0] / det;
        const double inv10 = -c1[1] / det, inv11 = c1[0] / det;
        return Mat2{a1 * inv00, a1 * inv01, a2 * inv10, a2 * inv11};
    };
    const Mat2 h_left = frame_map(p.u, q.u, det_u);
    const Mat2 w = frame_map(p.v, q.v, det_v);
    const Mat2 h_right = w.inverse_unit().transpose();

    IsometryPair h(h_left, h_right);
    // Residual check: images must be positive multiples of the frame directions.
    const Vec22 ix = apply_isometry(h, ein_to_null_vector(x));
    const Vec22 iy = apply_isometry(h, ein_to_null_vector(y));
    const double sx = ix.x1, sy = -iy.x1;
    const double rx = std::abs(ix.x2) + std::abs(ix.y2) + std::abs(ix.y1 - ix.x1);
    const double ry = std::abs(iy.x2) + std::abs(iy.y2) + std::abs(iy.y1 + iy.x1);
    if (sx <= 0 || sy <= 0 || rx > 1e-8 * std::max(1.0, sx) || ry > 1e-8 * std::max(1.0, sy))
        throw DegenerateSpec("normalize_splitting: frame residual too large");
    return h;
}

namespace {

// Rotation by pi in the (x1,x2)-plane: conjugation by (R0-quarter-turn) on
// both sides. Swaps the standard feet and the two diamonds.
IsometryPair diamond_swap() {
    const Mat2 r{0, 1, -1, 0};
    return {r, r};
}

// Feet normalization for conical specs: corner moved over the first diamond.
IsometryPair conical_frame(const AchronalSpec& spec) {
    IsometryPair h = normalize_splitting(spec);
    const Vec22 corner = apply_isometry(h, ein_to_null_vector(spec.defining_points()[1]));
    if (corner.x2 < 0) {
        const IsometryPair s = diamond_swap();
        h = IsometryPair(s.gL * h.gL, s.gR * h.gR);
    }
    return h;
}

}  // namespace

std::string to_string(SplitRegion r) {
    switch (r) {
        case SplitRegion::End1: return "end1";
        case SplitRegion::End2: return "end2";
        case SplitRegion::FutureCore: return "future_core";
        case SplitRegion::PastCore: return "past_core";
        case SplitRegion::FutureHorizon: return "future_horizon";
        case SplitRegion::PastHorizon: return "past_horizon";
        case SplitRegion::Outside: return "outside";
    }
    return "?";
}

AffineCoord standard_affine(const Vec22& v) {
    AffineCoord a;
    if (v.y1 <= 1e-12) return a;
    a.in_chart = true;
    a.x = v.x1 / v.y1;
    a.y = v.x2 / v.y1;
    a.z = v.y2 / v.y1;
    return a;
}

SplitRegion split_region_classify(const AchronalSpec& spec, const Vec22& v, double band_tol) {
    const IsometryPair h =
        (spec.kind() == SpecKind::Conical) ? conical_frame(spec) : normalize_splitting(spec);
    const AffineCoord a = standard_affine(apply_isometry(h, v));
    if (!a.in_chart || std::abs(a.x) >= 1) return SplitRegion::Outside;
    const double s1 = a.z - a.y;
    const double s2 = a.z + a.y;
    if (std::abs(s1) <= band_tol)
        return s2 >= -band_tol ? SplitRegion::FutureHorizon : SplitRegion::PastHorizon;
    if (std::abs(s2) <= band_tol)
        return s1 > 0 ? SplitRegion::FutureHorizon : SplitRegion::PastHorizon;
    if (s1 > 0 && s2 > 0) return SplitRegion::FutureCore;
    if (s1 < 0 && s2 < 0) return SplitRegion::PastCore;
    if (s1 < 0 && s2 > 0) return SplitRegion::End1;
    return SplitRegion::End2;
}

std::vector<EinPoint> envelope_corner_points(const AchronalSpec& spec, bool upper) {
    const LipschitzEnvelope& env = upper ? spec.envelope().upper : spec.envelope().lower;
    std::vector<EinPoint> support = spec.sampled_points();
    std::sort(support.begin(), support.end(), [](const EinPoint& a, const EinPoint& b) {
        auto wrap = [](double phi) {
            double w = std::fmod(phi, 2 * kPi);
            return w < 0 ? w + 2 * kPi : w;
        };
        return wrap(a.phi) < wrap(b.phi);
    });
    std::vector<EinPoint> corners;
    const std::size_t n = support.size();
    for (std::size_t i = 0; i < n; ++i) {
        const EinPoint& pcur = support[i];
        const EinPoint& pnext = support[(i + 1) % n];
        double arc = std::fmod(pnext.phi - pcur.phi, 2 * kPi);
        if (arc <= 0) arc += 2 * kPi;
        const double rise = upper ? pnext.theta - pcur.theta : pcur.theta - pnext.theta;
        const double s = (arc + rise) / 2;
        if (s <= 0 || s >= arc) continue;
        const double phi_c = pcur.phi + s;
        corners.push_back({phi_c, env(phi_c)});
    }
    return corners;
}

namespace {

std::vector<Vec22> envelope_graph_lifts(const AchronalSpec& spec, bool upper) {
    const LipschitzEnvelope& env = upper ? spec.envelope().upper : spec.envelope().lower;
    std::vector<EinPoint> pts = spec.sampled_points();
    for (int i = 0; i < env.n_grid(); ++i) pts.push_back({env.grid_phi(i), env.grid()[i]});
    for (const auto& c : envelope_corner_points(spec, upper)) pts.push_back(c);
    return coherent_lift(pts);
}

}  // namespace

bool core_membership(const AchronalSpec& spec, const Vec22& v, CoreSide side) {
    const auto lifts = envelope_graph_lifts(spec, side == CoreSide::plus);
    for (const auto& p : lifts)
        if (pairing(v, p) >= 0) return false;
    return true;
}

}  // namespace btz
