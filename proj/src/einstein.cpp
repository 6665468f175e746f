#include "btzgeo/einstein.hpp"

#include <algorithm>
#include <limits>

namespace btz {

namespace {

CausalRel relate(double dtheta, double dist, double tol) {
    if (std::abs(std::abs(dtheta) - dist) <= tol)
        return dtheta >= 0 ? CausalRel::lightlike_future : CausalRel::lightlike_past;
    if (dtheta > dist) return CausalRel::strict_future;
    if (dtheta < -dist) return CausalRel::strict_past;
    return CausalRel::none;
}

}  // namespace

CausalRel causal_relation(const EinPoint& a, const EinPoint& b, double tol) {
    return relate(b.theta - a.theta, circle_distance(a.phi, b.phi), tol);
}

CausalRel causal_relation(const Ein3Point& a, const Ein3Point& b, double tol) {
    return relate(b.theta - a.theta, sphere_distance(a.p, b.p), tol);
}

std::vector<Vec22> coherent_lift(const std::vector<EinPoint>& points) {
    const Vec22 basepoint{0, 0, 1, 0};
    // Anchor ordering: lexicographically smallest (phi mod 2*pi, theta).
    std::size_t anchor = 0;
    auto key = [](const EinPoint& p) {
        double phi = std::fmod(p.phi, 2 * kPi);
        if (phi < 0) phi += 2 * kPi;
        return std::make_pair(phi, p.theta);
    };
    for (std::size_t i = 1; i < points.size(); ++i)
        if (key(points[i]) < key(points[anchor])) anchor = i;

    std::vector<Vec22> lifts;
    lifts.reserve(points.size());
    for (const auto& p : points) {
        Vec22 v = ein_to_null_vector(p);
        if (pairing(basepoint, v) > kLightlikeTol) v = -v;
        lifts.push_back(v);
    }
    return lifts;
}

AchronalityReport achronality_check(const std::vector<EinPoint>& points, bool strict,
                                    double tol) {
    AchronalityReport rep;
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            const CausalRel r = causal_relation(points[i], points[j], tol);
            const bool bad = strict ? causally_related(r) : strictly_related(r);
            if (bad) {
                rep.achronal = false;
                rep.offending = {i, j};
                return rep;
            }
        }
    }
    return rep;
}

LipschitzEnvelope::LipschitzEnvelope(std::vector<EinPoint> support, bool upper, int n_grid)
    : support_(std::move(support)), upper_(upper), n_grid_(n_grid) {
    grid_.resize(n_grid_);
    for (int i = 0; i < n_grid_; ++i) grid_[i] = (*this)(grid_phi(i));
}

double LipschitzEnvelope::operator()(double phi) const {
    double best = upper_ ? std::numeric_limits<double>::infinity()
                         : -std::numeric_limits<double>::infinity();
    for (const auto& p : support_) {
        const double d = circle_distance(phi, p.phi);
        const double v = upper_ ? p.theta + d : p.theta - d;
        best = upper_ ? std::min(best, v) : std::max(best, v);
    }
    return best;
}

EnvelopePair envelopes(const std::vector<EinPoint>& points, int n_grid) {
    if (points.empty()) throw NonAchronalInput("envelopes: empty input");
    const auto rep = achronality_check(points, /*strict=*/false);
    if (!rep.achronal) throw NonAchronalInput("envelopes: input not achronal");
    return {LipschitzEnvelope(points, /*upper=*/true, n_grid),
            LipschitzEnvelope(points, /*upper=*/false, n_grid)};
}

bool omega_membership(const EnvelopePair& env, const EinPoint& p, double tol) {
    return env.lower(p.phi) + tol < p.theta && p.theta < env.upper(p.phi) - tol;
}

}  // namespace btz
