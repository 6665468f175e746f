#include "btzgeo/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "btzgeo/parallel.hpp"
#include "btzgeo/rng.hpp"

namespace btz {

OmegaCurve build_omega_curve(const AchronalSpec& spec) {
    OmegaCurve c;
    const auto& up = spec.envelope().upper;
    const auto& lo = spec.envelope().lower;
    for (int i = 0; i < up.n_grid(); ++i) {
        if (up.grid()[i] - lo.grid()[i] <= 1e-9) continue;
        const double phi = up.grid_phi(i);
        c.cphi.push_back(std::cos(phi));
        c.sphi.push_back(std::sin(phi));
        c.theta.push_back(up.grid()[i]);
    }
    for (const auto& corner : envelope_corner_points(spec, /*upper=*/true)) {
        if (up(corner.phi) - lo(corner.phi) <= 1e-9) continue;
        c.cphi.push_back(std::cos(corner.phi));
        c.sphi.push_back(std::sin(corner.phi));
        c.theta.push_back(corner.theta);
    }
    return c;
}

Scenario Scenario::make(std::string id, AchronalSpec spec, GroupPresentation group,
                        SamplingConfig sampling) {
    Scenario s;
    s.id = std::move(id);
    s.kind = spec.kind();
    s.spec = std::move(spec);
    s.group = std::move(group);
    s.sampling = sampling;
    s.group.validate();
    s.validation = action_validation(s.spec, s.group);
    if (!s.validation.pass)
        throw ScenarioValidationError("scenario '" + s.id + "': " + s.validation.violated);
    s.omega = build_omega_curve(s.spec);
    return s;
}

std::string to_string(RegionLabel r) {
    switch (r) {
        case RegionLabel::End1: return "end1";
        case RegionLabel::End2: return "end2";
        case RegionLabel::FutureCore: return "future_core";
        case RegionLabel::PastCore: return "past_core";
        case RegionLabel::FutureHorizon: return "future_horizon";
        case RegionLabel::PastHorizon: return "past_horizon";
        case RegionLabel::Inner: return "inner";
        case RegionLabel::Outside: return "outside";
    }
    return "?";
}

RegionLabel to_region_label(SplitRegion r) {
    switch (r) {
        case SplitRegion::End1: return RegionLabel::End1;
        case SplitRegion::End2: return RegionLabel::End2;
        case SplitRegion::FutureCore: return RegionLabel::FutureCore;
        case SplitRegion::PastCore: return RegionLabel::PastCore;
        case SplitRegion::FutureHorizon: return RegionLabel::FutureHorizon;
        case SplitRegion::PastHorizon: return RegionLabel::PastHorizon;
        case SplitRegion::Outside: return RegionLabel::Outside;
    }
    return RegionLabel::Outside;
}

double visibility_sup(const Scenario& s, const Vec22& v) {
    const OmegaCurve& curve = s.omega;
    const CylCoord3 c = conformal_coords(v);
    double theta_v = c.theta;
    if (s.kind == SpecKind::Extreme) {
        // Use the lift consistent with the invisible domain when there is one.
        if (const auto k = invisible_window(s.spec, v)) theta_v += 2 * kPi * *k;
    }
    const double sr = std::sin(c.rho_prime);
    const double cv = std::cos(c.phi), sv = std::sin(c.phi);
    double sup = -1e300;
    const std::size_t n = curve.theta.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double cosarc = sr * (curve.cphi[i] * cv + curve.sphi[i] * sv);
        const double d = std::acos(std::clamp(cosarc, -1.0, 1.0));
        sup = std::max(sup, curve.theta[i] - d - theta_v);
    }
    return sup;
}

bool visible_from_boundary(const Scenario& s, const Vec22& v) {
    return visibility_sup(s, v) >= 0;
}

bool black_hole_membership(const Scenario& s, const Vec22& v, double margin) {
    return visibility_sup(s, v) < -margin;
}

namespace {

Vec22 ray_point(const Ray& ray, double t) {
    const Vec22 w = ray.start + ray.direction * t;
    const double q = quadratic_form(w);
    if (!(q < 0)) throw NoStraddle("horizon_locate: ray leaves the model domain");
    return w * (1 / std::sqrt(-q));
}

}  // namespace

Vec22 horizon_locate(const Scenario& s, const Ray& ray, double tol) {
    double lo = 0, hi = 1;
    const bool vis_lo = visible_from_boundary(s, ray_point(ray, lo));
    const bool vis_hi = visible_from_boundary(s, ray_point(ray, hi));
    if (vis_lo == vis_hi) throw NoStraddle("horizon_locate: endpoints do not straddle the flip");
    while (hi - lo > tol) {
        const double mid = (lo + hi) / 2;
        if (visible_from_boundary(s, ray_point(ray, mid)) == vis_lo)
            lo = mid;
        else
            hi = mid;
    }
    return ray_point(ray, (lo + hi) / 2);
}

ProbeReport coincidence_probe(const GroupPresentation& gp, long n_samples, int word_len,
                              int n_max, double margin, std::uint64_t seed,
                              const SamplingConfig& window) {
    ProbeReport rep;
    rep.samples = n_samples;
    rep.word_len = word_len;
    rep.n_max = n_max;
    rep.margin = margin;
    rep.margin_histogram.assign(13, 0);

    const auto words = enumerate_ball_words(gp.generators, word_len);
    // Normalized logs for the spacelike test.
    struct DWord {
        Mat2 xl, xr;
    };
    std::vector<DWord> dwords;
    for (const auto& w : words) {
        try {
            Mat2 xl = sl2_log(w.iso.gL), xr = sl2_log(w.iso.gR);
            const double s = std::max(xl.frobenius(), xr.frobenius());
            if (s > 1e-12) {
                xl = xl * (1 / s);
                xr = xr * (1 / s);
            }
            dwords.push_back({xl, xr});
        } catch (const std::domain_error&) {
            // No principal flow; the element contributes no absolute-domain cut.
        }
    }
    // One representative per inverse pair for the iterate test.
    std::vector<IsometryPair> cwords;
    for (const auto& w : words) {
        std::vector<int> inv(w.letters.rbegin(), w.letters.rend());
        for (int& l : inv) l = -l;
        if (!(w.letters <= inv)) continue;
        const IsoClass cls = classify_pair(w.iso);
        if (cls.tag == IsoTag::Trivial || cls.tag == IsoTag::NonSynchronized) continue;
        IsometryPair iso = w.iso;
        try {
            iso.logL = sl2_log(iso.gL);
            iso.logR = sl2_log(iso.gR);
        } catch (const std::domain_error&) {
            continue;
        }
        cwords.push_back(iso);
    }

    std::vector<int> status(n_samples, 0);       // 0 outside D, 1 in D and C, 2 D-only
    std::vector<double> d_margin(n_samples, 0);  // min killing norm over the ball
    parallel_for(n_samples, [&](long i) {
        SplitMix64 rng = SplitMix64::substream(seed, static_cast<std::uint64_t>(i));
        const Vec22 v = random_quadric_point(rng, window.theta_max, window.rho_prime_max);
        const Mat2 g = ads_matrix(v);
        double min_norm = 1e300;
        for (const auto& w : dwords) min_norm = std::min(min_norm, killing_norm(w.xl, w.xr, g));
        d_margin[i] = min_norm;
        if (min_norm <= margin) return;
        CRangeOptions copt;
        copt.relation_margin = margin;
        bool in_c = true;
        for (const auto& w : cwords) {
            if (!in_C_range(w, v, n_max, copt)) {
                in_c = false;
                break;
            }
        }
        status[i] = in_c ? 1 : 2;
    });
    for (long i = 0; i < n_samples; ++i) {
        if (status[i] == 0) continue;
        ++rep.d_members;
        if (status[i] == 2) {
            ++rep.d_only;
            const double m = std::max(d_margin[i], 1e-300);
            const int bin = std::clamp(static_cast<int>(std::floor(std::log10(m))) + 12, 0, 12);
            ++rep.margin_histogram[bin];
        }
    }
    rep.d_only_fraction =
        rep.d_members ? static_cast<double>(rep.d_only) / static_cast<double>(rep.d_members) : 0;
    return rep;
}

namespace {

struct InnerBandTest {
    bool active = false;
    Mat2 xl, xr;  // generator logs (unnormalized)
};

InnerBandTest inner_band_test(const Scenario& s) {
    InnerBandTest t;
    if (s.group.generators.size() != 1) return t;
    const IsometryPair& g = s.group.generators[0];
    const IsoClass cls = classify_pair(g);
    if (cls.tag != IsoTag::HypHyp) return t;
    try {
        t.xl = g.logL ? *g.logL : sl2_log(g.gL);
        t.xr = g.logR ? *g.logR : sl2_log(g.gR);
    } catch (const std::domain_error&) {
        return t;
    }
    t.active = true;
    return t;
}

}  // namespace

LabeledPointCloud sample_domain(const Scenario& s, long n, std::uint64_t seed) {
    LabeledPointCloud cloud;
    cloud.scenario_id = s.id;
    cloud.rows.resize(n);
    const InnerBandTest band =
        s.sample_absolute_domain ? inner_band_test(s) : InnerBandTest{};
    const SamplingConfig& cfg = s.sampling;

    parallel_for(n, [&](long i) {
        SplitMix64 rng = SplitMix64::substream(seed, static_cast<std::uint64_t>(i));
        for (long attempt = 0; attempt < cfg.max_attempts_per_sample; ++attempt) {
            const Vec22 v = random_quadric_point(rng, cfg.theta_max, cfg.rho_prime_max);
            const bool member = invisible_membership(s.spec, v);
            RegionLabel label = RegionLabel::Outside;
            if (member) {
                switch (s.kind) {
                    case SpecKind::Splitting:
                    case SpecKind::Conical:
                        label = to_region_label(split_region_classify(s.spec, v));
                        break;
                    case SpecKind::Extreme:
                        label = RegionLabel::End1;
                        break;
                    default:
                        label = core_membership(s.spec, v, CoreSide::plus)
                                    ? RegionLabel::FutureCore
                                : core_membership(s.spec, v, CoreSide::minus)
                                    ? RegionLabel::PastCore
                                    : RegionLabel::End1;
                }
            } else if (band.active) {
                const Mat2 g = ads_matrix(v);
                if (killing_norm(band.xl, band.xr, g) <= cfg.margin) continue;
                if (invisible_membership(s.spec, -v)) {
                    label = to_region_label(split_region_classify(s.spec, -v));
                } else {
                    label = RegionLabel::Inner;
                }
            } else {
                continue;
            }
            CloudRow row;
            row.point = v;
            row.coords = conformal_coords(v);
            row.label = label;
            row.visible = visible_from_boundary(s, v);
            cloud.rows[i] = row;
            return;
        }
        throw std::runtime_error("sample_domain: rejection budget exhausted");
    });
    return cloud;
}

}  // namespace btz
