#include <doctest.h>

#include <cmath>
#include <map>

#include "btzgeo/analysis.hpp"
#include "btzgeo/rng.hpp"

using namespace btz;

namespace {

Scenario splitting_scenario() {
    GroupPresentation gp;
    gp.generators.push_back(
        IsometryPair::from_logs(gen_Delta() * kPi, gen_Delta() * (-3 * kPi)));
    gp.labels = {"a"};
    return Scenario::make("unit-splitting", AchronalSpec::splitting({0, 0}, {kPi, 0}),
                          std::move(gp), SamplingConfig{});
}

Scenario conical_scenario() {
    GroupPresentation gp;
    gp.generators.push_back(
        IsometryPair::from_logs(gen_Delta() * kPi, gen_Delta() * (-3 * kPi)));
    gp.labels = {"a"};
    return Scenario::make("unit-conical",
                          AchronalSpec::conical({0, 0}, {kPi / 2, kPi / 2}, {kPi, 0}),
                          std::move(gp), SamplingConfig{});
}

Scenario extreme_scenario() {
    GroupPresentation gp;
    gp.generators.push_back(IsometryPair::from_logs(-gen_H(), gen_Delta() * (2 * kPi)));
    gp.labels = {"a"};
    return Scenario::make("unit-extreme", AchronalSpec::extreme({0, 0}, {kPi / 2, kPi / 2}),
                          std::move(gp), SamplingConfig{});
}

Scenario cyclic_scenario() {
    GroupPresentation gp;
    gp.generators.push_back(IsometryPair::from_logs(gen_Delta() * kPi, gen_Delta() * (3 * kPi)));
    gp.labels = {"a"};
    const EinPoint a = null_direction_to_ein(attractive_fixed_point(gp.generators[0]));
    const EinPoint b = null_direction_to_ein(attractive_fixed_point(gp.generators[0].inverse()));
    Scenario s = Scenario::make("unit-cyclic", AchronalSpec::splitting(a, b), std::move(gp),
                                SamplingConfig{});
    s.sample_absolute_domain = true;
    return s;
}

GroupPresentation diagonal_schottky() {
    GroupPresentation gp;
    gp.generators.push_back(IsometryPair(Mat2{5, 2, 2, 1}, Mat2{5, 2, 2, 1}));
    gp.generators.push_back(IsometryPair(Mat2{1, 2, 2, 5}, Mat2{1, 2, 2, 5}));
    gp.labels = {"a", "b"};
    return gp;
}

Vec22 from_affine(double x, double y, double z) {
    const double n = std::sqrt(1 + z * z - x * x - y * y);
    return {x / n, y / n, 1 / n, z / n};
}

}  // namespace

TEST_CASE("visibility by region") {
    const Scenario s = splitting_scenario();
    SplitMix64 rng(71);
    long ends = 0, cores = 0;
    for (int i = 0; i < 4000; ++i) {
        const Vec22 v = random_quadric_point(rng, 1.45, 1.25);
        if (!invisible_membership(s.spec, v)) continue;
        const SplitRegion r = split_region_classify(s.spec, v);
        if (r == SplitRegion::End1 || r == SplitRegion::End2) {
            CHECK(visible_from_boundary(s, v));
            ++ends;
        } else if (r == SplitRegion::FutureCore) {
            CHECK_FALSE(visible_from_boundary(s, v));
            ++cores;
        } else if (r == SplitRegion::PastCore) {
            // The past core still reaches the boundary; only the future core
            // is hidden.
            CHECK(visible_from_boundary(s, v));
        }
    }
    CHECK(ends > 50);
    CHECK(cores > 50);
}

TEST_CASE("visibility is monotone along causal pasts") {
    const Scenario s = splitting_scenario();
    SplitMix64 rng(72);
    long pairs = 0;
    for (int i = 0; i < 20000 && pairs < 300; ++i) {
        const Vec22 v = random_quadric_point(rng, 1.4, 1.2);
        const Vec22 w = random_quadric_point(rng, 1.4, 1.2);
        if (!invisible_membership(s.spec, v) || !invisible_membership(s.spec, w)) continue;
        const CausalRel r =
            causal_relation(to_ein3(conformal_coords(w)), to_ein3(conformal_coords(v)));
        if (r != CausalRel::strict_future) continue;  // w strictly precedes v
        ++pairs;
        if (visible_from_boundary(s, v)) CHECK(visible_from_boundary(s, w));
    }
    CHECK(pairs >= 300);
}

TEST_CASE("black hole equals the future core away from the band") {
    const Scenario s = splitting_scenario();
    const IsometryPair h = normalize_splitting(s.spec);
    SplitMix64 rng(73);
    long checked = 0, agree = 0;
    for (int i = 0; i < 20000; ++i) {
        const Vec22 v = random_quadric_point(rng, 1.45, 1.25);
        if (!invisible_membership(s.spec, v)) continue;
        const AffineCoord a = standard_affine(apply_isometry(h, v));
        if (std::min(std::abs(a.z - a.y), std::abs(a.z + a.y)) < 1e-3) continue;
        const bool core = split_region_classify(s.spec, v) == SplitRegion::FutureCore;
        ++checked;
        if (black_hole_membership(s, v) == core) ++agree;
    }
    CHECK(checked > 3000);
    CHECK(agree >= checked * 999 / 1000);
}

TEST_CASE("conical black hole is the intermediate region") {
    const Scenario s = conical_scenario();
    SplitMix64 rng(74);
    long checked = 0, agree = 0;
    const IsometryPair h = normalize_splitting(s.spec);
    for (int i = 0; i < 8000; ++i) {
        const Vec22 v = random_quadric_point(rng, 1.45, 1.25);
        if (!invisible_membership(s.spec, v)) continue;
        const AffineCoord a = standard_affine(apply_isometry(h, v));
        if (std::min(std::abs(a.z - a.y), std::abs(a.z + a.y)) < 1e-3) continue;
        const bool core = split_region_classify(s.spec, v) == SplitRegion::FutureCore;
        ++checked;
        if (black_hole_membership(s, v) == core) ++agree;
    }
    CHECK(checked > 1000);
    CHECK(agree >= checked * 999 / 1000);
}

TEST_CASE("extreme scenario has no black hole") {
    const Scenario s = extreme_scenario();
    SplitMix64 rng(75);
    long members = 0;
    for (int i = 0; i < 6000; ++i) {
        const Vec22 v = random_quadric_point(rng, 1.5, 1.25);
        if (!invisible_membership(s.spec, v)) continue;
        ++members;
        CHECK_FALSE(black_hole_membership(s, v));
    }
    CHECK(members > 200);
}

TEST_CASE("horizon bisection lands on the plane z = y") {
    const Scenario s = splitting_scenario();
    SplitMix64 rng(76);
    int done = 0;
    while (done < 40) {
        const double x = rng.uniform(-0.8, 0.8);
        const double y = rng.uniform(0.3, 1.2);
        if (1 - x * x - y * y <= 0.05) continue;
        ++done;
        // Projective representatives: affine z runs from 0 to y + 0.8.
        const Ray ray{Vec22{x, y, 1, 0}, Vec22{0, 0, 0, y + 0.8}};
        const Vec22 located = horizon_locate(s, ray, 1e-8);
        const AffineCoord a = standard_affine(located);
        CHECK(std::abs(a.z - a.y) < 1e-5);
        // The flip happens exactly once along the ray.
        int flips = 0;
        const Vec22 start_q = ray.start * (1 / std::sqrt(-quadratic_form(ray.start)));
        bool prev = visible_from_boundary(s, start_q);
        for (int k = 1; k <= 40; ++k) {
            const Vec22 w = ray.start + ray.direction * (k / 40.0);
            const Vec22 q = w * (1 / std::sqrt(-quadratic_form(w)));
            const bool cur = visible_from_boundary(s, q);
            if (cur != prev) ++flips;
            prev = cur;
        }
        CHECK(flips == 1);
    }
    // Fully visible ray: no straddle.
    const Ray flat{Vec22{0, 0.9, 1, 0}, Vec22{0, 0, 0, 0.1}};
    CHECK_THROWS_AS(horizon_locate(s, flat, 1e-8), NoStraddle);
}

TEST_CASE("conical horizon piece lies on the past-horizon plane") {
    const Scenario s = conical_scenario();
    SplitMix64 rng(77);
    int done = 0;
    while (done < 20) {
        const double x = rng.uniform(-0.8, 0.8);
        const double y = rng.uniform(-1.2, -0.3);
        if (1 - x * x - y * y <= 0.05) continue;
        ++done;
        // From the surviving end (z = 0 lies in end2 for y < 0) into the core.
        const Ray ray{Vec22{x, y, 1, 0}, Vec22{0, 0, 0, -y + 0.8}};
        const Vec22 located = horizon_locate(s, ray, 1e-8);
        const AffineCoord a = standard_affine(located);
        CHECK(std::abs(a.z + a.y) < 1e-5);
    }
}

TEST_CASE("coincidence probe on the flat pair") {
    const ProbeReport rep = coincidence_probe(diagonal_schottky(), 800, 4, 8, 1e-6, 9);
    CHECK(rep.d_members > 50);
    CHECK(rep.d_only == 0);
    CHECK(rep.d_only_fraction == 0.0);
}

TEST_CASE("coincidence probe detects the strict inclusion for one generator") {
    GroupPresentation gp;
    gp.generators.push_back(IsometryPair::from_logs(gen_Delta(), gen_Delta() * 2.0));
    gp.labels = {"a"};
    const ProbeReport rep = coincidence_probe(gp, 3000, 1, 64, 1e-6, 10);
    CHECK(rep.d_members > 100);
    CHECK(rep.d_only > 0);
}

TEST_CASE("lattice truncations shrink the absolute-only fraction") {
    GroupPresentation gp;
    gp.generators.push_back(IsometryPair::from_logs(gen_Delta(), gen_Delta() * std::sqrt(2.0)));
    gp.generators.push_back(IsometryPair::from_logs(gen_Delta() * std::sqrt(3.0), gen_Delta()));
    gp.labels = {"a", "b"};
    const ProbeReport r1 = coincidence_probe(gp, 800, 1, 8, 1e-6, 11);
    const ProbeReport r3 = coincidence_probe(gp, 800, 3, 8, 1e-6, 11);
    CHECK(r1.d_members >= r3.d_members);
}

TEST_CASE("sampling is deterministic and labeled") {
    const Scenario s = splitting_scenario();
    const LabeledPointCloud a = sample_domain(s, 600, 42);
    const LabeledPointCloud b = sample_domain(s, 600, 42);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].point.x1 == b.rows[i].point.x1);
        CHECK(a.rows[i].label == b.rows[i].label);
        CHECK(a.rows[i].visible == b.rows[i].visible);
    }
    std::map<RegionLabel, long> counts;
    for (const auto& r : a.rows) {
        ++counts[r.label];
        CHECK(std::abs(quadratic_form(r.point) + 1) < 1e-9 * quadric_scale(r.point));
    }
    CHECK(counts[RegionLabel::Outside] == 0);
    CHECK(counts[RegionLabel::Inner] == 0);
    CHECK(counts[RegionLabel::End1] > 0);
    CHECK(counts[RegionLabel::End2] > 0);
    CHECK(counts[RegionLabel::FutureCore] > 0);
    CHECK(counts[RegionLabel::PastCore] > 0);
}

TEST_CASE("cyclic sampling exposes the inner band") {
    const Scenario s = cyclic_scenario();
    const LabeledPointCloud cloud = sample_domain(s, 1200, 7);
    const IsometryPair& gamma = s.group.generators[0];
    const double bound = (kPi - 3 * kPi) * (kPi - 3 * kPi) / (4 * kPi * 3 * kPi);  // 1/3
    long inner = 0;
    for (const auto& r : cloud.rows) {
        const Mat2 g = ads_matrix(r.point);
        const double bc = g.b * g.c;
        CHECK(killing_norm(*gamma.logL, *gamma.logR, g) > 0);
        if (r.label == RegionLabel::Inner) {
            ++inner;
            CHECK(bc >= 0);
            CHECK(bc < bound);
        } else {
            CHECK(bc < 1e-9);
        }
    }
    CHECK(inner > 0);
}

TEST_CASE("labels are invariant under the holonomy") {
    const Scenario s = splitting_scenario();
    const IsometryPair gamma = s.group.generators[0];
    const IsometryPair h = normalize_splitting(s.spec);
    SplitMix64 rng(78);
    for (int i = 0; i < 1200; ++i) {
        const Vec22 v = random_quadric_point(rng, 1.4, 1.2);
        if (!invisible_membership(s.spec, v)) continue;
        const Vec22 w = apply_isometry(gamma, v);
        auto band_distance = [&](const Vec22& q) {
            const AffineCoord a = standard_affine(apply_isometry(h, q));
            return std::min(std::abs(a.z - a.y), std::abs(a.z + a.y));
        };
        // The holonomy contracts towards the horizon planes; require both
        // representatives to sit clear of the band.
        if (band_distance(v) < 1e-4 || band_distance(w) < 1e-4) continue;
        CHECK(split_region_classify(s.spec, v) == split_region_classify(s.spec, w));
    }
}
