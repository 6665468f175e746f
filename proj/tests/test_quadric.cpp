#include <doctest.h>

#include <cmath>

#include "btzgeo/isometry.hpp"
#include "btzgeo/quadric.hpp"
#include "btzgeo/rng.hpp"

using namespace btz;

TEST_CASE("quadratic form on the axes") {
    CHECK(quadratic_form({1, 0, 0, 0}) == doctest::Approx(1.0));
    CHECK(quadratic_form({0, 0, 1, 0}) == doctest::Approx(-1.0));
    CHECK(quadratic_form({0, 1, 0, 1}) == doctest::Approx(0.0));
}

TEST_CASE("pairing: direct expansions and polarization") {
    CHECK(pairing({0, 0, 1, 0}, {1, 0, 1, 0}) == doctest::Approx(-1.0));
    CHECK(pairing({0, 1, 0, 1}, {0, 1, 0, -1}) == doctest::Approx(2.0));

    SplitMix64 rng(11);
    for (int i = 0; i < 100; ++i) {
        const Vec22 v{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2),
                      rng.uniform(-2, 2)};
        CHECK(pairing(v, v) == doctest::Approx(quadratic_form(v)).epsilon(1e-12));
    }
}

TEST_CASE("pairing is bilinear and symmetric") {
    SplitMix64 rng(12);
    for (int i = 0; i < 200; ++i) {
        const Vec22 u{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2),
                      rng.uniform(-2, 2)};
        const Vec22 v{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2),
                      rng.uniform(-2, 2)};
        const Vec22 w{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2),
                      rng.uniform(-2, 2)};
        CHECK(std::abs(pairing(u + v, w) - pairing(u, w) - pairing(v, w)) < 1e-10);
        CHECK(pairing(u, v) == doctest::Approx(pairing(v, u)).epsilon(1e-14));
    }
}

TEST_CASE("matrix identification and round trips") {
    const Mat2 id = ads_matrix({0, 0, 1, 0});
    CHECK(id.a == doctest::Approx(1.0));
    CHECK(id.b == doctest::Approx(0.0));
    CHECK(id.c == doctest::Approx(0.0));
    CHECK(id.d == doctest::Approx(1.0));

    const Vec22 base = matrix_ads(Mat2::identity());
    CHECK(base.y1 == doctest::Approx(1.0));
    CHECK(std::abs(base.x1) + std::abs(base.x2) + std::abs(base.y2) < 1e-15);

    CHECK_THROWS_AS(ads_matrix({1, 0, 0, 0}), OffQuadricError);

    SplitMix64 rng(13);
    double max_err = 0;
    for (int i = 0; i < 1000; ++i) {
        const Vec22 v = random_quadric_point(rng);
        CHECK(ads_matrix(v).det() == doctest::Approx(-quadratic_form(v)).epsilon(1e-12));
        const Vec22 back = matrix_ads(ads_matrix(v));
        max_err = std::max(max_err, (back - v).euclid_norm());
    }
    CHECK(max_err < 1e-12);
}

TEST_CASE("conformal coordinates") {
    const CylCoord3 base = conformal_coords({0, 0, 1, 0});
    CHECK(base.theta == doctest::Approx(0.0));
    CHECK(base.rho_prime == doctest::Approx(0.0));

    const CylCoord3 c = conformal_coords({std::sinh(1.0), 0, std::cosh(1.0), 0});
    CHECK(c.theta == doctest::Approx(0.0));
    CHECK(c.rho_prime == doctest::Approx(std::atan(std::sinh(1.0))).epsilon(1e-12));
    CHECK(c.phi == doctest::Approx(0.0));

    CHECK(conformal_coords({0, 0, 0, 1}).theta == doctest::Approx(kPi / 2));
}

TEST_CASE("time rotation shifts theta") {
    SplitMix64 rng(14);
    for (int i = 0; i < 100; ++i) {
        const Vec22 v = random_quadric_point(rng, 1.0);
        const double a = rng.uniform(-1.0, 1.0);
        const Vec22 rot{v.x1, v.x2, v.y1 * std::cos(a) - v.y2 * std::sin(a),
                        v.y1 * std::sin(a) + v.y2 * std::cos(a)};
        const double dt = conformal_coords(rot).theta - conformal_coords(v).theta;
        const double wrapped = std::remainder(dt - a, 2 * kPi);
        CHECK(std::abs(wrapped) < 1e-10);
    }
}

TEST_CASE("isometry action preserves the quadratic form") {
    SplitMix64 rng(15);
    for (int i = 0; i < 100; ++i) {
        const double a1 = rng.uniform(-1, 1), b1 = rng.uniform(-1, 1), c1 = rng.uniform(-1, 1);
        const double a2 = rng.uniform(-1, 1), b2 = rng.uniform(-1, 1), c2 = rng.uniform(-1, 1);
        const IsometryPair iso =
            IsometryPair::from_logs({a1, b1, c1, -a1}, {a2, b2, c2, -a2});
        const Vec22 v = random_quadric_point(rng);
        const Vec22 img = apply_isometry(iso, v);
        CHECK(std::abs(quadratic_form(img) - quadratic_form(v)) < 1e-9);
    }
}
