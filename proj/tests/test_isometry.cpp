#include <doctest.h>

#include <cmath>

#include "btzgeo/isometry.hpp"
#include "btzgeo/rng.hpp"

using namespace btz;

namespace {

Mat2 random_traceless(SplitMix64& rng, double scale = 1.0) {
    const double a = rng.uniform(-scale, scale);
    const double b = rng.uniform(-scale, scale);
    const double c = rng.uniform(-scale, scale);
    return {a, b, c, -a};
}

Mat2 random_sl2(SplitMix64& rng, double scale = 1.0) { return sl2_exp(random_traceless(rng, scale)); }

double edot(const Vec22& a, const Vec22& b) {
    return a.x1 * b.x1 + a.x2 * b.x2 + a.y1 * b.y1 + a.y2 * b.y2;
}

}  // namespace

TEST_CASE("sl2 exp/log round trip") {
    SplitMix64 rng(31);
    for (int i = 0; i < 300; ++i) {
        const Mat2 x = random_traceless(rng, 1.5);
        const Mat2 m = sl2_exp(x);
        CHECK(m.det() == doctest::Approx(1.0).epsilon(1e-10));
        const Mat2 back = sl2_log(m);
        CHECK((back - x).frobenius() < 1e-8);
    }
    CHECK_THROWS_AS(sl2_log(Mat2{-3, 0, 0, -1.0 / 3}), std::domain_error);
}

TEST_CASE("component classification") {
    const ComponentClass hyp = classify_component({std::exp(1.0), 0, 0, std::exp(-1.0)});
    CHECK(hyp.kind == ComponentKind::hyperbolic);
    CHECK(hyp.strength == doctest::Approx(1.0));
    CHECK(std::abs(hyp.dir_attract[1]) < 1e-12);  // [1:0]
    CHECK(std::abs(hyp.dir_repel[0]) < 1e-12);    // [0:1]

    const ComponentClass par = classify_component({1, 1, 0, 1});
    CHECK(par.kind == ComponentKind::parabolic);
    CHECK(std::abs(par.dir_attract[1]) < 1e-12);  // fixed direction [1:0]
    CHECK(par.parabolic_sign == 1);

    const ComponentClass ell = classify_component(sl2_exp(gen_R0() * 0.3));  // rotation by 0.3
    CHECK(ell.kind == ComponentKind::elliptic);
    CHECK(ell.strength == doctest::Approx(0.3).epsilon(1e-9));

    CHECK(classify_component(Mat2::identity()).kind == ComponentKind::trivial);
    CHECK(classify_component(-Mat2::identity()).kind == ComponentKind::trivial);
}

TEST_CASE("pair classification") {
    const IsoClass hh = classify_pair(
        IsometryPair::from_logs(gen_Delta(), gen_Delta() * 2.0));
    CHECK(hh.tag == IsoTag::HypHyp);
    CHECK(hh.lambda == doctest::Approx(1.0));
    CHECK(hh.mu == doctest::Approx(2.0));

    CHECK(classify_pair(IsometryPair::from_logs(gen_H(), gen_Delta())).tag == IsoTag::ParHyp);

    const IsoClass opp = classify_pair(IsometryPair::from_logs(gen_H(), -gen_H()));
    CHECK(opp.tag == IsoTag::ParPar);
    CHECK_FALSE(opp.parpar_same_orbit);
    const IsoClass same = classify_pair(IsometryPair::from_logs(gen_H(), gen_H()));
    CHECK(same.tag == IsoTag::ParPar);
    CHECK(same.parpar_same_orbit);

    CHECK(classify_pair(IsometryPair::from_logs(gen_R0(), gen_R0())).tag == IsoTag::Elliptic);
    CHECK(classify_pair(IsometryPair::from_logs(gen_R0(), -gen_R0())).tag ==
          IsoTag::NonSynchronized);
    CHECK(classify_pair(IsometryPair::from_logs(gen_Delta(), Mat2::zero())).tag ==
          IsoTag::HyperbolicTranslationL);
    CHECK(classify_pair(IsometryPair()).tag == IsoTag::Trivial);
}

TEST_CASE("pair classification is conjugation invariant") {
    SplitMix64 rng(32);
    for (int i = 0; i < 50; ++i) {
        const IsometryPair iso = IsometryPair::from_logs(random_traceless(rng),
                                                         random_traceless(rng));
        const IsoClass base = classify_pair(iso);
        const Mat2 h = random_sl2(rng), k = random_sl2(rng);
        const IsometryPair conj(h * iso.gL * h.inverse_unit(), k * iso.gR * k.inverse_unit());
        CHECK(classify_pair(conj).tag == base.tag);
    }
}

TEST_CASE("killing norm values") {
    CHECK(killing_norm(gen_Delta(), gen_Delta() * 2.0, Mat2::identity()) == doctest::Approx(1.0));
    CHECK(killing_norm(gen_Delta(), gen_Delta() * 2.0, {2, 1, 1, 1}) == doctest::Approx(-7.0));
    // Fixed-point axis of the elliptic conjugation.
    for (double t : {0.0, 0.4, 1.3}) {
        const Mat2 g = sl2_exp(gen_R0() * t);
        CHECK(std::abs(killing_norm(gen_R0(), gen_R0(), g)) < 1e-12);
    }
}

TEST_CASE("killing norm is conjugation equivariant") {
    SplitMix64 rng(33);
    for (int i = 0; i < 100; ++i) {
        const Mat2 xl = random_traceless(rng), xr = random_traceless(rng);
        const Mat2 g = random_sl2(rng);
        const Mat2 h = random_sl2(rng), k = random_sl2(rng);
        const double lhs = killing_norm(xl, xr, g);
        const double rhs = killing_norm(h * xl * h.inverse_unit(), k * xr * k.inverse_unit(),
                                        h * g * k.inverse_unit());
        CHECK(std::abs(lhs - rhs) < 1e-9 * std::max(1.0, std::abs(lhs)));
    }
}

TEST_CASE("attractive fixed point of the diagonal pair") {
    const IsometryPair iso = IsometryPair::from_logs(gen_Delta(), gen_Delta() * 2.0);
    const Vec22 fp = attractive_fixed_point(iso);
    // Direction (0,1,0,1) up to normalization.
    CHECK(std::abs(fp.x1) < 1e-12);
    CHECK(std::abs(fp.y1) < 1e-12);
    CHECK(fp.x2 == doctest::Approx(fp.y2).epsilon(1e-12));
    const Vec22 fp_inv = attractive_fixed_point(iso.inverse());
    CHECK(std::abs(fp_inv.x1) < 1e-12);
    CHECK(fp_inv.x2 == doctest::Approx(-fp_inv.y2).epsilon(1e-12));

    CHECK_THROWS_AS(attractive_fixed_point(IsometryPair::from_logs(gen_R0(), gen_R0())),
                    NoDominantDirection);
}

TEST_CASE("attractive fixed point is null and invariant") {
    SplitMix64 rng(34);
    int done = 0;
    while (done < 60) {
        const Mat2 xl = random_traceless(rng, 1.2), xr = random_traceless(rng, 1.2);
        if (xl.det() >= -1e-3 || xr.det() >= -1e-3) continue;  // hyperbolic components only
        ++done;
        const IsometryPair iso = IsometryPair::from_logs(xl, xr);
        const Vec22 fp = attractive_fixed_point(iso);
        CHECK(std::abs(quadratic_form(fp)) < 1e-10);
        Vec22 u = apply_isometry(iso, fp);
        u = u * (1 / u.euclid_norm());
        const double s = edot(u, fp);  // fp is unit
        const Vec22 perp = u - fp * s;
        CHECK(perp.euclid_norm() < 1e-8);  // sin of the angle between the rays
    }
}

TEST_CASE("so22 matrix") {
    // Identity pair.
    const Mat4 id = so22_matrix(IsometryPair());
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(id(i, j) == doctest::Approx(i == j ? 1.0 : 0.0));

    // Holonomy blocks for r+ = 2, r- = 1 (u = pi, v = 3 pi).
    const IsometryPair gamma =
        IsometryPair::from_logs(gen_Delta() * kPi, gen_Delta() * (3 * kPi));
    const Mat4 m = so22_matrix(gamma);
    const double c2 = std::cosh(2 * kPi), s2 = std::sinh(2 * kPi);
    const double c4 = std::cosh(4 * kPi), s4 = std::sinh(4 * kPi);
    CHECK(m(0, 0) == doctest::Approx(c2).epsilon(1e-12));
    CHECK(m(0, 1) == doctest::Approx(-s2).epsilon(1e-12));
    CHECK(m(1, 0) == doctest::Approx(-s2).epsilon(1e-12));
    CHECK(m(1, 1) == doctest::Approx(c2).epsilon(1e-12));
    CHECK(m(2, 2) == doctest::Approx(c4).epsilon(1e-12));
    CHECK(m(2, 3) == doctest::Approx(s4).epsilon(1e-12));
    CHECK(m(3, 2) == doctest::Approx(s4).epsilon(1e-12));
    CHECK(m(3, 3) == doctest::Approx(c4).epsilon(1e-12));
    CHECK(std::abs(m(0, 2)) + std::abs(m(0, 3)) + std::abs(m(2, 0)) + std::abs(m(2, 1)) < 1e-12);
}

TEST_CASE("so22 matrices preserve the form") {
    SplitMix64 rng(35);
    const double eta[4] = {1, -1, 1, -1};  // (x1, y1, x2, y2)
    for (int i = 0; i < 100; ++i) {
        const IsometryPair iso =
            IsometryPair::from_logs(random_traceless(rng), random_traceless(rng));
        const Mat4 m = so22_matrix(iso);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                double s = 0;
                for (int k = 0; k < 4; ++k) s += m(k, a) * eta[k] * m(k, b);
                CHECK(std::abs(s - (a == b ? eta[a] : 0.0)) < 1e-12);
            }
    }
}

TEST_CASE("conjugate action") {
    SplitMix64 rng(36);
    const Mat2 gl = sl2_exp(gen_Delta() * kPi);
    const Mat2 gr = sl2_exp(gen_Delta() * (3 * kPi));
    const Mat2 h = random_sl2(rng);
    const Mat2 img = conjugate_action(gl, h, gr);
    // Entrywise exponential scalings: u - v = -2 pi r-, u + v = 2 pi r+.
    CHECK(img.a == doctest::Approx(h.a * std::exp(-2 * kPi)).epsilon(1e-12));
    CHECK(img.b == doctest::Approx(h.b * std::exp(4 * kPi)).epsilon(1e-12));
    CHECK(img.c == doctest::Approx(h.c * std::exp(-4 * kPi)).epsilon(1e-12));
    CHECK(img.d == doctest::Approx(h.d * std::exp(2 * kPi)).epsilon(1e-12));

    CHECK((conjugate_action(Mat2::identity(), h, Mat2::identity()) - h).frobenius() < 1e-15);

    // Agreement with the linear 4x4 action.
    for (int i = 0; i < 50; ++i) {
        const IsometryPair iso =
            IsometryPair::from_logs(random_traceless(rng), random_traceless(rng));
        const Mat2 p = random_sl2(rng);
        const Vec22 via_matrix = matrix_ads(conjugate_action(iso.gL, p, iso.gR));
        const Mat4 m = so22_matrix(iso);
        const Vec22 v = matrix_ads(p);
        const auto w = m.apply({v.x1, v.y1, v.x2, v.y2});
        CHECK(std::abs(via_matrix.x1 - w[0]) < 1e-10);
        CHECK(std::abs(via_matrix.y1 - w[1]) < 1e-10);
        CHECK(std::abs(via_matrix.x2 - w[2]) < 1e-10);
        CHECK(std::abs(via_matrix.y2 - w[3]) < 1e-10);
    }
}
