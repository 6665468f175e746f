#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "btzgeo/group.hpp"
#include "btzgeo/rng.hpp"

using namespace btz;

namespace {

GroupPresentation diagonal_schottky() {
    GroupPresentation gp;
    gp.generators.push_back(IsometryPair(Mat2{5, 2, 2, 1}, Mat2{5, 2, 2, 1}));
    gp.generators.push_back(IsometryPair(Mat2{1, 2, 2, 5}, Mat2{1, 2, 2, 5}));
    gp.labels = {"a", "b"};
    return gp;
}

// The same group moved by (I, R0): the right representation becomes the
// inverse-transpose one, which preserves the spacelike symmetric-matrix slice.
GroupPresentation slice_schottky() {
    GroupPresentation gp = diagonal_schottky();
    const Mat2 r0{0, 1, -1, 0};
    for (auto& g : gp.generators) g.gR = r0 * g.gR * r0.inverse_unit();
    return gp;
}

double hausdorff(const std::vector<EinPoint>& a, const std::vector<EinPoint>& b) {
    auto dist = [](const EinPoint& p, const EinPoint& q) {
        return std::hypot(circle_distance(p.phi, q.phi), p.theta - q.theta);
    };
    double h = 0;
    for (const auto& p : a) {
        double best = 1e300;
        for (const auto& q : b) best = std::min(best, dist(p, q));
        h = std::max(h, best);
    }
    for (const auto& q : b) {
        double best = 1e300;
        for (const auto& p : a) best = std::min(best, dist(p, q));
        h = std::max(h, best);
    }
    return h;
}

}  // namespace

TEST_CASE("ball enumeration is ordered and reduced") {
    GroupPresentation gp = diagonal_schottky();
    const auto ball = enumerate_ball_words(gp.generators, 3);
    CHECK(ball.size() == 4 + 12 + 36);
    for (const auto& w : ball)
        for (std::size_t i = 1; i < w.letters.size(); ++i)
            CHECK(w.letters[i] != -w.letters[i - 1]);
}

TEST_CASE("cyclic limit set") {
    GroupPresentation gp;
    gp.generators.push_back(IsometryPair::from_logs(gen_Delta(), gen_Delta() * 2.0));
    const LimitSetApprox ls = limit_set(gp, 5);
    REQUIRE(ls.points.size() == 2);
    // (phi, theta) = (pi/2, pi/2) and (-pi/2, pi/2) from the null directions
    // (0,1,0,1) and (0,-1,0,1).
    std::vector<EinPoint> pts = ls.points;
    std::sort(pts.begin(), pts.end(),
              [](const EinPoint& a, const EinPoint& b) { return a.phi < b.phi; });
    CHECK(pts[0].phi == doctest::Approx(-kPi / 2).epsilon(1e-12));
    CHECK(pts[0].theta == doctest::Approx(kPi / 2).epsilon(1e-12));
    CHECK(pts[1].phi == doctest::Approx(kPi / 2).epsilon(1e-12));
    CHECK(pts[1].theta == doctest::Approx(kPi / 2).epsilon(1e-12));
}

TEST_CASE("diagonal groups have light-cone limit sets") {
    // Equal left/right representations stabilize the identity point; their
    // fixed directions lie on its light cone, the theta = pi/2 section.
    const LimitSetApprox ls = limit_set(diagonal_schottky(), 6);
    CHECK(ls.points.size() > 30);
    for (const auto& p : ls.points) CHECK(std::abs(p.theta - kPi / 2) < 1e-6);
    CHECK(achronality_check(ls.points).achronal);
}

TEST_CASE("slice groups have equatorial limit sets") {
    // After the (I, R0) move the group preserves the spacelike slice and the
    // limit set sits on the theta = 0 circle.
    const LimitSetApprox ls = limit_set(slice_schottky(), 6);
    CHECK(ls.points.size() > 30);
    for (const auto& p : ls.points) CHECK(std::abs(p.theta) < 1e-6);
    CHECK(achronality_check(ls.points).achronal);
}

TEST_CASE("limit set approximations converge") {
    const GroupPresentation gp = diagonal_schottky();
    const LimitSetApprox l4 = limit_set(gp, 4);
    const LimitSetApprox l6 = limit_set(gp, 6);
    const LimitSetApprox l8 = limit_set(gp, 8);
    const double d46 = hausdorff(l4.points, l6.points);
    const double d68 = hausdorff(l6.points, l8.points);
    CHECK(d68 <= d46);
}

TEST_CASE("limit set is conjugation equivariant") {
    const GroupPresentation gp = diagonal_schottky();
    const Mat2 h = sl2_exp(Mat2{0.23, 0.4, -0.1, -0.23});
    const Mat2 k = sl2_exp(Mat2{-0.15, 0.2, 0.33, 0.15});
    GroupPresentation conj = gp;
    for (auto& g : conj.generators) {
        g.gL = h * g.gL * h.inverse_unit();
        g.gR = k * g.gR * k.inverse_unit();
    }
    const IsometryPair mover(h, k);
    const LimitSetApprox base = limit_set(gp, 6);
    const LimitSetApprox moved = limit_set(conj, 6);
    std::vector<EinPoint> mapped;
    for (const auto& p : base.points)
        mapped.push_back(null_direction_to_ein(apply_isometry(mover, ein_to_null_vector(p))));
    CHECK(hausdorff(mapped, moved.points) < 1e-6);
}

TEST_CASE("minimality probe: seed orbits recover the limit set") {
    const GroupPresentation gp = diagonal_schottky();
    const LimitSetApprox ls = limit_set(gp, 4);
    REQUIRE(!ls.points.empty());
    const Vec22 seed = ein_to_null_vector(ls.points.front());
    const auto ball = enumerate_ball_words(gp.generators, 8);
    std::vector<EinPoint> orbit;
    orbit.push_back(ls.points.front());
    for (const auto& w : ball)
        orbit.push_back(null_direction_to_ein(apply_isometry(w.iso, seed)));
    for (const auto& p : ls.points) {
        double best = 1e300;
        for (const auto& q : orbit)
            best = std::min(best,
                            std::hypot(circle_distance(p.phi, q.phi), p.theta - q.theta));
        CHECK(best < 5e-3);
    }
}

TEST_CASE("admissibility probe") {
    GroupPresentation hyp;
    hyp.generators.push_back(IsometryPair::from_logs(gen_Delta(), gen_Delta() * 2.0));
    const AdmissibilityReport r1 = admissibility_probe(hyp);
    CHECK(r1.cyclic);
    CHECK(r1.admissible());

    GroupPresentation parhyp;
    parhyp.generators.push_back(IsometryPair::from_logs(gen_H(), gen_Delta()));
    CHECK(admissibility_probe(parhyp).admissible());

    GroupPresentation parpar_same;
    parpar_same.generators.push_back(IsometryPair::from_logs(gen_H(), gen_H() * 2.5));
    CHECK(admissibility_probe(parpar_same).admissible());
    GroupPresentation parpar_opp;
    parpar_opp.generators.push_back(IsometryPair::from_logs(gen_H(), -gen_H()));
    CHECK_FALSE(admissibility_probe(parpar_opp).admissible());

    GroupPresentation elliptic;
    const Mat2 h = sl2_exp(Mat2{0.2, 0.3, 0.1, -0.2});
    elliptic.generators.push_back(
        IsometryPair(sl2_exp(gen_R0()), h * sl2_exp(gen_R0()) * h.inverse_unit()));
    CHECK_FALSE(admissibility_probe(elliptic).admissible());

    // Abelian families.
    GroupPresentation ahyp;
    ahyp.generators.push_back(IsometryPair::from_logs(gen_Delta(), gen_Delta() * std::sqrt(2.0)));
    ahyp.generators.push_back(IsometryPair::from_logs(gen_Delta() * std::sqrt(3.0), gen_Delta()));
    const AdmissibilityReport ra = admissibility_probe(ahyp);
    CHECK(ra.abelian);
    CHECK(ra.family == AbelianFamily::A_hyp);

    GroupPresentation aext;
    aext.generators.push_back(IsometryPair::from_logs(-gen_H(), gen_Delta() * 2.0));
    aext.generators.push_back(IsometryPair::from_logs(-gen_H() * 0.5, gen_Delta() * 0.7));
    CHECK(admissibility_probe(aext).family == AbelianFamily::A_ext);

    GroupPresentation apar;
    apar.generators.push_back(IsometryPair::from_logs(gen_H(), gen_H()));
    apar.generators.push_back(IsometryPair::from_logs(gen_H() * 0.3, gen_H() * 0.3));
    CHECK(admissibility_probe(apar).family == AbelianFamily::A_par);

    // Non-abelian necessary conditions.
    CHECK(admissibility_probe(diagonal_schottky()).necessary_conditions_pass);
}

TEST_CASE("action validation on a splitting spec") {
    const AchronalSpec spec = AchronalSpec::splitting({0, 0}, {kPi, 0});

    GroupPresentation good;
    good.generators.push_back(
        IsometryPair::from_logs(gen_Delta() * kPi, gen_Delta() * (-3 * kPi)));
    CHECK(action_validation(spec, good).pass);

    // Unrelated hyperbolic-hyperbolic generator: fixed points elsewhere.
    GroupPresentation bad;
    bad.generators.push_back(IsometryPair::from_logs(gen_Delta(), gen_Delta() * 2.0));
    const ActionValidationReport rb = action_validation(spec, bad);
    CHECK_FALSE(rb.pass);

    // Two independent commuting generators: non-cyclic, never proper.
    GroupPresentation pair;
    pair.generators.push_back(
        IsometryPair::from_logs(gen_Delta() * kPi, gen_Delta() * (-3 * kPi)));
    pair.generators.push_back(
        IsometryPair::from_logs(gen_Delta() * 2.0, gen_Delta() * (-1.0)));
    CHECK_FALSE(action_validation(spec, pair).pass);
}

TEST_CASE("action validation on the extreme spec") {
    const AchronalSpec spec = AchronalSpec::extreme({0, 0}, {kPi / 2, kPi / 2});
    GroupPresentation good;
    good.generators.push_back(
        IsometryPair::from_logs(-gen_H(), gen_Delta() * (2 * kPi)));
    const ActionValidationReport r = action_validation(spec, good);
    CHECK(r.pass);

    GroupPresentation wrong;
    wrong.generators.push_back(
        IsometryPair::from_logs(gen_Delta() * kPi, gen_Delta() * (-3 * kPi)));
    CHECK_FALSE(action_validation(spec, wrong).pass);
}
