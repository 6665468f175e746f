#include "btzgeo/causal.hpp"

#include <algorithm>
#include <cmath>

namespace btz {

std::pair<Mat2, Mat2> NormalCase::generators() const {
    switch (id) {
        case 1: return {gen_R0() * lambda, gen_R0() * lambda};
        case 2: return {gen_Delta() * lambda, Mat2::zero()};
        case 3: return {gen_H(), Mat2::zero()};
        case 4: return {gen_H(), -gen_H()};
        case 5: return {gen_H(), gen_H()};
        case 6: return {gen_Delta() * lambda, gen_Delta() * mu};
        case 7: return {gen_Delta() * lambda, gen_H()};
        default: throw std::invalid_argument("NormalCase: id out of range");
    }
}

bool in_D(const Mat2& x_left, const Mat2& x_right, const Mat2& g) {
    return killing_norm(x_left, x_right, g) > 0;
}

bool in_D_closed_form(const NormalCase& nc, const Mat2& g) {
    switch (nc.id) {
        case 1: {
            // Complement of the rotation axis {a = d, b = -c}.
            const double u = g.a - g.d, w = g.b + g.c;
            return u * u + w * w > 0;
        }
        case 2: return true;
        case 3: return false;
        case 4: return false;
        case 5: return g.c != 0;
        case 6: {
            const double bc = g.b * g.c;
            const double diff = nc.lambda - nc.mu;
            return bc < diff * diff / (4 * nc.lambda * nc.mu);
        }
        case 7: return -2 * g.a * g.c < nc.lambda;
        default: throw std::invalid_argument("NormalCase: id out of range");
    }
}

namespace {

struct ThetaTracker {
    double theta;  // lifted time along the path
    double raw;    // last principal value

    explicit ThetaTracker(const Vec22& v) {
        raw = std::atan2(v.y2, v.y1);
        theta = raw;
    }

    // Accumulate the principal-branch increment; returns the step magnitude.
    double advance(const Vec22& v) {
        const double r = std::atan2(v.y2, v.y1);
        double inc = r - raw;
        if (inc > kPi) inc -= 2 * kPi;
        if (inc < -kPi) inc += 2 * kPi;
        raw = r;
        theta += inc;
        return std::abs(inc);
    }
};

Vec22 flow_point(const Mat2& xl, const Mat2& xr, const Mat2& g, double t) {
    return mat_to_vec(sl2_exp(xl * t) * g * sl2_exp(xr * (-t)));
}

}  // namespace

bool in_C_range(const IsometryPair& iso, const Vec22& x, int n_max, const CRangeOptions& opt) {
    const IsoClass cls = classify_pair(iso);
    if (cls.tag == IsoTag::Trivial || cls.tag == IsoTag::NonSynchronized)
        throw std::invalid_argument("in_C_range: isometry must be synchronized and non-trivial");
    Mat2 xl = iso.logL ? *iso.logL : sl2_log(iso.gL);
    Mat2 xr = iso.logR ? *iso.logR : sl2_log(iso.gR);
    const Mat2 g = ads_matrix(x);
    const std::array<double, 3> x_sphere = to_ein3(conformal_coords(x)).p;
    const double theta0 = std::atan2(x.y2, x.y1);

    ThetaTracker tracker(x);
    double t = 0;
    double dt = 1.0;
    long substeps = 0;
    int next_check = 1;
    while (next_check <= n_max) {
        const double target = static_cast<double>(next_check);
        dt = std::min(dt, target - t);
        // Halve until the time increment is resolvable on the principal branch.
        Vec22 candidate;
        double inc = 0;
        int halvings = 0;
        for (;;) {
            candidate = flow_point(xl, xr, g, t + dt);
            ThetaTracker probe = tracker;
            inc = probe.advance(candidate);
            if (inc <= opt.max_step) break;
            dt /= 2;
            if (++halvings > opt.max_halvings)
                throw LiftFailure("in_C_range: theta step would not resolve");
        }
        tracker.advance(candidate);
        t += dt;
        if (++substeps > opt.max_substeps) throw LiftFailure("in_C_range: substep budget exceeded");
        if (inc < opt.max_step / 8) dt *= 2;

        if (t >= target - 1e-15) {
            const Vec22 iterate = flow_point(xl, xr, g, target);
            const double d = sphere_distance(x_sphere, to_ein3(conformal_coords(iterate)).p);
            const double dtheta = std::abs(tracker.theta - theta0);
            if (dtheta >= d - opt.lightlike_tol + opt.relation_margin) return false;
            ++next_check;
        }
    }
    return true;
}

std::vector<WordElement> enumerate_ball_words(const std::vector<IsometryPair>& generators, int L,
                                              long ball_cap) {
    const int k = static_cast<int>(generators.size());
    std::vector<WordElement> out;
    std::vector<WordElement> frontier;
    // Letters ordered g1, g1^{-1}, g2, g2^{-1}, ...
    auto letter_iso = [&](int letter) {
        const int idx = std::abs(letter) - 1;
        return letter > 0 ? generators[idx] : generators[idx].inverse();
    };
    auto normalize = [](IsometryPair iso) {
        if (iso.gL.trace() < 0 && iso.gR.trace() < 0) {
            iso.gL = -iso.gL;
            iso.gR = -iso.gR;
        }
        return iso;
    };
    for (int g = 1; g <= k; ++g)
        for (int s : {+1, -1}) {
            WordElement w;
            w.letters = {s * g};
            w.iso = normalize(letter_iso(s * g));
            frontier.push_back(w);
        }
    for (int len = 1; len <= L; ++len) {
        for (const auto& w : frontier) {
            out.push_back(w);
            if (static_cast<long>(out.size()) > ball_cap)
                throw BallTooLarge("enumerate_ball: cap exceeded");
        }
        if (len == L) break;
        std::vector<WordElement> next;
        for (const auto& w : frontier) {
            const int last = w.letters.back();
            for (int g = 1; g <= k; ++g)
                for (int s : {+1, -1}) {
                    const int letter = s * g;
                    if (letter == -last) continue;  // free reduction
                    WordElement nw;
                    nw.letters = w.letters;
                    nw.letters.push_back(letter);
                    nw.iso = normalize(w.iso.compose(letter_iso(letter)));
                    next.push_back(nw);
                }
        }
        frontier = std::move(next);
    }
    return out;
}

namespace {

// Logs of a word's components scaled to unit size (the spacelike condition is
// scale-invariant; normalization keeps margins meaningful across word sizes).
bool word_logs_normalized(const IsometryPair& iso, Mat2& xl, Mat2& xr) {
    try {
        xl = sl2_log(iso.gL);
        xr = sl2_log(iso.gR);
    } catch (const std::domain_error&) {
        return false;
    }
    const double s = std::max(xl.frobenius(), xr.frobenius());
    if (s > 1e-12) {
        xl = xl * (1.0 / s);
        xr = xr * (1.0 / s);
    }
    return true;
}

}  // namespace

namespace {

std::vector<int> inverse_letters(const std::vector<int>& letters) {
    std::vector<int> inv(letters.rbegin(), letters.rend());
    for (int& l : inv) l = -l;
    return inv;
}

// Canonical representative of the pair {w, w^{-1}}.
bool is_inverse_pair_representative(const std::vector<int>& letters) {
    return letters <= inverse_letters(letters);
}

}  // namespace

bool group_domain_membership(const std::vector<IsometryPair>& generators, const Vec22& x, int L,
                             DomainMode mode, const GroupDomainOptions& opt) {
    const auto words = enumerate_ball_words(generators, L, opt.ball_cap);
    const Mat2 g = ads_matrix(x);
    for (const auto& w : words) {
        if (mode == DomainMode::D) {
            Mat2 xl, xr;
            if (!word_logs_normalized(w.iso, xl, xr)) continue;  // no principal flow; skipped
            if (killing_norm(xl, xr, g) <= opt.margin) return false;
        } else {
            // C(gamma) = C(gamma^{-1}): test each inverse pair once.
            if (!is_inverse_pair_representative(w.letters)) continue;
            IsometryPair iso = w.iso;
            const IsoClass cls = classify_pair(iso);
            if (cls.tag == IsoTag::Trivial || cls.tag == IsoTag::NonSynchronized) continue;
            try {
                iso.logL = sl2_log(iso.gL);
                iso.logR = sl2_log(iso.gR);
            } catch (const std::domain_error&) {
                continue;
            }
            CRangeOptions copt = opt.c_range;
            copt.relation_margin = opt.margin;
            if (!in_C_range(iso, x, opt.n_max, copt)) return false;
        }
    }
    return true;
}

Mat2 xn_matrix(const Mat2& a_left, const Mat2& a_right, const Mat2& g, double lambda, double mu,
               int n) {
    const Mat2 cl = sl2_exp(gen_Delta() * (n * lambda));
    const Mat2 cr = sl2_exp(gen_Delta() * (n * mu));
    return cl * a_left * cl.inverse_unit() * g - g * (cr * a_right * cr.inverse_unit());
}

Mat2 xn_matrix_closed_form(const Mat2& a_left, const Mat2& a_right, const Mat2& g, double lambda,
                           double mu, int n) {
    const double al = a_left.a, bl = a_left.b;
    const double ar = a_right.a, br = a_right.b;
    const double a = g.a, b = g.b, d = g.d;
    const double e2l = std::exp(2 * n * lambda), e2m = std::exp(2 * n * mu);
    return {a * (al - ar) - b * br / e2m, b * (al + ar) + d * bl * e2l - a * br * e2m,
            a * bl / e2l - d * br / e2m, b * bl / e2l - d * (al - ar)};
}

}  // namespace btz
