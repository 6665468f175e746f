#include "btzgeo/kerr.hpp"

#include <cmath>
#include <stdexcept>

namespace btz {

BTZParams BTZParams::from_radii(double r_plus, double r_minus) {
    if (!(r_plus > 0) || r_minus < 0 || r_minus > r_plus)
        throw std::invalid_argument("BTZParams: need r_plus >= r_minus >= 0, r_plus > 0");
    BTZParams p;
    p.r_plus = r_plus;
    p.r_minus = r_minus;
    p.u = kPi * (r_plus - r_minus);
    p.v = kPi * (r_plus + r_minus);
    p.J = -2 * r_minus * r_plus;
    p.M = r_plus * r_plus + r_minus * r_minus;
    p.extreme = (r_plus == r_minus);
    return p;
}

double BTZParams::lapse(double r) const {
    const double r2 = r * r;
    return (r2 - r_plus * r_plus) * (r2 - r_minus * r_minus) / r2;
}

IsometryPair BTZParams::holonomy() const {
    if (!extreme)
        return IsometryPair::from_logs(gen_Delta() * u, gen_Delta() * v);
    return IsometryPair::from_logs(-gen_H(), gen_Delta() * (2 * kPi * r_plus));
}

BTZParams params_from_holonomy(double u, double v) {
    if (!(v > 0) || u < 0 || v < u) throw std::invalid_argument("need v >= u >= 0, v > 0");
    return BTZParams::from_radii((v + u) / (2 * kPi), (v - u) / (2 * kPi));
}

Metric3 kerr_metric(const BTZParams& params, double r) {
    if (r <= params.r_plus) throw ChartDomain("kerr_metric: r must exceed r_plus");
    const double n = params.lapse(r);
    Metric3 g{};
    g[0][0] = -n + params.J * params.J / (4 * r * r);
    g[0][1] = g[1][0] = params.J / 2;
    g[1][1] = r * r;
    g[2][2] = 1 / n;
    return g;
}

namespace {

// Non-extreme chart: T = r+ t - r- varphi, phi = r+ varphi - r- t,
// rho2^2 = (r^2 - r-^2)/(r+^2 - r-^2), rho1^2 = rho2^2 - 1.
Vec22 embed_generic(const BTZParams& p, const KerrPoint& k) {
    const double d2 = p.r_plus * p.r_plus - p.r_minus * p.r_minus;
    const double big_t = p.r_plus * k.t - p.r_minus * k.varphi;
    const double phi = p.r_plus * k.varphi - p.r_minus * k.t;
    const double rho2 = std::sqrt((k.r * k.r - p.r_minus * p.r_minus) / d2);
    const double rho1 = std::sqrt((k.r * k.r - p.r_plus * p.r_plus) / d2);
    return {rho1 * std::cosh(big_t), rho2 * std::sinh(phi), rho1 * std::sinh(big_t),
            rho2 * std::cosh(phi)};
}

// Extreme chart, the conjugated limit of the generic one:
//   G = [[A e^{-r+ w}(S - b), A e^{r+ w}(S + b)], [-B e^{-r+ w}, -B e^{r+ w}]]
// with w = varphi - t, S = varphi + t, b = r+/(r^2 - r+^2),
// A = sqrt(r^2 - r+^2)/(2 sqrt(pi r+)), B = 2 pi A.
Mat2 extreme_chart(const BTZParams& p, const KerrPoint& k) {
    const double rp = p.r_plus;
    const double w = k.varphi - k.t;
    const double s = k.varphi + k.t;
    const double q = k.r * k.r - rp * rp;
    const double beta = rp / q;
    const double a = std::sqrt(q) / (2 * std::sqrt(kPi * rp));
    const double b = 2 * kPi * a;
    const double ep = std::exp(rp * w), em = std::exp(-rp * w);
    return {a * em * (s - beta), a * ep * (s + beta), -b * em, -b * ep};
}

}  // namespace

Vec22 embed_outer(const BTZParams& params, const KerrPoint& p) {
    if (p.r <= params.r_plus) throw ChartDomain("embed_outer: r must exceed r_plus");
    if (params.extreme) return mat_to_vec(extreme_chart(params, p));
    return embed_generic(params, p);
}

KerrPoint kerr_coords(const BTZParams& params, const Vec22& v) {
    if (params.extreme) {
        const Mat2 g = vec_to_mat(v);
        if (!(g.c < 0) || !(g.d < 0))
            throw ChartDomain("kerr_coords: point outside the extreme outer chart");
        const double rp = params.r_plus;
        const double b = std::sqrt(g.c * g.d);
        const double w = std::log(g.d / g.c) / (2 * rp);
        const double a = b / (2 * kPi);
        const double q = b * b * rp / kPi;  // r^2 - rp^2
        const double r = std::sqrt(rp * rp + q);
        const double beta = rp / q;
        const double s_minus = g.a * std::exp(rp * w) / a;  // S - beta
        const double s_plus = g.b * std::exp(-rp * w) / a;  // S + beta
        const double s = (s_minus + s_plus) / 2;
        if (std::abs((s_plus - s_minus) / 2 - beta) > 1e-6 * std::max(1.0, beta))
            throw ChartDomain("kerr_coords: point not on the extreme chart");
        return {(s - w) / 2, (s + w) / 2, r};
    }
    if (!(v.x1 > std::abs(v.y1)) || !(v.y2 > std::abs(v.x2)))
        throw ChartDomain("kerr_coords: point outside the outer region");
    const double d2 = params.r_plus * params.r_plus - params.r_minus * params.r_minus;
    const double rho1 = std::sqrt(v.x1 * v.x1 - v.y1 * v.y1);
    const double rho2 = std::sqrt(v.y2 * v.y2 - v.x2 * v.x2);
    const double big_t = std::asinh(v.y1 / rho1);
    const double phi = std::asinh(v.x2 / rho2);
    const double r = std::sqrt(params.r_minus * params.r_minus + rho2 * rho2 * d2);
    return {(params.r_minus * phi + params.r_plus * big_t) / d2,
            (params.r_plus * phi + params.r_minus * big_t) / d2, r};
}

namespace {

std::array<Vec22, 3> embedding_jacobian(const BTZParams& params, const KerrPoint& p, double h) {
    auto at = [&](double dt, double dphi, double dr) {
        return embed_outer(params, {p.t + dt, p.varphi + dphi, p.r + dr});
    };
    const double inv = 1 / (2 * h);
    std::array<Vec22, 3> cols;
    cols[0] = (at(h, 0, 0) - at(-h, 0, 0)) * inv;
    cols[1] = (at(0, h, 0) - at(0, -h, 0)) * inv;
    cols[2] = (at(0, 0, h) - at(0, 0, -h)) * inv;
    return cols;
}

}  // namespace

Metric3 pullback_check(const BTZParams& params, const KerrPoint& p, double h) {
    if (p.r - params.r_plus <= 10 * h)
        throw StepTooLarge("pullback_check: point too close to the chart boundary");
    const auto j = embedding_jacobian(params, p, h);
    Metric3 g{};
    for (int a = 0; a < 3; ++a)
        for (int b = a; b < 3; ++b) g[a][b] = g[b][a] = pairing(j[a], j[b]);
    return g;
}

namespace {

// Q-orthogonal complement of three independent vectors (Lorentzian cross
// product): n is Q-orthogonal to each of a, b, c.
Vec22 ortho_complement(const Vec22& a, const Vec22& b, const Vec22& c) {
    // Compute the Euclidean generalized cross product, then flip the y-part
    // (raising the index with eta = diag(1,1,-1,-1)).
    const double m[3][4] = {{a.x1, a.x2, a.y1, a.y2},
                            {b.x1, b.x2, b.y1, b.y2},
                            {c.x1, c.x2, c.y1, c.y2}};
    auto det3 = [&](int c0, int c1, int c2) {
        return m[0][c0] * (m[1][c1] * m[2][c2] - m[1][c2] * m[2][c1]) -
               m[0][c1] * (m[1][c0] * m[2][c2] - m[1][c2] * m[2][c0]) +
               m[0][c2] * (m[1][c0] * m[2][c1] - m[1][c1] * m[2][c0]);
    };
    const Vec22 cov{det3(1, 2, 3), -det3(0, 2, 3), det3(0, 1, 3), -det3(0, 1, 2)};
    return {cov.x1, cov.x2, -cov.y1, -cov.y2};
}

struct SurfaceChart {
    const BTZParams* p;
    double t0;

    // Level-set embedding: eta parametrizes the radius, phi the angle.
    // Angle translations are isometries of the level set, so every stencil is
    // evaluated in the gauge with its centre moved to phi = 0; this keeps the
    // coordinates small and the finite differences well conditioned.
    Vec22 operator()(double eta, double phi_k) const {
        if (!p->extreme) {
            const double rho2 = std::cosh(eta);
            const double big_t = p->r_plus * t0 - p->r_minus * phi_k;
            const double phi = p->r_plus * phi_k - p->r_minus * t0;
            const double rho1 = std::sinh(eta);
            return {rho1 * std::cosh(big_t), rho2 * std::sinh(phi), rho1 * std::sinh(big_t),
                    rho2 * std::cosh(phi)};
        }
        return embed_outer(*p, {t0, phi_k, p->r_plus * std::cosh(eta)});
    }

    double radius(double eta) const {
        if (!p->extreme) {
            const double ch = std::cosh(eta), sh = std::sinh(eta);
            return std::sqrt(p->r_plus * p->r_plus * ch * ch -
                             p->r_minus * p->r_minus * sh * sh);
        }
        return p->r_plus * std::cosh(eta);
    }
};

}  // namespace

SurfaceGeometry surface_geometry(const BTZParams& params, double t0, const SurfaceGrid& grid,
                                 double h) {
    if (h <= 0 || h > 1e-2) throw StepTooLarge("surface_geometry: bad finite-difference step");
    SurfaceChart f{&params, t0};
    SurfaceGeometry out;
    out.n_eta = grid.n_eta;
    out.n_phi = grid.n_phi;
    const int n = grid.n_eta * grid.n_phi;
    out.r.reserve(n);
    for (int ie = 0; ie < grid.n_eta; ++ie) {
        const double eta =
            grid.eta_min + (grid.eta_max - grid.eta_min) * ie / std::max(1, grid.n_eta - 1);
        for (int ip = 0; ip < grid.n_phi; ++ip) {
            const double phi = 0;  // translated gauge: see SurfaceChart
            const Vec22 pos = f(eta, phi);
            const double inv2h = 1 / (2 * h);
            const Vec22 de = (f(eta + h, phi) - f(eta - h, phi)) * inv2h;
            const Vec22 dp = (f(eta, phi + h) - f(eta, phi - h)) * inv2h;
            const double invh2 = 1 / (h * h);
            const Vec22 dee = (f(eta + h, phi) - pos * 2 + f(eta - h, phi)) * invh2;
            const Vec22 dpp = (f(eta, phi + h) - pos * 2 + f(eta, phi - h)) * invh2;
            const Vec22 dep = (f(eta + h, phi + h) - f(eta + h, phi - h) - f(eta - h, phi + h) +
                               f(eta - h, phi - h)) *
                              (invh2 / 4);

            Vec22 nvec = ortho_complement(pos, de, dp);
            const double q_n = quadratic_form(nvec);
            if (!(q_n < 0)) throw StepTooLarge("surface_geometry: degenerate normal");
            Vec22 n0 = nvec * (1 / std::sqrt(-q_n));
            // Orientation convention of the chart normal: positive pairing
            // with the coordinate time direction (-y2, y1).
            const Vec22 future{0, 0, -pos.y2, pos.y1};
            if (pairing(n0, future) < 0) n0 = -n0;

            const double i_ee = pairing(de, de);
            const double i_ep = pairing(de, dp);
            const double i_pp = pairing(dp, dp);
            const double ii_ee = pairing(n0, dee);
            const double ii_ep = pairing(n0, dep);
            const double ii_pp = pairing(n0, dpp);
            const double det_i = i_ee * i_pp - i_ep * i_ep;
            const double det_ii = ii_ee * ii_pp - ii_ep * ii_ep;
            // tr(I^{-1} II) = (II_ee I_pp - 2 II_ep I_ep + II_pp I_ee)/det I.
            const double mean =
                0.5 * (ii_ee * i_pp - 2 * ii_ep * i_ep + ii_pp * i_ee) / det_i;
            const double r = f.radius(eta);

            out.r.push_back(r);
            out.mean_curvature.push_back(mean);
            out.gauss_curvature.push_back(-det_ii / (4 * det_i));
            const double rr = params.r_minus * params.r_plus;
            out.gauss_closed.push_back(rr * rr / (4 * r * r * r * r));
            out.II_eta_eta.push_back(ii_ee);
            out.II_eta_phi.push_back(ii_ep);
            out.II_phi_phi.push_back(ii_pp);
            out.n_pairing.push_back(pairing(n0 * r, dep));
        }
    }
    return out;
}

namespace {

template <class F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fb, double fm,
                        double eps, int depth) {
    const double m = (a + b) / 2;
    const double lm = (a + m) / 2, rm = (m + b) / 2;
    const double flm = f(lm), frm = f(rm);
    const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    const double left = (m - a) / 6 * (fa + 4 * flm + fm);
    const double right = (b - m) / 6 * (fm + 4 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15 * eps) return left + right + delta / 15;
    return adaptive_simpson(f, a, m, fa, fm, flm, eps / 2, depth - 1) +
           adaptive_simpson(f, m, b, fm, fb, frm, eps / 2, depth - 1);
}

template <class F>
double integrate(const F& f, double a, double b, double eps) {
    const double fa = f(a), fb = f(b), fm = f((a + b) / 2);
    return adaptive_simpson(f, a, b, fa, fb, fm, eps, 40);
}

}  // namespace

GeodesicLength radial_geodesic_length(const BTZParams& params, double r1, double r2) {
    if (!(params.r_plus < r1) || !(r1 <= r2))
        throw std::invalid_argument("radial_geodesic_length: need r_plus < r1 <= r2");
    GeodesicLength out;
    const double rp2 = params.r_plus * params.r_plus;
    out.closed_form = 0.5 * std::log((r2 * r2 - rp2) / (r1 * r1 - rp2));
    out.closed_form_exact = params.extreme;
    auto integrand = [&](double r) { return std::sqrt(1 / params.lapse(r)); };
    out.numeric = (r1 == r2) ? 0.0 : integrate(integrand, r1, r2, 1e-13);
    return out;
}

Mat4 holonomy_block_matrix(const BTZParams& params) {
    if (params.extreme)
        throw std::invalid_argument("holonomy_block_matrix: extreme holonomy is not block-diagonal");
    Mat4 m;
    const double cm = std::cosh(2 * kPi * params.r_minus);
    const double sm = std::sinh(2 * kPi * params.r_minus);
    const double cp = std::cosh(2 * kPi * params.r_plus);
    const double sp = std::sinh(2 * kPi * params.r_plus);
    m(0, 0) = cm;
    m(0, 1) = -sm;
    m(1, 0) = -sm;
    m(1, 1) = cm;
    m(2, 2) = cp;
    m(2, 3) = sp;
    m(3, 2) = sp;
    m(3, 3) = cp;
    return m;
}

HolonomyCheckReport holonomy_translation_check(const BTZParams& params,
                                               const std::vector<KerrPoint>& pts) {
    HolonomyCheckReport rep;
    const IsometryPair gamma = params.holonomy();
    if (!params.extreme) {
        const Mat4 action = so22_matrix(gamma);
        const Mat4 block = holonomy_block_matrix(params);
        for (int i = 0; i < 16; ++i)
            rep.block_matrix_gap = std::max(rep.block_matrix_gap,
                                            std::abs(action.m[i] - block.m[i]) /
                                                std::max(1.0, std::abs(block.m[i])));
        // The block matrix acts diagonally on the null combinations
        // y1 +- x1, x2 +- y2 (the matrix entries of the point); applying it
        // there keeps the chart inversion clear of exponential cancellation.
        const double d2 = params.r_plus * params.r_plus - params.r_minus * params.r_minus;
        const double em = std::exp(-2 * kPi * params.r_minus);
        const double ep = std::exp(2 * kPi * params.r_plus);
        for (const auto& p : pts) {
            const Vec22 x = embed_outer(params, p);
            const double a = (x.y1 + x.x1) * em;   // rho1 e^{T'}
            const double b = (x.x2 + x.y2) * ep;   // rho2 e^{phi'}
            const double c = (x.x2 - x.y2) / ep;   // -rho2 e^{-phi'}
            const double d = (x.y1 - x.x1) / em;   // -rho1 e^{-T'}
            const double big_t = 0.5 * std::log(-a / d);
            const double phi = 0.5 * std::log(-b / c);
            const double rho2 = std::sqrt(-b * c);
            const double r = std::sqrt(params.r_minus * params.r_minus + rho2 * rho2 * d2);
            const KerrPoint q{(params.r_minus * phi + params.r_plus * big_t) / d2,
                              (params.r_plus * phi + params.r_minus * big_t) / d2, r};
            const double res =
                std::max({std::abs(q.t - p.t), std::abs(q.varphi - (p.varphi + 2 * kPi)),
                          std::abs(q.r - p.r)});
            rep.max_residual = std::max(rep.max_residual, res);
            rep.max_t_drift = std::max(rep.max_t_drift, std::abs(q.t - p.t));
        }
        return rep;
    }
    const Mat4 action = so22_matrix(gamma);
    for (const auto& p : pts) {
        const Vec22 x = embed_outer(params, p);
        const std::array<double, 4> img =
            action.apply({x.x1, x.y1, x.x2, x.y2});  // (x1,y1,x2,y2) ordering
        const KerrPoint q = kerr_coords(params, {img[0], img[2], img[1], img[3]});
        const double res = std::max({std::abs(q.t - p.t), std::abs(q.varphi - (p.varphi + 2 * kPi)),
                                     std::abs(q.r - p.r)});
        rep.max_residual = std::max(rep.max_residual, res);
        rep.max_t_drift = std::max(rep.max_t_drift, std::abs(q.t - p.t));
    }
    return rep;
}

ExtremeKillingReport extreme_lightlike_killing(const BTZParams& params,
                                               const std::vector<KerrPoint>& pts) {
    if (!params.extreme)
        throw std::invalid_argument("extreme_lightlike_killing: extreme parameters required");
    ExtremeKillingReport rep;
    for (const auto& p : pts) {
        const Metric3 g = kerr_metric(params, p.r);
        const double norm = g[1][1] + 2 * g[0][1] + g[0][0];
        rep.max_killing_norm = std::max(rep.max_killing_norm, std::abs(norm));
        // <d2/dvarphi2 | position> via Richardson-extrapolated differences.
        const Vec22 pos = embed_outer(params, p);
        auto second = [&](double h) {
            const Vec22 fp = embed_outer(params, {p.t, p.varphi + h, p.r});
            const Vec22 fm = embed_outer(params, {p.t, p.varphi - h, p.r});
            return (fp - pos * 2 + fm) * (1 / (h * h));
        };
        const double h = 5e-3;
        const Vec22 d4 = second(h), d2 = second(h / 2);
        const Vec22 dpp = (d2 * 4 - d4) * (1.0 / 3.0);
        const double res = pairing(dpp, pos) + p.r * p.r;
        rep.max_pairing_residual = std::max(rep.max_pairing_residual, std::abs(res));
    }
    return rep;
}

}  // namespace btz
