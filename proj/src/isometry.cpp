#include "btzgeo/isometry.hpp"

#include <cmath>
#include <stdexcept>

namespace btz {

namespace {

// cosh-like and sinhc-like series of w2 = omega^2 (valid for either sign).
void cosh_sinhc(double w2, double& ch, double& shc) {
    if (std::abs(w2) < 1e-8) {
        ch = 1 + w2 / 2 + w2 * w2 / 24;
        shc = 1 + w2 / 6 + w2 * w2 / 120;
        return;
    }
    if (w2 > 0) {
        const double w = std::sqrt(w2);
        ch = std::cosh(w);
        shc = std::sinh(w) / w;
    } else {
        const double w = std::sqrt(-w2);
        ch = std::cos(w);
        shc = std::sin(w) / w;
    }
}

std::array<double, 2> unit2(double x, double y) {
    const double n = std::hypot(x, y);
    if (n == 0) return {1, 0};
    return {x / n, y / n};
}

// Column of the matrix with the larger norm (for rank-one direction extraction).
std::array<double, 2> dominant_column(const Mat2& m) {
    const double n0 = std::hypot(m.a, m.c);
    const double n1 = std::hypot(m.b, m.d);
    return (n0 >= n1) ? unit2(m.a, m.c) : unit2(m.b, m.d);
}

int nilpotent_orbit_sign(const Mat2& n) {
    // Sign of the induced flow on RP^1: q(x) = -c x^2 + 2 a x + b.
    if (std::abs(n.c) > 1e-12) return n.c < 0 ? 1 : -1;
    if (std::abs(n.b) > 1e-12) return n.b > 0 ? 1 : -1;
    return 0;
}

}  // namespace

Mat2 sl2_exp(const Mat2& x) {
    const double w2 = -x.det();  // a^2 + bc for traceless x
    if (w2 > 1e-8) {
        // Spectral form e^w P+ + e^{-w} P-, P+- = (I +- X/w)/2. Keeps small
        // entries accurate where cosh(w) - sinh(w) a/w would cancel.
        const double w = std::sqrt(w2);
        const double ep = std::exp(w), em = std::exp(-w);
        const double ka = x.a / w, kb = x.b / w, kc = x.c / w;
        return {ep * (1 + ka) / 2 + em * (1 - ka) / 2, (ep - em) / 2 * kb,
                (ep - em) / 2 * kc, ep * (1 - ka) / 2 + em * (1 + ka) / 2};
    }
    double ch, shc;
    cosh_sinhc(w2, ch, shc);
    return {ch + shc * x.a, shc * x.b, shc * x.c, ch - shc * x.a};
}

Mat2 sl2_log(const Mat2& m) {
    const double tr = m.trace();
    if (tr <= -2.0 + 1e-12)
        throw std::domain_error("sl2_log: trace <= -2 has no principal-branch log");
    const double h = tr / 2;
    Mat2 tl = {m.a - h, m.b, m.c, m.d - h};  // traceless part
    double scale;                            // omega / sinh(omega), cosh(omega) = h
    if (h > 1 + 1e-9) {
        const double w = std::acosh(h);
        scale = w / std::sinh(w);
    } else if (h < 1 - 1e-9) {
        const double w = std::acos(h);
        scale = w / std::sin(w);
    } else {
        const double s = tr - 2;  // omega^2 to first order
        scale = 1 - s / 6 + 7 * s * s / 360;
    }
    return tl * scale;
}

IsometryPair IsometryPair::from_logs(const Mat2& xl, const Mat2& xr) {
    IsometryPair iso(sl2_exp(xl), sl2_exp(xr));
    iso.logL = xl;
    iso.logR = xr;
    return iso;
}

IsometryPair IsometryPair::inverse() const {
    IsometryPair inv(gL.inverse_unit(), gR.inverse_unit());
    if (logL) inv.logL = -(*logL);
    if (logR) inv.logR = -(*logR);
    return inv;
}

IsometryPair IsometryPair::compose(const IsometryPair& o) const {
    return {gL * o.gL, gR * o.gR};
}

ComponentClass classify_component(const Mat2& m, double tol) {
    ComponentClass c;
    const double tr = m.trace();
    const double atr = std::abs(tr);
    const Mat2 id = Mat2::identity();
    const double dist_id = (m - id).frobenius();
    const double dist_neg = (m + id).frobenius();
    if (dist_id <= tol || dist_neg <= tol) {
        c.kind = ComponentKind::trivial;
        return c;
    }
    if (atr > 2 + tol) {
        c.kind = ComponentKind::hyperbolic;
        c.strength = std::acosh(atr / 2);
        // m = s(cosh(l) I + sinh(l) K) with s = sign(tr), K^2 = I.
        const double s = tr > 0 ? 1.0 : -1.0;
        const double sh = std::sinh(c.strength);
        Mat2 k = (m * s - id * std::cosh(c.strength)) * (1.0 / sh);
        // Attracting direction: +1 eigenvector of K, i.e. column of K + I.
        c.dir_attract = dominant_column(k + id);
        c.dir_repel = dominant_column(k - id);
        return c;
    }
    if (atr >= 2 - tol) {
        c.kind = ComponentKind::parabolic;
        const double s = tr > 0 ? 1.0 : -1.0;
        Mat2 n = m * s - id;  // nilpotent
        c.dir_attract = dominant_column(n);
        c.dir_repel = c.dir_attract;
        c.parabolic_sign = nilpotent_orbit_sign(n);
        return c;
    }
    c.kind = ComponentKind::elliptic;
    c.strength = std::acos(tr / 2);
    c.rotation_sign = (m.b - m.c) > 0 ? 1 : -1;  // exp(t*R0), t in (0,pi), has b-c > 0
    return c;
}

std::string to_string(IsoTag tag) {
    switch (tag) {
        case IsoTag::Trivial: return "Trivial";
        case IsoTag::HyperbolicTranslationL: return "HyperbolicTranslationL";
        case IsoTag::HyperbolicTranslationR: return "HyperbolicTranslationR";
        case IsoTag::ParabolicTranslationL: return "ParabolicTranslationL";
        case IsoTag::ParabolicTranslationR: return "ParabolicTranslationR";
        case IsoTag::HypHyp: return "HypHyp";
        case IsoTag::ParHyp: return "ParHyp";
        case IsoTag::HypPar: return "HypPar";
        case IsoTag::ParPar: return "ParPar";
        case IsoTag::Elliptic: return "Elliptic";
        case IsoTag::NonSynchronized: return "NonSynchronized";
    }
    return "?";
}

IsoClass classify_pair(const IsometryPair& iso, double tol) {
    IsoClass cls;
    cls.left = classify_component(iso.gL, tol);
    cls.right = classify_component(iso.gR, tol);
    const ComponentKind l = cls.left.kind, r = cls.right.kind;
    cls.lambda = cls.left.strength;
    cls.mu = cls.right.strength;
    using K = ComponentKind;
    if (l == K::trivial && r == K::trivial) {
        cls.tag = IsoTag::Trivial;
    } else if (r == K::trivial) {
        cls.tag = (l == K::hyperbolic)  ? IsoTag::HyperbolicTranslationL
                  : (l == K::parabolic) ? IsoTag::ParabolicTranslationL
                                        : IsoTag::NonSynchronized;
    } else if (l == K::trivial) {
        cls.tag = (r == K::hyperbolic)  ? IsoTag::HyperbolicTranslationR
                  : (r == K::parabolic) ? IsoTag::ParabolicTranslationR
                                        : IsoTag::NonSynchronized;
    } else if (l == K::hyperbolic && r == K::hyperbolic) {
        cls.tag = IsoTag::HypHyp;
    } else if (l == K::parabolic && r == K::hyperbolic) {
        cls.tag = IsoTag::ParHyp;
    } else if (l == K::hyperbolic && r == K::parabolic) {
        cls.tag = IsoTag::HypPar;
    } else if (l == K::parabolic && r == K::parabolic) {
        cls.tag = IsoTag::ParPar;
        cls.parpar_same_orbit = (cls.left.parabolic_sign == cls.right.parabolic_sign);
    } else if (l == K::elliptic && r == K::elliptic) {
        const bool conjugate = std::abs(cls.left.strength - cls.right.strength) < tol &&
                               cls.left.rotation_sign == cls.right.rotation_sign;
        cls.tag = conjugate ? IsoTag::Elliptic : IsoTag::NonSynchronized;
    } else {
        cls.tag = IsoTag::NonSynchronized;
    }
    return cls;
}

double killing_norm(const Mat2& x_left, const Mat2& x_right, const Mat2& g) {
    const Mat2 ad = g * x_right * g.inverse_unit();
    return -(x_left - ad).det();
}

Vec22 apply_isometry(const IsometryPair& iso, const Vec22& v) {
    return mat_to_vec(iso.gL * vec_to_mat(v) * iso.gR.inverse_unit());
}

std::array<double, 4> Mat4::apply(const std::array<double, 4>& v) const {
    std::array<double, 4> r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
}

Mat4 Mat4::operator*(const Mat4& o) const {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0;
            for (int k = 0; k < 4; ++k) s += (*this)(i, k) * o(k, j);
            r(i, j) = s;
        }
    return r;
}

Mat4 Mat4::identity() {
    Mat4 r;
    for (int i = 0; i < 4; ++i) r(i, i) = 1;
    return r;
}

Mat4 so22_matrix(const IsometryPair& iso) {
    // Basis order (x1, y1, x2, y2).
    const Vec22 basis[4] = {{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}};
    Mat4 m;
    for (int j = 0; j < 4; ++j) {
        const Vec22 img = apply_isometry(iso, basis[j]);
        m(0, j) = img.x1;
        m(1, j) = img.y1;
        m(2, j) = img.x2;
        m(3, j) = img.y2;
    }
    return m;
}

Mat2 conjugate_action(const Mat2& gl, const Mat2& g, const Mat2& gr) {
    return gl * g * gr.inverse_unit();
}

EinPoint null_direction_to_ein(const Vec22& null_dir) {
    Vec22 v = null_dir;
    const double yn = std::hypot(v.y1, v.y2);
    if (yn < 1e-300) throw NoDominantDirection("null direction has vanishing time part");
    // Representative with theta in (-pi/2, pi/2]; tie at y1 = 0 towards y2 > 0.
    if (v.y1 < -1e-12 || (std::abs(v.y1) <= 1e-12 && v.y2 < 0)) v = -v;
    return {std::atan2(v.x2, v.x1), std::atan2(v.y2, v.y1)};
}

Vec22 attractive_fixed_point(const IsometryPair& iso) {
    IsometryPair w = iso;
    // (gL, gR) and (-gL, -gR) act identically; normalize double traces.
    if (w.gL.trace() < 0 && w.gR.trace() < 0) {
        w.gL = -w.gL;
        w.gR = -w.gR;
    }
    ComponentClass cl = classify_component(w.gL);
    ComponentClass cr = classify_component(w.gR);
    if (cl.kind == ComponentKind::elliptic || cr.kind == ComponentKind::elliptic)
        throw NoDominantDirection("attractive_fixed_point: elliptic component");
    if (cl.kind == ComponentKind::trivial && cr.kind == ComponentKind::trivial)
        throw NoDominantDirection("attractive_fixed_point: trivial isometry");

    // Power iteration on the linear action (200 normalized steps).
    const Mat2 grinv = w.gR.inverse_unit();
    Mat2 m{0.37139067, 0.92847669, 0.14873023, -0.61934977};  // fixed generic seed
    for (int i = 0; i < 200; ++i) {
        m = w.gL * m * grinv;
        const double n = m.frobenius();
        if (n < 1e-300 || !std::isfinite(n))
            throw NoDominantDirection("attractive_fixed_point: degenerate iteration");
        m = m * (1.0 / n);
    }

    // Algebraic refinement u * v^T when both components are non-trivial:
    // u = attracting direction of gL, v = attracting direction of gR^{-T}.
    if (cl.kind != ComponentKind::trivial && cr.kind != ComponentKind::trivial) {
        const std::array<double, 2> u = cl.dir_attract;
        ComponentClass crt = classify_component(grinv.transpose());
        const std::array<double, 2> v = crt.dir_attract;
        Mat2 refined{u[0] * v[0], u[0] * v[1], u[1] * v[0], u[1] * v[1]};
        const double align = refined.a * m.a + refined.b * m.b + refined.c * m.c + refined.d * m.d;
        if (align < 0) refined = -refined;
        m = refined * (1.0 / refined.frobenius());
    }

    Vec22 dir = mat_to_vec(m);
    const double n = dir.euclid_norm();
    return dir * (1.0 / n);
}

}  // namespace btz
