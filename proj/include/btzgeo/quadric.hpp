#ifndef BTZGEO_QUADRIC_HPP
#define BTZGEO_QUADRIC_HPP

#include <array>
#include <cmath>

#include "btzgeo/errors.hpp"
#include "btzgeo/rng.hpp"

namespace btz {

inline constexpr double kQuadricTol = 1e-9;
inline constexpr double kDetTol = 1e-9;

/// Vector in the flat space E of signature (2,2).  The model space of
/// curvature -1 is the quadric {Q = -1}; its conformal boundary consists of
/// null rays {Q = 0}.
struct Vec22 {
    double x1 = 0, x2 = 0, y1 = 0, y2 = 0;

    Vec22() = default;
    Vec22(double x1_, double x2_, double y1_, double y2_) : x1(x1_), x2(x2_), y1(y1_), y2(y2_) {}

    Vec22 operator+(const Vec22& o) const { return {x1 + o.x1, x2 + o.x2, y1 + o.y1, y2 + o.y2}; }
    Vec22 operator-(const Vec22& o) const { return {x1 - o.x1, x2 - o.x2, y1 - o.y1, y2 - o.y2}; }
    Vec22 operator*(double s) const { return {x1 * s, x2 * s, y1 * s, y2 * s}; }
    Vec22 operator-() const { return {-x1, -x2, -y1, -y2}; }

    double euclid_norm() const { return std::sqrt(x1 * x1 + x2 * x2 + y1 * y1 + y2 * y2); }
};

/// Unit-determinant 2x2 real matrix [[a,b],[c,d]]; doubles as a Lie algebra
/// element (then traceless, a + d = 0).
struct Mat2 {
    double a = 1, b = 0, c = 0, d = 1;

    Mat2() = default;
    Mat2(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {}

    static Mat2 identity() { return {1, 0, 0, 1}; }
    static Mat2 zero() { return {0, 0, 0, 0}; }

    double det() const { return a * d - b * c; }
    double trace() const { return a + d; }
    Mat2 transpose() const { return {a, c, b, d}; }

    // Inverse assuming det = 1 (group elements).
    Mat2 inverse_unit() const { return {d, -b, -c, a}; }

    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    Mat2 operator+(const Mat2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
    Mat2 operator-(const Mat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
    Mat2 operator*(double s) const { return {a * s, b * s, c * s, d * s}; }
    Mat2 operator-() const { return {-a, -b, -c, -d}; }

    double frobenius() const { return std::sqrt(a * a + b * b + c * c + d * d); }
};

/// Conformal cylinder coordinates: theta is the lifted time (radians,
/// unbounded), rho_prime the colatitude on the hemisphere in [0, pi/2)
/// for interior points (pi/2 is reserved for boundary points), phi the
/// longitude mod 2*pi.
struct CylCoord3 {
    double theta = 0;
    double rho_prime = 0;
    double phi = 0;
};

inline double quadratic_form(const Vec22& v) {
    return v.x1 * v.x1 + v.x2 * v.x2 - v.y1 * v.y1 - v.y2 * v.y2;
}

inline double pairing(const Vec22& v, const Vec22& w) {
    return v.x1 * w.x1 + v.x2 * w.x2 - v.y1 * w.y1 - v.y2 * w.y2;
}

// Quadric residual scale: |Q + 1| is representable only to eps * |v|^2.
inline double quadric_scale(const Vec22& v) {
    return 1.0 + v.x1 * v.x1 + v.x2 * v.x2 + v.y1 * v.y1 + v.y2 * v.y2;
}

inline bool on_quadric(const Vec22& v, double tol = kQuadricTol) {
    return std::abs(quadratic_form(v) + 1.0) <= tol * quadric_scale(v);
}

// Linear identification of E with 2x2 matrices; det(m) = -Q(v).
inline Mat2 vec_to_mat(const Vec22& v) {
    return {v.y1 + v.x1, v.x2 + v.y2, v.x2 - v.y2, v.y1 - v.x1};
}

inline Vec22 mat_to_vec(const Mat2& m) {
    return {(m.a - m.d) / 2, (m.b + m.c) / 2, (m.a + m.d) / 2, (m.b - m.c) / 2};
}

/// Quadric point -> unimodular matrix. Rejects off-quadric input.
inline Mat2 ads_matrix(const Vec22& v) {
    if (!on_quadric(v)) throw OffQuadricError("ads_matrix: Q(v) != -1");
    return vec_to_mat(v);
}

/// Inverse identification. Rejects non-unimodular input.
inline Vec22 matrix_ads(const Mat2& m) {
    if (std::abs(m.det() - 1.0) > kDetTol) throw OffQuadricError("matrix_ads: det != 1");
    return mat_to_vec(m);
}

/// Principal-branch conformal coordinates of a quadric point,
/// theta in (-pi, pi], phi = 0 on the axis x1 = x2 = 0.
inline CylCoord3 conformal_coords(const Vec22& v) {
    if (!on_quadric(v)) throw OffQuadricError("conformal_coords: Q(v) != -1");
    CylCoord3 c;
    c.theta = std::atan2(v.y2, v.y1);
    const double rx = std::hypot(v.x1, v.x2);
    c.rho_prime = std::atan(rx);
    c.phi = (rx > 0) ? std::atan2(v.x2, v.x1) : 0.0;
    return c;
}

/// Point of the unit 2-sphere from (rho_prime, phi) as colatitude/longitude.
inline std::array<double, 3> sphere_point(double rho_prime, double phi) {
    return {std::sin(rho_prime) * std::cos(phi), std::sin(rho_prime) * std::sin(phi),
            std::cos(rho_prime)};
}

inline double sphere_distance(const std::array<double, 3>& u, const std::array<double, 3>& w) {
    const double dot = u[0] * w[0] + u[1] * w[1] + u[2] * w[2];
    const double cx = u[1] * w[2] - u[2] * w[1];
    const double cy = u[2] * w[0] - u[0] * w[2];
    const double cz = u[0] * w[1] - u[1] * w[0];
    return std::atan2(std::sqrt(cx * cx + cy * cy + cz * cz), dot);
}

/// Quadric point from cylinder data (any theta; rho_prime < pi/2).
inline Vec22 quadric_point(double theta, double rho_prime, double phi) {
    const double rho = std::tan(rho_prime);
    const double sec = std::sqrt(1.0 + rho * rho);
    return {rho * std::cos(phi), rho * std::sin(phi), sec * std::cos(theta),
            sec * std::sin(theta)};
}

/// Random quadric point inside a bounded cylinder window.
inline Vec22 random_quadric_point(SplitMix64& rng, double theta_max = 1.5,
                                  double rho_prime_max = 1.3) {
    const double theta = rng.uniform(-theta_max, theta_max);
    const double rho_prime = rng.uniform(0.0, rho_prime_max);
    const double phi = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
    return quadric_point(theta, rho_prime, phi);
}

}  // namespace btz

#endif
