#ifndef BTZGEO_ISOMETRY_HPP
#define BTZGEO_ISOMETRY_HPP

#include <array>
#include <optional>
#include <string>

#include "btzgeo/einstein.hpp"
#include "btzgeo/quadric.hpp"

namespace btz {

// Normal-form generators of sl(2,R).
inline Mat2 gen_R0() { return {0, 1, -1, 0}; }
inline Mat2 gen_Delta() { return {1, 0, 0, -1}; }
inline Mat2 gen_H() { return {0, 1, 0, 0}; }

/// exp of a traceless 2x2 matrix (closed form, series near the null cone).
Mat2 sl2_exp(const Mat2& x);

/// Principal log of a unimodular matrix with trace > -2 (hyperbolic/parabolic
/// branch through the identity; elliptic via rotation-angle extraction).
/// Throws std::domain_error for trace <= -2 away from -identity.
Mat2 sl2_log(const Mat2& m);

enum class ComponentKind { trivial, elliptic, parabolic, hyperbolic };

struct ComponentClass {
    ComponentKind kind = ComponentKind::trivial;
    double strength = 0;  // arccosh(|tr|/2) if hyperbolic, rotation angle if elliptic
    // Fixed directions in RP^1 as unit 2-vectors (attracting first, then
    // repelling for hyperbolic; the unique direction for parabolic).
    std::array<double, 2> dir_attract{1, 0};
    std::array<double, 2> dir_repel{0, 1};
    // Orbit sign of the nilpotent part for parabolic components (+1 for the
    // orbit of H, -1 for the orbit of -H).
    int parabolic_sign = 0;
    // Rotation sense for elliptic components.
    int rotation_sign = 0;
};

ComponentClass classify_component(const Mat2& m, double tol = 1e-9);

/// Pair of unit-determinant matrices acting on the quadric by
/// v -> gL * v * gR^{-1} (in the matrix picture).
struct IsometryPair {
    Mat2 gL = Mat2::identity();
    Mat2 gR = Mat2::identity();
    std::optional<Mat2> logL;
    std::optional<Mat2> logR;

    IsometryPair() = default;
    IsometryPair(const Mat2& l, const Mat2& r) : gL(l), gR(r) {}
    static IsometryPair from_logs(const Mat2& xl, const Mat2& xr);

    IsometryPair inverse() const;
    IsometryPair compose(const IsometryPair& o) const;  // this after o
};

enum class IsoTag {
    Trivial,
    HyperbolicTranslationL,  // left component hyperbolic, right trivial
    HyperbolicTranslationR,
    ParabolicTranslationL,
    ParabolicTranslationR,
    HypHyp,
    ParHyp,  // left parabolic, right hyperbolic
    HypPar,
    ParPar,
    Elliptic,
    NonSynchronized,
};

std::string to_string(IsoTag tag);

struct IsoClass {
    IsoTag tag = IsoTag::Trivial;
    double lambda = 0;  // left strength where applicable
    double mu = 0;      // right strength
    // For ParPar: whether the two nilpotent parts lie in the same adjoint
    // orbit (the conjugacy-by-a-parabolic case) or opposite orbits (the case
    // with empty absolute causal domain).
    bool parpar_same_orbit = true;
    ComponentClass left;
    ComponentClass right;
};

IsoClass classify_pair(const IsometryPair& iso, double tol = 1e-8);

/// -det(X_L - g X_R g^{-1}): the squared norm of the Killing field generated
/// by (X_L, X_R) at the quadric point identified with g; positive iff the
/// field is spacelike there.
double killing_norm(const Mat2& x_left, const Mat2& x_right, const Mat2& g);

/// Linear action of the pair on E #(off-quadric input allowed; the map is the
/// linear extension of the isometry).
Vec22 apply_isometry(const IsometryPair& iso, const Vec22& v);

/// Row-major 4x4 matrix.
struct Mat4 {
    std::array<double, 16> m{};
    double& operator()(int r, int c) { return m[4 * r + c]; }
    double operator()(int r, int c) const { return m[4 * r + c]; }
    std::array<double, 4> apply(const std::array<double, 4>& v) const;
    Mat4 operator*(const Mat4& o) const;
    static Mat4 identity();
};

/// The matrix of the action in the coordinate ordering (x1, y1, x2, y2).
Mat4 so22_matrix(const IsometryPair& iso);

/// gL * g * gR^{-1}.
Mat2 conjugate_action(const Mat2& gl, const Mat2& g, const Mat2& gr);

/// Dominant invariant null direction of the linear action, i.e. the
/// attractive fixed point in the boundary. Power iteration (200 steps)
/// followed by an algebraic eigenvector refinement; throws
/// NoDominantDirection when a component is elliptic.
Vec22 attractive_fixed_point(const IsometryPair& iso);

/// Cylinder representative of a null direction: the lift with theta in
/// (-pi/2, pi/2], breaking the tie at y1 = 0 towards positive y2.
EinPoint null_direction_to_ein(const Vec22& null_dir);

}  // namespace btz

#endif
