#ifndef BTZGEO_KERR_HPP
#define BTZGEO_KERR_HPP

#include <array>
#include <vector>

#include "btzgeo/isometry.hpp"
#include "btzgeo/quadric.hpp"

namespace btz {

/// Parameters of the rotating-black-hole chart. r_plus >= r_minus >= 0,
/// r_plus > 0; the degenerate case r_plus = r_minus is flagged extreme.
struct BTZParams {
    double r_plus = 1;
    double r_minus = 0;
    double u = 0;  // pi * (r_plus - r_minus)
    double v = 0;  // pi * (r_plus + r_minus)
    double J = 0;  // -2 r_minus r_plus
    double M = 0;  // r_plus^2 + r_minus^2
    bool extreme = false;

    static BTZParams from_radii(double r_plus, double r_minus);
    double lapse(double r) const;  // N(r) = (r^2-r_plus^2)(r^2-r_minus^2)/r^2

    /// The holonomy pair of the quotient: diagonal (exp(u D), exp(v D)) in
    /// the non-extreme case, (exp(-H), exp(2 pi r_plus D)) in the extreme one.
    IsometryPair holonomy() const;
};

/// Inversion of u = pi(r_plus - r_minus), v = pi(r_plus + r_minus).
/// Requires v >= u >= 0 and v > 0.
BTZParams params_from_holonomy(double u, double v);

struct KerrPoint {
    double t = 0;
    double varphi = 0;  // lifted (real) angle; the quotient takes it mod 2*pi
    double r = 2;
};

/// Symmetric 3x3 metric in the coordinate ordering (t, varphi, r).
using Metric3 = std::array<std::array<double, 3>, 3>;

/// Closed-form chart metric: g_tt = -N + J^2/(4r^2), g_tphi = J/2,
/// g_phiphi = r^2, g_rr = 1/N. Rejects r <= r_plus.
Metric3 kerr_metric(const BTZParams& params, double r);

/// Embedding of the outer region into the quadric. Rejects r <= r_plus.
Vec22 embed_outer(const BTZParams& params, const KerrPoint& p);

/// Inverse chart. Throws ChartDomain outside the outer region.
KerrPoint kerr_coords(const BTZParams& params, const Vec22& v);

/// Finite-difference pullback J^T eta J of the embedding (central
/// differences, step h). Requires r - r_plus > 10 h.
Metric3 pullback_check(const BTZParams& params, const KerrPoint& p, double h = 1e-5);

struct SurfaceGrid {
    double eta_min = 0.05, eta_max = 2.0;
    int n_eta = 50;
    double phi_min = -kPi, phi_max = kPi;  // one fundamental period, centred
    int n_phi = 50;
};

/// Extrinsic data of a constant-time level surface sampled on an (eta, phi)
/// grid. The non-extreme surfaces use rho = cosh(eta); the extreme ones use
/// r = r_plus * cosh(eta) as the radial grid parameter.
struct SurfaceGeometry {
    std::vector<double> r;                // r at each grid node (row-major)
    std::vector<double> mean_curvature;   // (1/2) tr(I^{-1} II)
    std::vector<double> gauss_curvature;  // -det(II) / (4 det(I)), see below
    std::vector<double> gauss_closed;     // r_-^2 r_+^2 / (4 r^4)
    std::vector<double> II_eta_eta, II_eta_phi, II_phi_phi;
    std::vector<double> n_pairing;  // <n | d2_{eta phi}> with Q(n) = -r^2
    int n_eta = 0, n_phi = 0;
};

/// Numerical second fundamental form of the t = t0 level set via central
/// finite differences of the embedding projected on the computed unit
/// normal. The reported Gauss curvature uses the convention
/// K = -det(II)/(4 det(I)) (timelike normal, cross-term-only form), which is
/// the closed form the chart satisfies.
SurfaceGeometry surface_geometry(const BTZParams& params, double t0, const SurfaceGrid& grid,
                                 double h = 1e-4);

struct GeodesicLength {
    double numeric = 0;           // integral of sqrt(g_rr) dr
    double closed_form = 0;       // (1/2) log((r2^2-rp^2)/(r1^2-rp^2)), extreme formula
    bool closed_form_exact = false;  // true when the params are extreme
};

/// Length of the radial curve between r1 < r2 (both > r_plus).
GeodesicLength radial_geodesic_length(const BTZParams& params, double r1, double r2);

struct HolonomyCheckReport {
    double max_residual = 0;   // |kerr_coords(gamma x) - (t, varphi + 2 pi, r)|
    double max_t_drift = 0;    // |t' - t|
    double block_matrix_gap = 0;  // so22(holonomy) vs the cosh/sinh block form
};

/// Applies the holonomy to embedded outer points and verifies the chart
/// shift (delta varphi, delta t) = (2 pi, 0).
HolonomyCheckReport holonomy_translation_check(const BTZParams& params,
                                               const std::vector<KerrPoint>& pts);

/// The cosh/sinh block matrix of the holonomy in coordinates (x1,y1,x2,y2)
/// (non-extreme parameters only).
Mat4 holonomy_block_matrix(const BTZParams& params);

struct ExtremeKillingReport {
    double max_killing_norm = 0;   // metric norm of d_phi + d_t over samples
    double max_pairing_residual = 0;  // |<d2_phiphi | p> + r^2|
};

/// Degenerate-case identities: the norm of d_varphi + d_t from the chart
/// metric and the second-derivative pairing along varphi lines.
/// Requires the extreme flag.
ExtremeKillingReport extreme_lightlike_killing(const BTZParams& params,
                                               const std::vector<KerrPoint>& pts);

}  // namespace btz

#endif
