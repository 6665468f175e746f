#ifndef BTZGEO_CAUSAL_HPP
#define BTZGEO_CAUSAL_HPP

#include <utility>
#include <vector>

#include "btzgeo/isometry.hpp"

namespace btz {

/// Normal forms of synchronized pairs up to conjugacy, time inversion and
/// left-right swap:
///   1: (l*R0, l*R0)        l > 0
///   2: (l*Delta, 0)        l > 0
///   3: (H, 0)
///   4: (H, -H)
///   5: (H, H)
///   6: (l*Delta, m*Delta)  0 < l <= m
///   7: (l*Delta, H)        l > 0
struct NormalCase {
    int id = 1;
    double lambda = 1;
    double mu = 1;

    std::pair<Mat2, Mat2> generators() const;
};

/// Strict spacelike test for the Killing field of (X_L, X_R) at g.
bool in_D(const Mat2& x_left, const Mat2& x_right, const Mat2& g);

/// The closed-form inequality on the entries of g for each normal case.
bool in_D_closed_form(const NormalCase& nc, const Mat2& g);

struct CRangeOptions {
    double lightlike_tol = kLightlikeTol;
    double relation_margin = 0;  // require |dtheta| >= d + margin to count as related
    double max_step = 0.25 * kPi;
    int max_halvings = 20;
    long max_substeps = 200000;
};

/// True iff no iterate gamma^n x (1 <= |n| <= n_max) is causally related to x
/// in the solid cylinder, with the time lift tracked continuously along
/// t -> exp(t n X). Throws LiftFailure if the continuity tracking degenerates.
/// Since the relation "gamma^n x vs x" equals "x vs gamma^{-n} x" after
/// applying the isometry gamma^n, only positive n need to be walked.
bool in_C_range(const IsometryPair& iso, const Vec22& x, int n_max,
                const CRangeOptions& opt = {});

enum class DomainMode { D, CInf };

struct GroupDomainOptions {
    double margin = 1e-7;  // strict-interior margin for mode D (scale-normalized)
    int n_max = 64;        // iterate range for mode CInf
    long ball_cap = 1000000;
    CRangeOptions c_range;
};

struct WordElement {
    std::vector<int> letters;  // +k / -k for generator k (1-based) / its inverse
    IsometryPair iso;
    bool has_logs = false;
};

/// Freely reduced words of length 1..L with their products, in breadth-first
/// lexicographic order (a < a^{-1} < b < ...). Throws BallTooLarge.
std::vector<WordElement> enumerate_ball_words(const std::vector<IsometryPair>& generators, int L,
                                              long ball_cap = 1000000);

/// Conjunction of the per-element test over all reduced words of length <= L.
bool group_domain_membership(const std::vector<IsometryPair>& generators, const Vec22& x, int L,
                             DomainMode mode, const GroupDomainOptions& opt = {});

/// Killing-field value matrix of the conjugated family at g:
///   exp(n l Delta) A_L exp(-n l Delta) g  -  g exp(n m Delta) A_R exp(-n m Delta).
Mat2 xn_matrix(const Mat2& a_left, const Mat2& a_right, const Mat2& g, double lambda, double mu,
               int n);

/// Entrywise closed form of the same matrix, valid when g.c = 0 and the
/// off-diagonal entries of A_L, A_R agree (the normalized frame
/// nu_L = beta_L, nu_R = beta_R).
Mat2 xn_matrix_closed_form(const Mat2& a_left, const Mat2& a_right, const Mat2& g, double lambda,
                           double mu, int n);

}  // namespace btz

#endif
