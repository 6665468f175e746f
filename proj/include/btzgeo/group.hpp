#ifndef BTZGEO_GROUP_HPP
#define BTZGEO_GROUP_HPP

#include <string>
#include <vector>

#include "btzgeo/causal.hpp"
#include "btzgeo/invisible.hpp"
#include "btzgeo/isometry.hpp"

namespace btz {

inline constexpr double kDedupRadius = 1e-7;

/// Finitely generated group of isometries, assumed free on its generators.
struct GroupPresentation {
    std::vector<IsometryPair> generators;
    std::vector<std::string> labels;

    void validate() const;  // unimodular, non-trivial, principal-branch logs
};

struct LimitSetApprox {
    std::vector<EinPoint> points;
    std::vector<std::vector<int>> source_words;
    int word_len = 0;
    double dedup_radius = kDedupRadius;
    long skipped_elements = 0;  // ball elements with no attractive direction
};

/// Closure sample of the attractive fixed points of the word ball of length
/// <= L, deduplicated at radius eps in the cylinder metric. Elements without
/// a dominant direction are skipped and counted.
LimitSetApprox limit_set(const GroupPresentation& gp, int L, double eps = kDedupRadius,
                         long ball_cap = 1000000);

enum class AbelianFamily { none, A_hyp, A_ext, A_par };

std::string to_string(AbelianFamily f);

struct AdmissibilityReport {
    bool cyclic = false;
    bool cyclic_rule_pass = false;  // the one-generator criterion
    bool abelian = false;
    AbelianFamily family = AbelianFamily::none;
    bool necessary_conditions_pass = true;  // non-abelian: no elliptic ball element
    std::vector<std::string> notes;
    bool admissible() const {
        if (cyclic) return cyclic_rule_pass;
        if (abelian) return family != AbelianFamily::none;
        return necessary_conditions_pass;
    }
};

/// Admissibility predicate: the exact rule for cyclic groups, simultaneous
/// normal-form detection for abelian ones, necessary conditions only (ball
/// free of elliptic components) otherwise.
AdmissibilityReport admissibility_probe(const GroupPresentation& gp, int probe_ball_len = 4);

struct ActionValidationReport {
    bool pass = false;
    std::string violated;  // empty when pass
    std::vector<std::string> notes;
};

/// Validity of the action of the group on the invisible domain of the spec:
/// splitting/conical require a cyclic group spanned by a hyperbolic-hyperbolic
/// element (or a hyperbolic translation) whose fixed points match the defining
/// points; extreme requires an A_ext subgroup fixing the segment ends, with
/// parabolic-translation generators flagged.
ActionValidationReport action_validation(const AchronalSpec& spec, const GroupPresentation& gp,
                                         double eps = 1e-6);

}  // namespace btz

#endif
