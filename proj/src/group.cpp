#include "btzgeo/group.hpp"

#include <algorithm>
#include <cmath>

namespace btz {

void GroupPresentation::validate() const {
    for (std::size_t i = 0; i < generators.size(); ++i) {
        const auto& g = generators[i];
        if (std::abs(g.gL.det() - 1) > kDetTol || std::abs(g.gR.det() - 1) > kDetTol)
            throw ScenarioValidationError("generator " + std::to_string(i) + ": det != 1");
        const IsoClass cls = classify_pair(g);
        if (cls.tag == IsoTag::Trivial)
            throw ScenarioValidationError("generator " + std::to_string(i) + " is trivial");
        // Principal-branch requirement: components reachable by exp.
        auto ok_branch = [](const Mat2& m) {
            return m.trace() > -2 + 1e-9 || (m + Mat2::identity()).frobenius() < 1e-9;
        };
        if (!ok_branch(g.gL) || !ok_branch(g.gR))
            throw ScenarioValidationError("generator " + std::to_string(i) +
                                          ": trace <= -2 component (no principal log)");
    }
}

LimitSetApprox limit_set(const GroupPresentation& gp, int L, double eps, long ball_cap) {
    LimitSetApprox out;
    out.word_len = L;
    out.dedup_radius = eps;
    const auto words = enumerate_ball_words(gp.generators, L, ball_cap);
    for (const auto& w : words) {
        Vec22 dir;
        try {
            dir = attractive_fixed_point(w.iso);
        } catch (const NoDominantDirection&) {
            ++out.skipped_elements;
            continue;
        }
        const EinPoint p = null_direction_to_ein(dir);
        bool dup = false;
        for (const auto& q : out.points) {
            const double d = std::hypot(circle_distance(p.phi, q.phi), p.theta - q.theta);
            if (d < eps) {
                dup = true;
                break;
            }
        }
        if (!dup) {
            out.points.push_back(p);
            out.source_words.push_back(w.letters);
        }
    }
    return out;
}

std::string to_string(AbelianFamily f) {
    switch (f) {
        case AbelianFamily::none: return "none";
        case AbelianFamily::A_hyp: return "A_hyp";
        case AbelianFamily::A_ext: return "A_ext";
        case AbelianFamily::A_par: return "A_par";
    }
    return "?";
}

namespace {

bool commute(const Mat2& a, const Mat2& b, double tol = 1e-9) {
    return (a * b - b * a).frobenius() <= tol * std::max(1.0, a.frobenius() * b.frobenius());
}

bool pairs_commute(const IsometryPair& a, const IsometryPair& b) {
    return commute(a.gL, b.gL) && commute(a.gR, b.gR);
}

bool same_projective_dir(const std::array<double, 2>& u, const std::array<double, 2>& v,
                         double tol = 1e-7) {
    return std::abs(u[0] * v[1] - u[1] * v[0]) < tol;
}

// All non-trivial components on one side of the listed kind, with a shared
// fixed-direction frame.
bool side_uniform(const std::vector<IsometryPair>& gens, bool left, ComponentKind kind) {
    std::array<double, 2> frame{0, 0};
    bool have_frame = false;
    for (const auto& g : gens) {
        const ComponentClass c = classify_component(left ? g.gL : g.gR);
        if (c.kind == ComponentKind::trivial) continue;
        if (c.kind != kind) return false;
        if (!have_frame) {
            frame = c.dir_attract;
            have_frame = true;
            continue;
        }
        const bool match = same_projective_dir(c.dir_attract, frame) ||
                           same_projective_dir(c.dir_repel, frame);
        if (!match) return false;
    }
    return true;
}

bool cyclic_rule(const IsoClass& cls) {
    switch (cls.tag) {
        case IsoTag::HyperbolicTranslationL:
        case IsoTag::HyperbolicTranslationR:
        case IsoTag::HypHyp:
        case IsoTag::ParHyp:
        case IsoTag::HypPar:
            return true;  // one hyperbolic component, the other non-elliptic
        case IsoTag::ParPar:
            return cls.parpar_same_orbit;  // both parabolic and conjugate
        default:
            return false;
    }
}

}  // namespace

AdmissibilityReport admissibility_probe(const GroupPresentation& gp, int probe_ball_len) {
    AdmissibilityReport rep;
    const auto& gens = gp.generators;
    if (gens.empty()) {
        rep.notes.push_back("empty presentation");
        return rep;
    }
    if (gens.size() == 1) {
        rep.cyclic = true;
        const IsoClass cls = classify_pair(gens[0]);
        rep.cyclic_rule_pass = cyclic_rule(cls);
        rep.notes.push_back("generator class " + to_string(cls.tag));
        return rep;
    }
    bool abelian = true;
    for (std::size_t i = 0; i < gens.size() && abelian; ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j)
            if (!pairs_commute(gens[i], gens[j])) {
                abelian = false;
                break;
            }
    rep.abelian = abelian;
    if (abelian) {
        using K = ComponentKind;
        if (side_uniform(gens, true, K::hyperbolic) && side_uniform(gens, false, K::hyperbolic)) {
            rep.family = AbelianFamily::A_hyp;
        } else if ((side_uniform(gens, true, K::parabolic) &&
                    side_uniform(gens, false, K::hyperbolic)) ||
                   (side_uniform(gens, true, K::hyperbolic) &&
                    side_uniform(gens, false, K::parabolic))) {
            rep.family = AbelianFamily::A_ext;
        } else if (side_uniform(gens, true, K::parabolic) &&
                   side_uniform(gens, false, K::parabolic)) {
            bool equal_pairs = true;
            for (const auto& g : gens) {
                const IsoClass cls = classify_pair(g);
                if (cls.tag != IsoTag::ParPar || !cls.parpar_same_orbit) equal_pairs = false;
            }
            rep.family = equal_pairs ? AbelianFamily::A_par : AbelianFamily::none;
        }
        rep.notes.push_back("abelian family " + to_string(rep.family));
        return rep;
    }
    // Non-abelian: necessary conditions only.
    const auto words = enumerate_ball_words(gens, probe_ball_len);
    for (const auto& w : words) {
        const IsoClass cls = classify_pair(w.iso);
        const bool elliptic = cls.left.kind == ComponentKind::elliptic ||
                              cls.right.kind == ComponentKind::elliptic;
        const bool component_trivial = cls.left.kind == ComponentKind::trivial ||
                                       cls.right.kind == ComponentKind::trivial;
        if (elliptic || component_trivial) {
            rep.necessary_conditions_pass = false;
            std::string word;
            for (int l : w.letters) word += (l > 0 ? 'a' + l - 1 : 'A' - l - 1);
            rep.notes.push_back((elliptic ? "elliptic component at word " : "trivial projection at word ") + word);
        }
    }
    return rep;
}

namespace {

bool fixes_direction(const IsometryPair& iso, const Vec22& dir, double eps) {
    const Vec22 img = apply_isometry(iso, dir);
    const double dot = img.x1 * dir.x1 + img.x2 * dir.x2 + img.y1 * dir.y1 + img.y2 * dir.y2;
    const double cosang = std::abs(dot) / (img.euclid_norm() * dir.euclid_norm());
    return 1 - cosang < eps;
}

double ein_distance(const EinPoint& a, const EinPoint& b) {
    return std::hypot(circle_distance(a.phi, b.phi), a.theta - b.theta);
}

}  // namespace

ActionValidationReport action_validation(const AchronalSpec& spec, const GroupPresentation& gp,
                                         double eps) {
    ActionValidationReport rep;
    if (gp.generators.empty()) {
        rep.violated = "empty group (trivial holonomy rejected)";
        return rep;
    }
    const SpecKind kind = spec.kind();
    if (kind == SpecKind::Splitting || kind == SpecKind::Conical) {
        if (gp.generators.size() != 1) {
            rep.violated = "group must be cyclic for elementary splitting/conical actions";
            return rep;
        }
        const IsometryPair& g = gp.generators[0];
        const IsoClass cls = classify_pair(g);
        const EinPoint x = spec.defining_points().front();
        const EinPoint y = spec.defining_points().back();
        if (cls.tag == IsoTag::HypHyp) {
            EinPoint fp_plus, fp_minus;
            try {
                fp_plus = null_direction_to_ein(attractive_fixed_point(g));
                fp_minus = null_direction_to_ein(attractive_fixed_point(g.inverse()));
            } catch (const NoDominantDirection&) {
                rep.violated = "no attractive fixed points";
                return rep;
            }
            const bool direct =
                ein_distance(fp_plus, x) < eps && ein_distance(fp_minus, y) < eps;
            const bool swapped =
                ein_distance(fp_plus, y) < eps && ein_distance(fp_minus, x) < eps;
            if (!direct && !swapped) {
                rep.violated = "defining points are not the attractive/repulsive fixed points";
                return rep;
            }
            rep.pass = true;
            rep.notes.push_back("cyclic HypHyp, fixed points match");
            return rep;
        }
        if (cls.tag == IsoTag::HyperbolicTranslationL ||
            cls.tag == IsoTag::HyperbolicTranslationR) {
            const bool fx = fixes_direction(g, ein_to_null_vector(x), eps);
            const bool fy = fixes_direction(g, ein_to_null_vector(y), eps);
            if (!fx || !fy) {
                rep.violated = "translation does not fix the defining points";
                return rep;
            }
            rep.pass = true;
            rep.notes.push_back("cyclic hyperbolic translation (causal, no black hole)");
            return rep;
        }
        rep.violated = "generator class " + to_string(cls.tag) +
                       " cannot act properly on a splitting/conical domain";
        return rep;
    }
    if (kind == SpecKind::Extreme) {
        AdmissibilityReport adm = admissibility_probe(gp);
        const bool in_a_ext =
            (gp.generators.size() == 1)
                ? (classify_pair(gp.generators[0]).tag == IsoTag::ParHyp ||
                   classify_pair(gp.generators[0]).tag == IsoTag::HypPar ||
                   classify_pair(gp.generators[0]).tag == IsoTag::ParabolicTranslationL ||
                   classify_pair(gp.generators[0]).tag == IsoTag::ParabolicTranslationR ||
                   classify_pair(gp.generators[0]).tag == IsoTag::HyperbolicTranslationL ||
                   classify_pair(gp.generators[0]).tag == IsoTag::HyperbolicTranslationR)
                : (adm.abelian && adm.family == AbelianFamily::A_ext);
        if (!in_a_ext) {
            rep.violated = "group is not contained in an A_ext normalizer of the segment";
            return rep;
        }
        for (const auto& g : gp.generators) {
            if (!fixes_direction(g, ein_to_null_vector(spec.defining_points().front()), eps) ||
                !fixes_direction(g, ein_to_null_vector(spec.defining_points().back()), eps)) {
                rep.violated = "segment endpoints are not fixed";
                return rep;
            }
            const IsoClass cls = classify_pair(g);
            if (cls.tag == IsoTag::ParabolicTranslationL ||
                cls.tag == IsoTag::ParabolicTranslationR)
                rep.notes.push_back(
                    "parabolic translation generator: empty absolute causal domain");
        }
        rep.pass = true;
        rep.notes.push_back("A_ext action, endpoints fixed");
        return rep;
    }
    // Non-elementary specs: invariance of the point sample plus the
    // non-abelian necessary conditions.
    AdmissibilityReport adm = admissibility_probe(gp);
    if (!adm.admissible()) {
        rep.violated = "admissibility probe failed";
        return rep;
    }
    rep.pass = true;
    rep.notes.push_back("necessary conditions hold (non-elementary spec)");
    return rep;
}

}  // namespace btz
