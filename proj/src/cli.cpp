#include "btzgeo/cli.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "btzgeo/csv.hpp"
#include "btzgeo/scenario.hpp"

namespace btz {

namespace {

struct Options {
    std::string scenario_path;
    std::string out_path;
    std::uint64_t seed = 1;
    long samples = 10000;
    int word_len = 6;
    int n_max = 64;
    double r_plus = 2, r_minus = 1;
    double tol = 1e-6;
};

class Report {
  public:
    explicit Report(std::string out_path) : out_path_(std::move(out_path)) {}

    template <class T>
    void line(const std::string& key, const T& value) {
        ss_ << key << ": " << value << '\n';
    }
    void line(const std::string& key, double value) { ss_ << key << ": " << format_double(value) << '\n'; }

    void flush() {
        if (out_path_.empty()) {
            std::cout << ss_.str();
        } else {
            std::ofstream f(out_path_, std::ios::binary);
            if (!f) throw std::runtime_error("cannot open '" + out_path_ + "' for writing");
            f << ss_.str();
        }
    }

  private:
    std::string out_path_;
    std::stringstream ss_;
};

void echo_options(Report& rep, const std::string& command, const Options& o) {
    rep.line("command", command);
    rep.line("scenario", o.scenario_path.empty() ? "-" : o.scenario_path);
    rep.line("out", o.out_path.empty() ? "-" : o.out_path);
    rep.line("seed", o.seed);
    rep.line("samples", o.samples);
    rep.line("word_len", o.word_len);
    rep.line("n_max", o.n_max);
    rep.line("r_plus", o.r_plus);
    rep.line("r_minus", o.r_minus);
    rep.line("tol", o.tol);
}

int cmd_validate(const Options& o) {
    Report rep(o.out_path);
    echo_options(rep, "validate", o);
    Scenario s = load_scenario(o.scenario_path);
    const AdmissibilityReport adm = admissibility_probe(s.group);
    rep.line("scenario_id", s.id);
    rep.line("generators", s.group.generators.size());
    for (std::size_t i = 0; i < s.group.generators.size(); ++i) {
        const IsoClass cls = classify_pair(s.group.generators[i]);
        rep.line("generator_" + s.group.labels[i], to_string(cls.tag));
    }
    rep.line("admissible", adm.admissible() ? "yes" : "no");
    for (const auto& n : adm.notes) rep.line("admissibility_note", n);
    rep.line("action_valid", s.validation.pass ? "yes" : "no");
    for (const auto& n : s.validation.notes) rep.line("validation_note", n);
    rep.flush();
    return 0;
}

int cmd_classify(const Options& o) {
    Report rep(o.out_path);
    echo_options(rep, "classify", o);
    Scenario s = load_scenario(o.scenario_path);
    for (std::size_t i = 0; i < s.group.generators.size(); ++i) {
        const IsoClass cls = classify_pair(s.group.generators[i]);
        const std::string base = "generator_" + s.group.labels[i];
        rep.line(base + "_class", to_string(cls.tag));
        rep.line(base + "_lambda", cls.lambda);
        rep.line(base + "_mu", cls.mu);
        if (cls.tag == IsoTag::ParPar)
            rep.line(base + "_parpar_same_orbit", cls.parpar_same_orbit ? "yes" : "no");
        try {
            const Vec22 fp = attractive_fixed_point(s.group.generators[i]);
            const EinPoint e = null_direction_to_ein(fp);
            rep.line(base + "_fixed_phi", e.phi);
            rep.line(base + "_fixed_theta", e.theta);
        } catch (const NoDominantDirection&) {
            rep.line(base + "_fixed_point", "none");
        }
    }
    rep.flush();
    return 0;
}

int cmd_limit_set(const Options& o) {
    Report rep(o.out_path.empty() ? "" : o.out_path + ".report");
    echo_options(rep, "limit-set", o);
    Scenario s = load_scenario(o.scenario_path);
    const LimitSetApprox ls = limit_set(s.group, o.word_len);
    rep.line("points", ls.points.size());
    rep.line("skipped_elements", ls.skipped_elements);
    const auto ach = achronality_check(ls.points, /*strict=*/false);
    rep.line("achronal", ach.achronal ? "yes" : "no");
    std::ostringstream csv;
    csv << "phi,theta,word\n";
    for (std::size_t i = 0; i < ls.points.size(); ++i) {
        csv << format_double(ls.points[i].phi) << ',' << format_double(ls.points[i].theta) << ',';
        for (int l : ls.source_words[i])
            csv << static_cast<char>(l > 0 ? 'a' + l - 1 : 'A' - l - 1);
        csv << '\n';
    }
    if (o.out_path.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream f(o.out_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open '" + o.out_path + "'");
        f << csv.str();
    }
    rep.flush();
    return ach.achronal ? 0 : 3;
}

int cmd_sample(const Options& o) {
    Report rep(o.out_path.empty() ? "" : o.out_path + ".report");
    echo_options(rep, "sample", o);
    Scenario s = load_scenario(o.scenario_path);
    const LabeledPointCloud cloud = sample_domain(s, o.samples, o.seed);
    if (o.out_path.empty()) {
        emit_cloud(cloud, std::cout);
    } else {
        emit_cloud(cloud, o.out_path);
    }
    rep.line("rows", cloud.rows.size());
    rep.flush();
    return 0;
}

int cmd_domain(const Options& o) {
    Report rep(o.out_path);
    echo_options(rep, "domain", o);
    Scenario s = load_scenario(o.scenario_path);
    long in_d = 0, in_c = 0;
    GroupDomainOptions gopt;
    gopt.n_max = o.n_max;
    for (long i = 0; i < o.samples; ++i) {
        SplitMix64 rng = SplitMix64::substream(o.seed, static_cast<std::uint64_t>(i));
        const Vec22 v =
            random_quadric_point(rng, s.sampling.theta_max, s.sampling.rho_prime_max);
        if (group_domain_membership(s.group.generators, v, o.word_len, DomainMode::D, gopt))
            ++in_d;
        if (group_domain_membership(s.group.generators, v, o.word_len, DomainMode::CInf, gopt))
            ++in_c;
    }
    rep.line("samples", o.samples);
    rep.line("in_D", in_d);
    rep.line("in_C_inf", in_c);
    rep.flush();
    return 0;
}

int cmd_probe_egal(const Options& o) {
    Report rep(o.out_path);
    echo_options(rep, "probe-egal", o);
    Scenario s = load_scenario(o.scenario_path);
    const ProbeReport pr =
        coincidence_probe(s.group, o.samples, o.word_len, o.n_max, o.tol, o.seed, s.sampling);
    rep.line("samples", pr.samples);
    rep.line("d_members", pr.d_members);
    rep.line("d_only", pr.d_only);
    rep.line("d_only_fraction", pr.d_only_fraction);
    std::ostringstream hist;
    for (std::size_t i = 0; i < pr.margin_histogram.size(); ++i) {
        if (i) hist << ' ';
        hist << pr.margin_histogram[i];
    }
    rep.line("margin_histogram", hist.str());
    const bool non_cyclic = s.group.generators.size() > 1;
    rep.line("red_flag", (non_cyclic && pr.d_only > 0) ? "yes" : "no");
    rep.flush();
    return (non_cyclic && pr.d_only > 0) ? 3 : 0;
}

int cmd_horizon(const Options& o) {
    Report rep(o.out_path.empty() ? "" : o.out_path + ".report");
    echo_options(rep, "horizon", o);
    Scenario s = load_scenario(o.scenario_path);
    const IsometryPair h = normalize_splitting(s.spec);
    const IsometryPair h_inv = h.inverse();
    double max_residual = 0;
    LabeledPointCloud cloud;
    cloud.scenario_id = s.id;
    for (long i = 0; i < o.samples; ++i) {
        SplitMix64 rng = SplitMix64::substream(o.seed, static_cast<std::uint64_t>(i));
        const double x = rng.uniform(-0.8, 0.8);
        const double y = rng.uniform(0.3, 1.2);
        // Vertical affine segment from End1 (z = 0) into the future core.
        const Vec22 start_std{x, y, 1, 0};
        const Vec22 dir_std{0, 0, 0, y + 0.8};
        Ray ray{apply_isometry(h_inv, start_std), apply_isometry(h_inv, dir_std)};
        const Vec22 located = horizon_locate(s, ray, 1e-8);
        const AffineCoord a = standard_affine(apply_isometry(h, located));
        max_residual = std::max(max_residual, std::abs(a.z - a.y));
        CloudRow row;
        row.point = located;
        row.coords = conformal_coords(located);
        row.label = RegionLabel::FutureHorizon;
        row.visible = visible_from_boundary(s, located);
        cloud.rows.push_back(row);
    }
    if (!o.out_path.empty()) emit_cloud(cloud, o.out_path);
    rep.line("rays", o.samples);
    rep.line("max_plane_residual", max_residual);
    rep.flush();
    return max_residual < o.tol ? 0 : 3;
}

int cmd_kerr_verify(const Options& o) {
    Report rep(o.out_path);
    echo_options(rep, "kerr-verify", o);
    const BTZParams params = BTZParams::from_radii(o.r_plus, o.r_minus);
    rep.line("extreme", params.extreme ? "yes" : "no");
    rep.line("J", params.J);
    rep.line("M", params.M);

    bool ok = true;
    SplitMix64 rng(o.seed);
    std::vector<KerrPoint> pts;
    const long n_pts = std::min<long>(o.samples, 1000);
    for (long i = 0; i < n_pts; ++i)
        pts.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1),
                       rng.uniform(params.r_plus + 0.15, params.r_plus + 6)});

    double metric_residual = 0;
    for (const auto& p : pts) {
        const Metric3 numeric = pullback_check(params, p, 1e-5);
        const Metric3 closed = kerr_metric(params, p.r);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                metric_residual = std::max(metric_residual, std::abs(numeric[a][b] - closed[a][b]));
    }
    rep.line("metric_max_abs_error", metric_residual);
    ok = ok && metric_residual < o.tol;

    SurfaceGrid grid;
    if (params.extreme) grid.eta_min = 0.7;
    const SurfaceGeometry sg = surface_geometry(params, 0.0, grid);
    double max_h = 0, max_k_rel = 0, max_n_pair = 0;
    for (std::size_t i = 0; i < sg.r.size(); ++i) {
        max_h = std::max(max_h, std::abs(sg.mean_curvature[i]));
        const double kc = sg.gauss_closed[i];
        if (kc != 0)
            max_k_rel = std::max(max_k_rel, std::abs(sg.gauss_curvature[i] - kc) / std::abs(kc));
        else
            max_k_rel = std::max(max_k_rel, std::abs(sg.gauss_curvature[i]));
        max_n_pair = std::max(
            max_n_pair, std::abs(sg.n_pairing[i] - params.r_minus * params.r_plus));
    }
    rep.line("surface_max_mean_curvature", max_h);
    rep.line("surface_max_gauss_rel_error", max_k_rel);
    rep.line("surface_max_normal_pairing_error", max_n_pair);
    ok = ok && max_h < 1e-5 && max_k_rel < 1e-4 && max_n_pair < 1e-6;

    double geo_gap = 0;
    for (int i = 0; i < 20; ++i) {
        const double r1 = params.r_plus + 0.2 + 0.1 * i;
        const double r2 = r1 + 0.5 + 0.05 * i;
        const GeodesicLength len = radial_geodesic_length(params, r1, r2);
        if (len.closed_form_exact) geo_gap = std::max(geo_gap, std::abs(len.numeric - len.closed_form));
    }
    if (params.extreme) {
        rep.line("geodesic_closed_form_gap", geo_gap);
        ok = ok && geo_gap < 1e-8;
    }

    const HolonomyCheckReport hol = holonomy_translation_check(params, pts);
    rep.line("holonomy_max_residual", hol.max_residual);
    rep.line("holonomy_max_t_drift", hol.max_t_drift);
    if (!params.extreme) rep.line("holonomy_block_matrix_gap", hol.block_matrix_gap);
    ok = ok && hol.max_residual < 1e-9;

    if (params.extreme) {
        const ExtremeKillingReport ek = extreme_lightlike_killing(params, pts);
        rep.line("extreme_killing_max_norm", ek.max_killing_norm);
        rep.line("extreme_pairing_max_residual", ek.max_pairing_residual);
        ok = ok && ek.max_killing_norm < 1e-10 && ek.max_pairing_residual < 1e-8;
    }

    rep.line("verdict", ok ? "pass" : "fail");
    rep.flush();
    return ok ? 0 : 3;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"Causal geometry of constant-curvature (2+1) black-hole spacetimes"};
    app.require_subcommand(1);

    Options o;
    auto add_common = [&](CLI::App* sub, bool needs_scenario) {
        if (needs_scenario)
            sub->add_option("--scenario", o.scenario_path, "scenario file (JSON)")->required();
        sub->add_option("--out", o.out_path, "output path (default stdout)");
        sub->add_option("--seed", o.seed, "RNG seed");
        sub->add_option("--samples", o.samples, "sample count");
        sub->add_option("--word-len", o.word_len, "word ball radius");
        sub->add_option("--n-max", o.n_max, "iterate range for convex causal tests");
        sub->add_option("--tol", o.tol, "tolerance / margin");
    };

    auto* validate = app.add_subcommand("validate", "classify generators and validate the action");
    add_common(validate, true);
    auto* classify = app.add_subcommand("classify", "classification report for each generator");
    add_common(classify, true);
    auto* limit = app.add_subcommand("limit-set", "attractive fixed points of the word ball");
    add_common(limit, true);
    auto* sample = app.add_subcommand("sample", "labeled rejection sample of the invisible domain");
    add_common(sample, true);
    auto* domain = app.add_subcommand("domain", "causal-domain membership counts over samples");
    add_common(domain, true);
    auto* probe = app.add_subcommand("probe-egal", "absolute vs convex causal domain comparison");
    add_common(probe, true);
    auto* horizon = app.add_subcommand("horizon", "bisection of the visibility horizon");
    add_common(horizon, true);
    auto* kerr = app.add_subcommand("kerr-verify", "chart metric and curvature verification");
    add_common(kerr, false);
    kerr->add_option("--r-plus", o.r_plus, "outer radius");
    kerr->add_option("--r-minus", o.r_minus, "inner radius");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (validate->parsed()) return cmd_validate(o);
        if (classify->parsed()) return cmd_classify(o);
        if (limit->parsed()) return cmd_limit_set(o);
        if (sample->parsed()) return cmd_sample(o);
        if (domain->parsed()) return cmd_domain(o);
        if (probe->parsed()) return cmd_probe_egal(o);
        if (horizon->parsed()) return cmd_horizon(o);
        if (kerr->parsed()) return cmd_kerr_verify(o);
    } catch (const ScenarioParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 1;
    } catch (const ScenarioValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}

int run_cli(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args);
}

}  // namespace btz
