#include "btzgeo/scenario.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace btz {

namespace {

using nlohmann::json;

void byte_to_line_col(const std::string& text, std::size_t byte, int& line, int& col) {
    line = 1;
    col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
}

Mat2 parse_mat(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 ||
        !j[1].is_array() || j[1].size() != 2)
        throw ScenarioValidationError(where + ": expected a 2x2 row-major matrix");
    return {j[0][0].get<double>(), j[0][1].get<double>(), j[1][0].get<double>(),
            j[1][1].get<double>()};
}

GroupPresentation parse_group(const json& doc) {
    GroupPresentation gp;
    if (!doc.contains("group") || !doc["group"].contains("generators"))
        throw ScenarioValidationError("missing group.generators");
    int index = 0;
    for (const auto& g : doc["group"]["generators"]) {
        const std::string where = "group.generators[" + std::to_string(index) + "]";
        if (!g.contains("L") || !g.contains("R"))
            throw ScenarioValidationError(where + ": needs L and R");
        const Mat2 l = parse_mat(g["L"], where + ".L");
        const Mat2 r = parse_mat(g["R"], where + ".R");
        if (g.value("exp", false)) {
            if (std::abs(l.trace()) > 1e-9 || std::abs(r.trace()) > 1e-9)
                throw ScenarioValidationError(where + ": exp-form entries must be traceless");
            gp.generators.push_back(IsometryPair::from_logs(l, r));
        } else {
            gp.generators.push_back(IsometryPair(l, r));
        }
        gp.labels.push_back(std::string(1, static_cast<char>('a' + index)));
        ++index;
    }
    return gp;
}

std::vector<EinPoint> parse_points(const json& doc) {
    std::vector<EinPoint> pts;
    if (!doc.contains("lambda") || !doc["lambda"].contains("points")) return pts;
    for (const auto& p : doc["lambda"]["points"]) {
        if (!p.is_array() || p.size() != 2)
            throw ScenarioValidationError("lambda.points entries must be [phi, theta]");
        pts.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    return pts;
}

}  // namespace

Scenario parse_scenario(const std::string& text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        int line = 0, col = 0;
        byte_to_line_col(text, e.byte > 0 ? e.byte - 1 : 0, line, col);
        throw ScenarioParseError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) +
                                     ": " + e.what(),
                                 line, col);
    }
    if (!doc.contains("scenario") || !doc["scenario"].contains("kind"))
        throw ScenarioValidationError("missing scenario.kind");
    const std::string kind = doc["scenario"]["kind"].get<std::string>();
    const std::string id = doc["scenario"].value("id", kind);

    GroupPresentation gp = parse_group(doc);
    gp.validate();
    std::vector<EinPoint> pts = parse_points(doc);

    SamplingConfig sampling;
    if (doc.contains("sampling")) {
        const auto& s = doc["sampling"];
        sampling.n_samples = s.value("n", sampling.n_samples);
        sampling.seed = s.value("seed", sampling.seed);
        sampling.theta_max = s.value("theta_max", sampling.theta_max);
        sampling.rho_prime_max = s.value("rho_prime_max", sampling.rho_prime_max);
    }
    int n_grid = kDefaultEnvelopeGrid;
    if (doc.contains("tolerances")) {
        const auto& t = doc["tolerances"];
        sampling.margin = t.value("margin", sampling.margin);
        n_grid = t.value("grid", n_grid);
    }
    int word_len = doc.value("limit_set", json::object()).value("word_len", 6);

    auto spec = [&]() -> AchronalSpec {
        if (kind == "splitting") {
            if (pts.size() != 2)
                throw ScenarioValidationError("splitting scenario needs exactly 2 lambda points");
            return AchronalSpec::splitting(pts[0], pts[1], n_grid);
        }
        if (kind == "extreme") {
            if (pts.size() != 2)
                throw ScenarioValidationError("extreme scenario needs exactly 2 lambda points");
            return AchronalSpec::extreme(pts[0], pts[1], n_grid);
        }
        if (kind == "conical") {
            if (pts.size() != 3)
                throw ScenarioValidationError(
                    "conical scenario needs 3 lambda points (foot, corner, foot)");
            return AchronalSpec::conical(pts[0], pts[1], pts[2], n_grid);
        }
        if (kind == "cyclic") {
            if (gp.generators.size() != 1)
                throw ScenarioValidationError("cyclic scenario needs exactly one generator");
            if (pts.size() == 2) return AchronalSpec::splitting(pts[0], pts[1], n_grid);
            const EinPoint a = null_direction_to_ein(attractive_fixed_point(gp.generators[0]));
            const EinPoint b =
                null_direction_to_ein(attractive_fixed_point(gp.generators[0].inverse()));
            return AchronalSpec::splitting(a, b, n_grid);
        }
        if (kind == "schottky" || kind == "custom") {
            if (!pts.empty()) return AchronalSpec::point_cloud(pts, n_grid);
            const LimitSetApprox ls = limit_set(gp, word_len);
            return AchronalSpec::limit_set_spec(ls.points, n_grid);
        }
        throw ScenarioValidationError("unknown scenario.kind '" + kind + "'");
    }();

    Scenario s = Scenario::make(id, std::move(spec), std::move(gp), sampling);
    s.sample_absolute_domain = (kind == "cyclic");
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ScenarioValidationError("cannot open scenario file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_scenario(ss.str(), path);
}

}  // namespace btz
