#include "btzgeo/csv.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

namespace btz {

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

double parse_double(const std::string& s) {
    double v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw std::runtime_error("csv: bad numeric field '" + s + "'");
    return v;
}

RegionLabel label_from_string(const std::string& s) {
    for (RegionLabel l : {RegionLabel::End1, RegionLabel::End2, RegionLabel::FutureCore,
                          RegionLabel::PastCore, RegionLabel::FutureHorizon,
                          RegionLabel::PastHorizon, RegionLabel::Inner, RegionLabel::Outside})
        if (to_string(l) == s) return l;
    throw std::runtime_error("csv: unknown label '" + s + "'");
}

}  // namespace

void emit_cloud(const LabeledPointCloud& cloud, std::ostream& os) {
    os << kCloudHeader << '\n';
    for (const auto& r : cloud.rows) {
        os << format_double(r.point.x1) << ',' << format_double(r.point.x2) << ','
           << format_double(r.point.y1) << ',' << format_double(r.point.y2) << ','
           << format_double(r.coords.theta) << ',' << format_double(r.coords.rho_prime) << ','
           << format_double(r.coords.phi) << ',' << to_string(r.label) << ','
           << (r.visible ? '1' : '0') << ',' << cloud.scenario_id << '\n';
    }
}

void emit_cloud(const LabeledPointCloud& cloud, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("csv: cannot open '" + path + "' for writing");
    emit_cloud(cloud, f);
}

LabeledPointCloud parse_cloud(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("csv: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(f, line) || line != kCloudHeader)
        throw std::runtime_error("csv: bad header in '" + path + "'");
    LabeledPointCloud cloud;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 10) throw std::runtime_error("csv: bad row in '" + path + "'");
        CloudRow r;
        r.point = {parse_double(fields[0]), parse_double(fields[1]), parse_double(fields[2]),
                   parse_double(fields[3])};
        r.coords.theta = parse_double(fields[4]);
        r.coords.rho_prime = parse_double(fields[5]);
        r.coords.phi = parse_double(fields[6]);
        r.label = label_from_string(fields[7]);
        r.visible = fields[8] == "1";
        cloud.scenario_id = fields[9];
        cloud.rows.push_back(r);
    }
    return cloud;
}

}  // namespace btz
