#ifndef BTZGEO_CSV_HPP
#define BTZGEO_CSV_HPP

#include <iosfwd>
#include <string>

#include "btzgeo/analysis.hpp"

namespace btz {

inline constexpr const char* kCloudHeader =
    "x1,x2,y1,y2,theta,rho_prime,phi,label,visible,scenario_id";

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

/// Writes the cloud in the fixed column layout, LF line endings,
/// shortest-round-trip decimals, rows in sample order.
void emit_cloud(const LabeledPointCloud& cloud, std::ostream& os);
void emit_cloud(const LabeledPointCloud& cloud, const std::string& path);

/// Lossless re-parse of an emitted file.
LabeledPointCloud parse_cloud(const std::string& path);

}  // namespace btz

#endif
