#ifndef BTZGEO_SCENARIO_HPP
#define BTZGEO_SCENARIO_HPP

#include <string>

#include "btzgeo/analysis.hpp"

namespace btz {

/// Scenario file format (JSON):
/// {
///   "scenario":   {"kind": "splitting|extreme|conical|cyclic|schottky|custom",
///                  "id": "name"},
///   "lambda":     {"points": [[phi, theta], ...]},       // optional for cyclic
///   "group":      {"generators": [
///                      {"L": [[a,b],[c,d]], "R": [[a,b],[c,d]]}        // matrices
///                   or {"exp": true, "L": [[...]], "R": [[...]]}       // sl2 logs
///                  ]},
///   "sampling":   {"n": 10000, "seed": 1,
///                  "theta_max": 1.45, "rho_prime_max": 1.25},          // optional
///   "tolerances": {"quadric": 1e-9, "margin": 1e-7, "grid": 4096}      // optional
/// }
///
/// For kind "cyclic" the two boundary points default to the attractive fixed
/// points of the generator and its inverse; "schottky" and "custom" build the
/// boundary set from the limit set of the group at the configured word length
/// when no points are given.
Scenario load_scenario(const std::string& path);

/// Parse + validation entry point on an in-memory document (used by tests).
Scenario parse_scenario(const std::string& json_text, const std::string& origin = "<memory>");

}  // namespace btz

#endif
