#ifndef BTZGEO_CLI_HPP
#define BTZGEO_CLI_HPP

#include <string>
#include <vector>

namespace btz {

/// Exit codes: 0 success, 1 parse error, 2 validation failure,
/// 3 numeric failure (tolerance breach in a verify command).
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, char** argv);

}  // namespace btz

#endif
