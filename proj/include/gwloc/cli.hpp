#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "gwloc/harness.hpp"

namespace gwloc {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kFailure = 2;
}  // namespace exit_code

/// Default master seed: $GWLOC_SEED when set and numeric, otherwise 1.
std::uint64_t default_seed();

/// Applies `key=value` settings to an experiment config. Unknown keys and
/// malformed values raise InvalidConfig.
void apply_config(ExperimentConfig& cfg, const std::map<std::string, std::string>& kv);
/// The resolved config in the same key=value format apply_config reads.
std::string describe_config(const ExperimentConfig& cfg);

/// Entry point behind the gwloc executable. args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gwloc
