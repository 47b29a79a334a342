#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "drmab/instance.hpp"

namespace drmab {

// The sixteen-arm benchmark instance used for the headline experiments.
InstanceData appendix_f_k16();

// K = 5, fixed dueling matrix, mu = (0.9, 0.9 - gap, ..., 0.9 - 4 gap).
InstanceData reward_gap_instance(double gap);

// K = 5, mu = (0.9, 0.84, 0.78, 0.72, 0.66), nu_{k,l} = 0.5 + (l - k) gap.
InstanceData dueling_gap_instance(double gap);

inline const std::vector<double> kRewardGapGrid{0.06, 0.11, 0.16, 0.21};
inline const std::vector<double> kDuelingGapGrid{0.03, 0.05, 0.07, 0.09, 0.11};
inline constexpr double kRewardGapLimit = 0.225;
inline constexpr double kDuelingGapLimit = 0.125;

struct NamedInstance {
  std::string name;  // canonical spelling, e.g. "reward-gap:0.06"
  BanditInstance instance;
};

// Accepts "appendix-f-k16", "reward-gap:<gap>", "dueling-gap:<gap>" or a path to
// an instance file. Gaps off the standard grids are accepted with a warning on
// `warn`. Throws ConfigError for invalid instances or gaps, IoError for
// unreadable files.
NamedInstance resolve_instance(std::string_view source, std::ostream& warn);

// Names of the built-in families with a short description, one per entry.
std::vector<std::pair<std::string, std::string>> builtin_catalog();

// JSON object with fields K, mu, nu.
InstanceData load_instance_file(const std::filesystem::path& path);
std::string instance_to_json(const InstanceData& data);

}  // namespace drmab
