#include "drmab/builtin.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "drmab/errors.hpp"

namespace drmab {
namespace {

std::string format_gap(double gap) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", gap);
  return buf;
}

bool on_grid(double gap, const std::vector<double>& grid) {
  for (double g : grid) {
    if (std::abs(g - gap) < 1e-12) return true;
  }
  return false;
}

double parse_gap(std::string_view family, std::string_view text) {
  std::string s(text);
  std::size_t used = 0;
  double gap = 0.0;
  try {
    gap = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(gap)) {
    throw ConfigError(std::string(family) + ": gap '" + s + "' is not a number");
  }
  return gap;
}

}  // namespace

InstanceData appendix_f_k16() {
  InstanceData d;
  d.arm_count = 16;
  d.mu = {0.86, 0.80, 0.75, 0.70, 0.65, 0.60, 0.55, 0.50, 0.45, 0.40, 0.35, 0.30, 0.25, 0.20, 0.15, 0.10};
  d.nu = {
      {0.50, 0.54, 0.57, 0.60, 0.63, 0.65, 0.69, 0.71, 0.73, 0.76, 0.78, 0.82, 0.86, 0.91, 0.95, 0.98},
      {0.46, 0.50, 0.54, 0.58, 0.61, 0.64, 0.67, 0.70, 0.74, 0.76, 0.79, 0.81, 0.84, 0.87, 0.89, 0.92},
      {0.43, 0.46, 0.50, 0.54, 0.58, 0.60, 0.63, 0.66, 0.69, 0.72, 0.76, 0.79, 0.83, 0.85, 0.88, 0.91},
      {0.40, 0.42, 0.46, 0.50, 0.54, 0.58, 0.61, 0.64, 0.66, 0.69, 0.72, 0.76, 0.79, 0.82, 0.85, 0.88},
      {0.37, 0.39, 0.42, 0.46, 0.50, 0.54, 0.56, 0.59, 0.63, 0.66, 0.69, 0.72, 0.76, 0.78, 0.82, 0.86},
      {0.35, 0.36, 0.40, 0.42, 0.46, 0.50, 0.54, 0.57, 0.59, 0.63, 0.67, 0.70, 0.73, 0.76, 0.79, 0.82},
      {0.31, 0.33, 0.37, 0.39, 0.44, 0.46, 0.50, 0.54, 0.58, 0.61, 0.64, 0.68, 0.71, 0.72, 0.75, 0.79},
      {0.29, 0.30, 0.34, 0.36, 0.41, 0.43, 0.46, 0.50, 0.54, 0.57, 0.59, 0.62, 0.65, 0.68, 0.72, 0.76},
      {0.27, 0.26, 0.31, 0.34, 0.37, 0.41, 0.42, 0.46, 0.50, 0.54, 0.58, 0.61, 0.63, 0.66, 0.69, 0.73},
      {0.24, 0.24, 0.28, 0.31, 0.34, 0.37, 0.39, 0.43, 0.46, 0.50, 0.54, 0.56, 0.59, 0.62, 0.66, 0.69},
      {0.22, 0.21, 0.24, 0.28, 0.31, 0.33, 0.36, 0.41, 0.42, 0.46, 0.50, 0.54, 0.56, 0.58, 0.61, 0.65},
      {0.18, 0.19, 0.21, 0.24, 0.28, 0.30, 0.32, 0.38, 0.39, 0.44, 0.46, 0.50, 0.54, 0.57, 0.58, 0.62},
      {0.14, 0.16, 0.17, 0.21, 0.24, 0.27, 0.29, 0.35, 0.37, 0.41, 0.44, 0.46, 0.50, 0.54, 0.56, 0.59},
      {0.09, 0.13, 0.15, 0.18, 0.22, 0.24, 0.28, 0.32, 0.34, 0.38, 0.42, 0.43, 0.46, 0.50, 0.54, 0.56},
      {0.05, 0.11, 0.12, 0.15, 0.18, 0.21, 0.25, 0.28, 0.31, 0.34, 0.39, 0.42, 0.44, 0.46, 0.50, 0.54},
      {0.02, 0.08, 0.09, 0.12, 0.14, 0.18, 0.21, 0.24, 0.27, 0.31, 0.35, 0.38, 0.41, 0.44, 0.46, 0.50},
  };
  return d;
}

InstanceData reward_gap_instance(double gap) {
  if (!(gap > 0.0) || gap >= kRewardGapLimit) {
    throw ConfigError("reward-gap: gap must lie in (0, " + format_gap(kRewardGapLimit) + "), got " +
                      format_gap(gap));
  }
  InstanceData d;
  d.arm_count = 5;
  for (int i = 0; i < 5; ++i) d.mu.push_back(0.9 - i * gap);
  d.nu = {
      {0.50, 0.53, 0.56, 0.59, 0.62},
      {0.47, 0.50, 0.53, 0.56, 0.59},
      {0.44, 0.47, 0.50, 0.53, 0.56},
      {0.41, 0.44, 0.47, 0.50, 0.53},
      {0.38, 0.41, 0.44, 0.47, 0.50},
  };
  return d;
}

InstanceData dueling_gap_instance(double gap) {
  if (!(gap > 0.0) || gap >= kDuelingGapLimit) {
    throw ConfigError("dueling-gap: gap must lie in (0, " + format_gap(kDuelingGapLimit) + "), got " +
                      format_gap(gap));
  }
  InstanceData d;
  d.arm_count = 5;
  d.mu = {0.9, 0.84, 0.78, 0.72, 0.66};
  d.nu.assign(5, std::vector<double>(5, 0.5));
  for (int k = 0; k < 5; ++k) {
    for (int l = 0; l < 5; ++l) d.nu[k][l] = 0.5 + (l - k) * gap;
  }
  return d;
}

std::vector<std::pair<std::string, std::string>> builtin_catalog() {
  return {
      {"appendix-f-k16", "16 arms, mu from 0.86 down to 0.10, fixed dueling matrix"},
      {"reward-gap:<gap>", "5 arms, mu_k = 0.9 - (k-1) gap, fixed dueling matrix; grid 0.06 0.11 0.16 0.21"},
      {"dueling-gap:<gap>", "5 arms, nu_kl = 0.5 + (l-k) gap, fixed mu; grid 0.03 0.05 0.07 0.09 0.11"},
  };
}

NamedInstance resolve_instance(std::string_view source, std::ostream& warn) {
  const auto colon = source.find(':');
  const std::string_view head = source.substr(0, colon);

  if (source == "appendix-f-k16") {
    return {"appendix-f-k16", BanditInstance::create(appendix_f_k16())};
  }
  if (colon != std::string_view::npos && (head == "reward-gap" || head == "dueling-gap")) {
    const bool reward = head == "reward-gap";
    const double gap = parse_gap(head, source.substr(colon + 1));
    const auto& grid = reward ? kRewardGapGrid : kDuelingGapGrid;
    if (!on_grid(gap, grid)) {
      warn << "warning: " << head << " gap " << format_gap(gap) << " is outside the standard grid\n";
    }
    auto data = reward ? reward_gap_instance(gap) : dueling_gap_instance(gap);
    return {std::string(head) + ":" + format_gap(gap), BanditInstance::create(std::move(data))};
  }
  if (head == "reward-gap" || head == "dueling-gap") {
    throw ConfigError(std::string(head) + " needs a gap, e.g. " + std::string(head) + ":0.05");
  }

  const std::filesystem::path path{std::string(source)};
  auto data = load_instance_file(path);
  return {path.string(), BanditInstance::create(std::move(data))};
}

InstanceData load_instance_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open instance file '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("instance file '" + path.string() + "' is not valid JSON: " + e.what());
  }
  InstanceData d;
  try {
    d.arm_count = j.at("K").get<int>();
    d.mu = j.at("mu").get<std::vector<double>>();
    d.nu = j.at("nu").get<std::vector<std::vector<double>>>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("instance file '" + path.string() + "': " + e.what());
  }
  return d;
}

std::string instance_to_json(const InstanceData& data) {
  nlohmann::json j;
  j["K"] = data.arm_count;
  j["mu"] = data.mu;
  j["nu"] = data.nu;
  return j.dump(2);
}

}  // namespace drmab
