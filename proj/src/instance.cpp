#include "drmab/instance.hpp"

#include <cmath>
#include <sstream>

#include "drmab/errors.hpp"

namespace drmab {
namespace {

std::string pair_label(std::size_t k, std::size_t l) {
  return "(" + std::to_string(k + 1) + "," + std::to_string(l + 1) + ")";
}

bool dimensions_agree(const InstanceData& data) {
  if (data.arm_count < 0) return false;
  const auto k = static_cast<std::size_t>(data.arm_count);
  if (data.mu.size() != k || data.nu.size() != k) return false;
  for (const auto& row : data.nu) {
    if (row.size() != k) return false;
  }
  return true;
}

}  // namespace

std::string ValidationReport::summary() const {
  std::ostringstream out;
  for (const auto& v : violations) out << v.message << '\n';
  return out.str();
}

ValidationReport validate_instance(const InstanceData& data) {
  ValidationReport report;
  auto add = [&](ViolationKind kind, std::string message) {
    report.violations.push_back({kind, std::move(message)});
  };

  if (data.arm_count < 2) {
    add(ViolationKind::arm_count, "arm count K=" + std::to_string(data.arm_count) + " must be at least 2");
  }
  if (!dimensions_agree(data)) {
    std::ostringstream msg;
    msg << "dimension mismatch: K=" << data.arm_count << ", mu has " << data.mu.size() << " entries, nu has "
        << data.nu.size() << " rows";
    for (std::size_t r = 0; r < data.nu.size(); ++r) {
      if (data.nu[r].size() != static_cast<std::size_t>(std::max(data.arm_count, 0))) {
        msg << "; row " << r + 1 << " has " << data.nu[r].size() << " entries";
      }
    }
    add(ViolationKind::dimension, msg.str());
    return report;
  }

  const auto n = static_cast<std::size_t>(data.arm_count);
  for (std::size_t k = 0; k < n; ++k) {
    if (!(data.mu[k] > 0.0 && data.mu[k] < 1.0)) {
      add(ViolationKind::range, "mu_" + std::to_string(k + 1) + " outside (0,1)");
    }
    for (std::size_t l = 0; l < n; ++l) {
      if (!(data.nu[k][l] > 0.0 && data.nu[k][l] < 1.0)) {
        add(ViolationKind::range, "nu at " + pair_label(k, l) + " outside (0,1)");
      }
    }
  }
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (!(data.mu[k] > data.mu[k + 1])) {
      add(ViolationKind::reward_order, "reward means not strictly descending at arms " + std::to_string(k + 1) +
                                           "," + std::to_string(k + 2));
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (std::abs(data.nu[k][k] - 0.5) > kProbabilityTolerance) {
      add(ViolationKind::diagonal, "diagonal at " + pair_label(k, k) + " is not 0.5");
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = k + 1; l < n; ++l) {
      if (std::abs(data.nu[k][l] + data.nu[l][k] - 1.0) > kProbabilityTolerance) {
        add(ViolationKind::antisymmetry, "antisymmetry at " + pair_label(k, l));
      }
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) {
      if (k == l) continue;
      const bool beats = data.nu[k][l] > 0.5 + kProbabilityTolerance;
      if (beats != (data.mu[k] > data.mu[l])) {
        add(ViolationKind::order_consistency, "order consistency at " + pair_label(k, l));
      }
    }
  }
  return report;
}

BanditInstance BanditInstance::create(InstanceData data) {
  const auto report = validate_instance(data);
  if (!report.ok()) throw ConfigError("invalid instance:\n" + report.summary());
  return BanditInstance(data);
}

BanditInstance BanditInstance::unchecked(InstanceData data) {
  if (data.arm_count < 1 || !dimensions_agree(data)) throw ConfigError("instance dimensions do not agree with K");
  return BanditInstance(data);
}

BanditInstance::BanditInstance(const InstanceData& data)
    : arm_count_(data.arm_count),
      mu_(data.mu),
      nu_(static_cast<std::size_t>(data.arm_count) * data.arm_count),
      reward_gap_(data.arm_count),
      dueling_gap_(data.arm_count) {
  const auto n = static_cast<std::size_t>(arm_count_);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) nu_[k * n + l] = data.nu[k][l];
  }
  for (std::size_t k = 0; k < n; ++k) {
    reward_gap_[k] = k == 0 ? 0.0 : mu_[0] - mu_[k];
    dueling_gap_[k] = k == 0 ? 0.0 : nu_[k] - 0.5;
  }
}

InstanceData BanditInstance::data() const {
  InstanceData out;
  out.arm_count = arm_count_;
  out.mu = mu_;
  const auto n = static_cast<std::size_t>(arm_count_);
  out.nu.assign(n, std::vector<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) out.nu[k][l] = nu_[k * n + l];
  }
  return out;
}

}  // namespace drmab
