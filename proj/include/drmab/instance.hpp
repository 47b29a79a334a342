#pragma once

#include <string>
#include <vector>

#include "drmab/types.hpp"

namespace drmab {

// Unvalidated instance description as read from a file or built in code.
struct InstanceData {
  int arm_count = 0;
  std::vector<double> mu;
  std::vector<std::vector<double>> nu;  // nu[k][l]: probability that arm k+1 beats arm l+1
};

enum class ViolationKind {
  arm_count,
  dimension,
  range,
  reward_order,
  diagonal,
  antisymmetry,
  order_consistency,
};

struct Violation {
  ViolationKind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::string summary() const;  // one violation per line
};

// Tolerance used for the diagonal and antisymmetry checks; instance files carry
// two-decimal probabilities that do not sum to exactly 1 in binary.
inline constexpr double kProbabilityTolerance = 1e-9;

ValidationReport validate_instance(const InstanceData& data);

// Immutable ground truth of a dueling-reward bandit. Reward and dueling gaps are
// precomputed on construction. Safe to share across threads.
class BanditInstance {
 public:
  // Throws ConfigError with the full violation list when `data` is invalid.
  static BanditInstance create(InstanceData data);

  // Skips validation. Only dimensions are checked; intended for test fixtures
  // with degenerate means.
  static BanditInstance unchecked(InstanceData data);

  int arm_count() const { return arm_count_; }
  double mu(ArmId k) const { return mu_[k.index()]; }
  double nu(ArmId k, ArmId l) const { return nu_[k.index() * arm_count_ + l.index()]; }

  // mu_1 - mu_k
  double reward_gap(ArmId k) const { return reward_gap_[k.index()]; }
  // nu_{1,k} - 1/2
  double dueling_gap(ArmId k) const { return dueling_gap_[k.index()]; }

  const std::vector<double>& means() const { return mu_; }
  InstanceData data() const;

 private:
  explicit BanditInstance(const InstanceData& data);

  int arm_count_;
  std::vector<double> mu_;
  std::vector<double> nu_;  // row-major K x K
  std::vector<double> reward_gap_;
  std::vector<double> dueling_gap_;
};

}  // namespace drmab
