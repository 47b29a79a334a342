#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "drmab/arm_set.hpp"
#include "drmab/policy.hpp"

namespace drmab {

// Two independent minimum-empirical-divergence learners: a DMED-style list for
// the reward channel and an RMED1-style list for the dueling channel. Each list
// is traversed in ascending index and rebuilt from its pending set once empty.
class MedNoFusion final : public Policy {
 public:
  MedNoFusion(int arm_count, std::int64_t horizon, double f_of_k);

  std::string_view name() const override { return "MEDNoFusion"; }

  double f_of_k() const { return f_of_k_; }
  const ArmSet& reward_list() const { return reward_list_; }
  const ArmSet& reward_pending() const { return reward_pending_; }
  const ArmSet& dueling_list() const { return dueling_list_; }
  const ArmSet& dueling_pending() const { return dueling_pending_; }
  const std::vector<double>& info_reward() const { return info_reward_; }
  const std::vector<double>& info_dueling() const { return info_dueling_; }

 protected:
  Action decide(std::int64_t t) override;
  void learn(std::int64_t t, const Action& action, const RoundOutcome& outcome) override;

 private:
  void refresh_information();

  double f_of_k_;
  ArmSet reward_list_;
  ArmSet reward_pending_;
  ArmSet dueling_list_;
  ArmSet dueling_pending_;
  std::vector<double> info_reward_;
  std::vector<double> info_dueling_;
  ArmId dueling_best_{1};
  ArmId reward_pick_{1};
  ArmId dueling_pick_{1};
};

}  // namespace drmab
