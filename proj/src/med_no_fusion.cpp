#include "drmab/med_no_fusion.hpp"

#include <algorithm>
#include <limits>

#include "drmab/analysis.hpp"
#include "drmab/deco_fusion.hpp"

namespace drmab {

MedNoFusion::MedNoFusion(int arm_count, std::int64_t horizon, double f_of_k)
    : Policy(arm_count, horizon),
      f_of_k_(f_of_k),
      reward_list_(ArmSet::full(arm_count)),
      reward_pending_(arm_count),
      dueling_list_(ArmSet::full(arm_count)),
      dueling_pending_(arm_count),
      info_reward_(static_cast<std::size_t>(arm_count), 0.0),
      info_dueling_(static_cast<std::size_t>(arm_count), 0.0) {}

void MedNoFusion::refresh_information() {
  const auto& s = stats();
  const int n = arm_count();
  const auto means = s.means();
  const double best_mean = *std::max_element(means.begin(), means.end());
  double lowest = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const ArmId k = ArmId::from_index(i);
    info_reward_[i] = static_cast<double>(s.pulls(k)) * bernoulli_kl(means[i], best_mean);
    double sum = 0.0;
    for (int j = 0; j < n; ++j) sum += s.loss_evidence(k, ArmId::from_index(j));
    info_dueling_[i] = sum;
    if (sum < lowest) {
      lowest = sum;
      dueling_best_ = k;
    }
  }
}

Action MedNoFusion::decide(std::int64_t /*t*/) {
  refresh_information();
  reward_pick_ = *reward_list_.smallest();
  dueling_pick_ = *dueling_list_.smallest();

  // Comparison arm: the current dueling leader unless some arm the explored arm
  // does not beat exists and the leader is not among them.
  const auto& s = stats();
  bool any_unbeaten = false;
  bool leader_unbeaten = false;
  ArmId weakest_against = dueling_best_;
  double lowest_rate = std::numeric_limits<double>::infinity();
  for (int j = 0; j < arm_count(); ++j) {
    const ArmId k = ArmId::from_index(j);
    if (k == dueling_pick_) continue;
    const double rate = s.win_rate(dueling_pick_, k);
    if (rate <= 0.5) {
      any_unbeaten = true;
      if (k == dueling_best_) leader_unbeaten = true;
    }
    if (rate < lowest_rate) {
      lowest_rate = rate;
      weakest_against = k;
    }
  }
  const ArmId comparison = (leader_unbeaten || !any_unbeaten) ? dueling_best_ : weakest_against;
  return {reward_pick_, {dueling_pick_, comparison}};
}

void MedNoFusion::learn(std::int64_t t, const Action& /*action*/, const RoundOutcome& /*outcome*/) {
  const double threshold = deco::exploration_threshold(t, f_of_k_);

  reward_list_.erase(reward_pick_);
  for (int i = 0; i < arm_count(); ++i) {
    const ArmId k = ArmId::from_index(i);
    if (!reward_list_.contains(k) && info_reward_[i] <= threshold) reward_pending_.insert(k);
  }
  if (reward_list_.empty()) {
    std::swap(reward_list_, reward_pending_);
    reward_pending_.clear();
  }

  dueling_list_.erase(dueling_pick_);
  const double floor = info_dueling_[dueling_best_.index()];
  for (int i = 0; i < arm_count(); ++i) {
    const ArmId k = ArmId::from_index(i);
    if (!dueling_list_.contains(k) && info_dueling_[i] - floor <= threshold) dueling_pending_.insert(k);
  }
  if (dueling_list_.empty()) {
    std::swap(dueling_list_, dueling_pending_);
    dueling_pending_.clear();
  }
}

}  // namespace drmab
