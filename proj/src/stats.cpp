#include "drmab/stats.hpp"

#include "drmab/analysis.hpp"

namespace drmab {

SufficientStats::SufficientStats(int arm_count)
    : arm_count_(arm_count),
      pulls_(arm_count, 0),
      reward_sum_(arm_count, 0),
      mean_(arm_count, 0.0),
      duels_(static_cast<std::size_t>(arm_count) * arm_count, 0),
      wins_(duels_.size(), 0),
      win_rate_(duels_.size(), 0.0),
      evidence_(duels_.size(), 0.0) {}

void SufficientStats::record_reward(ArmId k, int reward) {
  const auto i = k.index();
  ++pulls_[i];
  reward_sum_[i] += reward;
  mean_[i] = static_cast<double>(reward_sum_[i]) / static_cast<double>(pulls_[i]);
}

void SufficientStats::record_duel(ArmId first, ArmId second, ArmId winner) {
  if (first == second) return;
  const auto forward = cell(first, second);
  const auto backward = cell(second, first);
  ++duels_[forward];
  ++duels_[backward];
  ++wins_[winner == first ? forward : backward];
  refresh_pair(forward);
  refresh_pair(backward);
}

void SufficientStats::update(const Action& action, const RoundOutcome& outcome) {
  record_reward(action.reward_arm, outcome.reward);
  record_duel(action.duel.first, action.duel.second, outcome.duel_winner);
}

void SufficientStats::refresh_pair(std::size_t c) {
  const double m = static_cast<double>(duels_[c]);
  win_rate_[c] = static_cast<double>(wins_[c]) / m;
  evidence_[c] = win_rate_[c] < 0.5 ? m * bernoulli_kl(win_rate_[c], 0.5) : 0.0;
}

}  // namespace drmab
