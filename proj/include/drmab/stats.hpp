#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "drmab/types.hpp"

namespace drmab {

// Per-arm reward statistics and per-pair duel statistics shared by every policy.
//
// Duel counts are symmetric (M_{k,l} = M_{l,k}) and win rates are kept as
// integer win counts, so nu_hat_{k,l} + nu_hat_{l,k} = 1 up to one rounding.
// Self-duels carry no pairwise information and are not recorded.
class SufficientStats {
 public:
  explicit SufficientStats(int arm_count);

  int arm_count() const { return arm_count_; }

  std::int64_t pulls(ArmId k) const { return pulls_[k.index()]; }
  double mean(ArmId k) const { return mean_[k.index()]; }
  std::span<const double> means() const { return mean_; }

  std::int64_t duels(ArmId k, ArmId l) const { return duels_[cell(k, l)]; }
  std::int64_t wins(ArmId k, ArmId l) const { return wins_[cell(k, l)]; }
  // 0 while the pair has never been duelled.
  double win_rate(ArmId k, ArmId l) const { return win_rate_[cell(k, l)]; }

  // M_{k,l} * kl(nu_hat_{k,l}, 1/2) if nu_hat_{k,l} < 1/2, otherwise 0. Cached
  // per pair and refreshed whenever the pair is duelled.
  double loss_evidence(ArmId k, ArmId l) const { return evidence_[cell(k, l)]; }

  void record_reward(ArmId k, int reward);
  void record_duel(ArmId first, ArmId second, ArmId winner);
  void update(const Action& action, const RoundOutcome& outcome);

 private:
  std::size_t cell(ArmId k, ArmId l) const { return k.index() * static_cast<std::size_t>(arm_count_) + l.index(); }
  void refresh_pair(std::size_t kl_cell);

  int arm_count_;
  std::vector<std::int64_t> pulls_;
  std::vector<std::int64_t> reward_sum_;
  std::vector<double> mean_;
  std::vector<std::int64_t> duels_;
  std::vector<std::int64_t> wins_;
  std::vector<double> win_rate_;
  std::vector<double> evidence_;
};

}  // namespace drmab
