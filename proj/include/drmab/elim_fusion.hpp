#pragma once

#include <cstdint>
#include <string_view>

#include "drmab/arm_set.hpp"
#include "drmab/policy.hpp"

namespace drmab {

namespace elim {

enum class Clause : unsigned { reward = 1U, dueling = 2U, both = 3U };

// argmin over candidates of N_k, smallest index on ties.
ArmId least_pulled(const ArmSet& candidates, const SufficientStats& stats);

// argmin over ordered pairs (k, l) of candidates, k != l, of M_{k,l};
// lexicographically smallest pair on ties. Needs at least two candidates.
DuelPair least_dueled_pair(const ArmSet& candidates, const SufficientStats& stats);

// One elimination pass with log_term = ln(K t / delta). An arm k leaves when
//   dueling: some other candidate l has nu_hat_{k,l} + CR_{k,l} < 1/2, or
//   reward:  mu_hat_k + CR_k <= mu_hat_best - CR_best,
// with best = argmax of mu_hat over the candidates. Removal is simultaneous.
// A pass that would remove every candidate is skipped and reported through
// `skipped`.
ArmSet surviving_arms(const ArmSet& candidates, const SufficientStats& stats, double log_term, Clause clause,
                      bool* skipped = nullptr);

}  // namespace elim

// Elimination with one candidate set shared by both feedback channels.
class ElimFusion final : public Policy {
 public:
  enum class Phase { warmup, explore, exploit };

  ElimFusion(int arm_count, std::int64_t horizon, double delta);

  std::string_view name() const override { return "ElimFusion"; }

  const ArmSet& candidates() const { return candidates_; }
  double delta() const { return delta_; }
  Phase phase(std::int64_t t) const;

 protected:
  Action decide(std::int64_t t) override;
  void learn(std::int64_t t, const Action& action, const RoundOutcome& outcome) override;

 private:
  double delta_;
  ArmSet candidates_;
};

// Baseline: independent reward-side and dueling-side elimination, nothing shared.
class ElimNoFusion final : public Policy {
 public:
  ElimNoFusion(int arm_count, std::int64_t horizon, double delta);

  std::string_view name() const override { return "ElimNoFusion"; }

  const ArmSet& reward_candidates() const { return reward_candidates_; }
  const ArmSet& dueling_candidates() const { return dueling_candidates_; }

 protected:
  Action decide(std::int64_t t) override;
  void learn(std::int64_t t, const Action& action, const RoundOutcome& outcome) override;

 private:
  double delta_;
  ArmSet reward_candidates_;
  ArmSet dueling_candidates_;
};

}  // namespace drmab
