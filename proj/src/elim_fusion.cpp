#include "drmab/elim_fusion.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "drmab/analysis.hpp"

namespace drmab {
namespace elim {

ArmId least_pulled(const ArmSet& candidates, const SufficientStats& stats) {
  ArmId best;
  auto fewest = std::numeric_limits<std::int64_t>::max();
  candidates.for_each([&](ArmId k) {
    if (stats.pulls(k) < fewest) {
      fewest = stats.pulls(k);
      best = k;
    }
  });
  return best;
}

DuelPair least_dueled_pair(const ArmSet& candidates, const SufficientStats& stats) {
  if (candidates.size() < 2) throw std::invalid_argument("least_dueled_pair needs two candidates");
  DuelPair best;
  auto fewest = std::numeric_limits<std::int64_t>::max();
  candidates.for_each([&](ArmId k) {
    candidates.for_each([&](ArmId l) {
      if (k != l && stats.duels(k, l) < fewest) {
        fewest = stats.duels(k, l);
        best = {k, l};
      }
    });
  });
  return best;
}

ArmSet surviving_arms(const ArmSet& candidates, const SufficientStats& stats, double log_term, Clause clause,
                      bool* skipped) {
  const bool use_reward = (static_cast<unsigned>(clause) & static_cast<unsigned>(Clause::reward)) != 0;
  const bool use_dueling = (static_cast<unsigned>(clause) & static_cast<unsigned>(Clause::dueling)) != 0;
  const double scale = std::sqrt(2.0 * log_term);
  auto radius = [scale](std::int64_t n) { return scale / std::sqrt(static_cast<double>(n)); };

  double lower_of_best = -std::numeric_limits<double>::infinity();
  if (use_reward) {
    ArmId best;
    double top = -std::numeric_limits<double>::infinity();
    candidates.for_each([&](ArmId l) {
      if (stats.mean(l) > top) {
        top = stats.mean(l);
        best = l;
      }
    });
    lower_of_best = top - radius(stats.pulls(best));
  }

  ArmSet survivors = candidates;
  candidates.for_each([&](ArmId k) {
    bool out = false;
    if (use_reward && stats.pulls(k) > 0) {
      out = stats.mean(k) + radius(stats.pulls(k)) <= lower_of_best;
    }
    if (!out && use_dueling) {
      candidates.for_each([&](ArmId l) {
        if (out || l == k || stats.duels(k, l) == 0) return;
        out = stats.win_rate(k, l) + radius(stats.duels(k, l)) < 0.5;
      });
    }
    if (out) survivors.erase(k);
  });
  if (skipped) *skipped = survivors.empty();
  return survivors.empty() ? candidates : survivors;
}

}  // namespace elim

ElimFusion::ElimFusion(int arm_count, std::int64_t horizon, double delta)
    : Policy(arm_count, horizon), delta_(delta), candidates_(ArmSet::full(arm_count)) {}

ElimFusion::Phase ElimFusion::phase(std::int64_t t) const {
  if (in_warmup(t)) return Phase::warmup;
  return candidates_.size() > 1 ? Phase::explore : Phase::exploit;
}

Action ElimFusion::decide(std::int64_t /*t*/) {
  if (candidates_.size() > 1) {
    return {elim::least_pulled(candidates_, stats()), elim::least_dueled_pair(candidates_, stats())};
  }
  const ArmId survivor = *candidates_.smallest();
  return {survivor, {survivor, survivor}};
}

void ElimFusion::learn(std::int64_t t, const Action& /*action*/, const RoundOutcome& /*outcome*/) {
  if (candidates_.size() <= 1) return;
  bool skipped = false;
  candidates_ = elim::surviving_arms(candidates_, stats(), confidence_log_term(t, arm_count(), delta_),
                                     elim::Clause::both, &skipped);
  if (skipped) note_fallback(t);
}

ElimNoFusion::ElimNoFusion(int arm_count, std::int64_t horizon, double delta)
    : Policy(arm_count, horizon),
      delta_(delta),
      reward_candidates_(ArmSet::full(arm_count)),
      dueling_candidates_(ArmSet::full(arm_count)) {}

Action ElimNoFusion::decide(std::int64_t /*t*/) {
  Action a;
  a.reward_arm = reward_candidates_.size() > 1 ? elim::least_pulled(reward_candidates_, stats())
                                               : *reward_candidates_.smallest();
  if (dueling_candidates_.size() > 1) {
    a.duel = elim::least_dueled_pair(dueling_candidates_, stats());
  } else {
    const ArmId survivor = *dueling_candidates_.smallest();
    a.duel = {survivor, survivor};
  }
  return a;
}

void ElimNoFusion::learn(std::int64_t t, const Action& /*action*/, const RoundOutcome& /*outcome*/) {
  const double log_term = confidence_log_term(t, arm_count(), delta_);
  bool skipped = false;
  if (reward_candidates_.size() > 1) {
    reward_candidates_ = elim::surviving_arms(reward_candidates_, stats(), log_term, elim::Clause::reward, &skipped);
    if (skipped) note_fallback(t);
  }
  if (dueling_candidates_.size() > 1) {
    dueling_candidates_ =
        elim::surviving_arms(dueling_candidates_, stats(), log_term, elim::Clause::dueling, &skipped);
    if (skipped) note_fallback(t);
  }
}

}  // namespace drmab
