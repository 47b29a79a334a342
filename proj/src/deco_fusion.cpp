#include "drmab/deco_fusion.hpp"

#include <cassert>
#include <cmath>
#include <limits>

#include "drmab/analysis.hpp"

namespace drmab {
namespace deco {

double exploration_threshold(std::int64_t t, double f_of_k) {
  return std::log(static_cast<double>(t)) + f_of_k;
}

double dueling_branch_probability(double alpha) {
  const double a2 = alpha * alpha;
  const double b2 = (1.0 - alpha) * (1.0 - alpha);
  return a2 / (a2 + b2);
}

Decomposition decompose(std::span<const double> info_reward, std::span<const double> info_dueling,
                        std::span<const double> mean_reward, double threshold) {
  const int n = static_cast<int>(info_reward.size());
  Decomposition dec{ArmSet(n), ArmSet(n), ArmId(1), ArmId(1)};

  for (int i = 0; i < n; ++i) {
    if (info_reward[i] <= threshold) dec.dueling_set.insert(ArmId::from_index(i));
  }
  // Never empty when the measures come from refresh_information; hand-built
  // inputs fall back to every arm.
  if (dec.dueling_set.empty()) dec.dueling_set = ArmSet::full(n);

  double lowest = std::numeric_limits<double>::infinity();
  dec.dueling_set.for_each([&](ArmId k) {
    if (info_dueling[k.index()] < lowest) {
      lowest = info_dueling[k.index()];
      dec.dueling_best = k;
    }
  });

  for (int i = 0; i < n; ++i) {
    if (info_dueling[i] - lowest <= threshold) dec.reward_set.insert(ArmId::from_index(i));
  }

  double highest = -std::numeric_limits<double>::infinity();
  dec.reward_set.for_each([&](ArmId k) {
    if (mean_reward[k.index()] > highest) {
      highest = mean_reward[k.index()];
      dec.reward_best = k;
    }
  });
  return dec;
}

Decision decide(const ExplorationSets& sets, const Decomposition& dec, const SufficientStats& stats, double beta,
                double u) {
  Decision out;
  const auto next = sets.explore.smallest();
  if (!next) {
    out.action = {dec.reward_best, {dec.dueling_best, dec.dueling_best}};
    return out;
  }
  const ArmId explore_arm = *next;
  out.explored = explore_arm;

  if (u > beta) {
    out.action = {explore_arm, {dec.reward_best, dec.reward_best}};
    return out;
  }

  out.dueling_branch = true;
  // Opponents in the dueling set that the exploration arm does not beat.
  bool any_unbeaten = false;
  bool best_unbeaten = false;
  ArmId weakest_against;
  double lowest_rate = std::numeric_limits<double>::infinity();
  dec.dueling_set.for_each([&](ArmId k) {
    if (k == explore_arm) return;
    const double rate = stats.win_rate(explore_arm, k);
    if (rate <= 0.5) {
      any_unbeaten = true;
      if (k == dec.dueling_best) best_unbeaten = true;
    }
    if (rate < lowest_rate) {
      lowest_rate = rate;
      weakest_against = k;
    }
  });
  const ArmId comparison = (best_unbeaten || !any_unbeaten) ? dec.dueling_best : weakest_against;
  out.action = {dec.dueling_best, {explore_arm, comparison}};
  return out;
}

void update_exploration_sets(ExplorationSets& sets, std::optional<ArmId> explored, const Decomposition& dec,
                             std::span<const double> info_reward, std::span<const double> info_dueling,
                             double threshold) {
  if (explored) sets.explore.erase(*explored);

  dec.reward_set.for_each([&](ArmId k) {
    if (!sets.explore.contains(k) && info_reward[k.index()] <= threshold) sets.pending.insert(k);
  });
  const double floor = info_dueling[dec.dueling_best.index()];
  dec.dueling_set.for_each([&](ArmId k) {
    if (!sets.explore.contains(k) && info_dueling[k.index()] - floor <= threshold) sets.pending.insert(k);
  });

  if (sets.explore.empty()) {
    std::swap(sets.explore, sets.pending);
    sets.pending.clear();
  }
}

ArmId refresh_information(const SufficientStats& stats, const Decomposition& dec, std::vector<double>& info_reward,
                          std::vector<double>& info_dueling) {
  const int n = stats.arm_count();
  info_reward.resize(static_cast<std::size_t>(n));
  info_dueling.resize(static_cast<std::size_t>(n));

  ArmId reference_best(1);
  double reference = -std::numeric_limits<double>::infinity();
  dec.reward_set.for_each([&](ArmId l) {
    if (stats.mean(l) > reference) {
      reference = stats.mean(l);
      reference_best = l;
    }
  });

  for (int i = 0; i < n; ++i) {
    const ArmId k = ArmId::from_index(i);
    info_reward[i] = static_cast<double>(stats.pulls(k)) * bernoulli_kl(stats.mean(k), reference);
    info_dueling[i] = emp_loglik_dueling(stats, k, dec.dueling_set);
  }
  return reference_best;
}

}  // namespace deco

DecoFusion::DecoFusion(int arm_count, std::int64_t horizon, double alpha, double f_of_k, RngStream rng)
    : Policy(arm_count, horizon),
      alpha_(alpha),
      f_of_k_(f_of_k),
      beta_(deco::dueling_branch_probability(alpha)),
      rng_(rng),
      sets_{ArmSet::full(arm_count), ArmSet(arm_count)},
      decomposition_{ArmSet::full(arm_count), ArmSet::full(arm_count), ArmId(1), ArmId(1)},
      info_reward_(static_cast<std::size_t>(arm_count), 0.0),
      info_dueling_(static_cast<std::size_t>(arm_count), 0.0) {}

Action DecoFusion::decide(std::int64_t t) {
  const double threshold = deco::exploration_threshold(t, f_of_k_);
  decomposition_ = deco::decompose(info_reward_, info_dueling_, stats().means(), threshold);
  const double u = rng_.uniform();
  last_decision_ = deco::decide(sets_, decomposition_, stats(), beta_, u);
  ++decision_rounds_;
  if (last_decision_->dueling_branch) ++dueling_branch_rounds_;
  if (!last_decision_->explored) note_fallback(t);
  return last_decision_->action;
}

void DecoFusion::learn(std::int64_t t, const Action& /*action*/, const RoundOutcome& /*outcome*/) {
  const double threshold = deco::exploration_threshold(t, f_of_k_);
  deco::update_exploration_sets(sets_, last_decision_->explored, decomposition_, info_reward_, info_dueling_,
                                threshold);
  reward_reference_best_ = deco::refresh_information(stats(), decomposition_, info_reward_, info_dueling_);
#ifndef NDEBUG
  const auto problem = invariant_violation();
  assert(problem.empty());
#endif
}

std::string DecoFusion::invariant_violation() const {
  bool overlap = false;
  sets_.explore.for_each([&](ArmId k) { overlap = overlap || sets_.pending.contains(k); });
  if (overlap) return "exploration and auxiliary sets intersect";
  if (decomposition_.reward_set.empty()) return "reward decomposition set is empty";
  if (decomposition_.dueling_set.empty()) return "dueling decomposition set is empty";
  if (!decomposition_.reward_set.contains(decomposition_.dueling_best)) {
    return "dueling-best arm " + to_string(decomposition_.dueling_best) + " missing from the reward set";
  }
  // The next round's dueling set will contain the reference-best arm because its
  // reward information is exactly zero.
  if (info_reward_[reward_reference_best_.index()] != 0.0) {
    return "reference-best arm " + to_string(reward_reference_best_) + " has nonzero reward information";
  }
  return {};
}

}  // namespace drmab
