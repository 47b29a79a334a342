#include "drmab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace drmab {

double bernoulli_kl(double p, double q) {
  p = std::clamp(p, kKlClamp, 1.0 - kKlClamp);
  q = std::clamp(q, kKlClamp, 1.0 - kKlClamp);
  if (p == q) return 0.0;
  const double value = p * std::log(p / q) + (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
  return std::max(value, 0.0);
}

double confidence_log_term(std::int64_t t, int arm_count, double delta) {
  return std::log(static_cast<double>(arm_count) * static_cast<double>(t) / delta);
}

double confidence_radius(double log_term, std::int64_t n) {
  return std::sqrt(2.0 * log_term / static_cast<double>(n));
}

double confidence_radius(std::int64_t t, int arm_count, double delta, std::int64_t n) {
  return confidence_radius(confidence_log_term(t, arm_count, delta), n);
}

double emp_loglik_reward(const SufficientStats& stats, ArmId k, const ArmSet& ref_set) {
  double reference = -std::numeric_limits<double>::infinity();
  ref_set.for_each([&](ArmId l) { reference = std::max(reference, stats.mean(l)); });
  return static_cast<double>(stats.pulls(k)) * bernoulli_kl(stats.mean(k), reference);
}

double emp_loglik_dueling(const SufficientStats& stats, ArmId k, const ArmSet& ref_set) {
  double total = 0.0;
  ref_set.for_each([&](ArmId l) { total += stats.loss_evidence(k, l); });
  return total;
}

namespace {

double dueling_ratio(const BanditInstance& inst, ArmId k, ArmId l) {
  return (inst.dueling_gap(k) + inst.dueling_gap(l)) / bernoulli_kl(inst.nu(k, l), 0.5);
}

double safe_ratio(double gap, double weight) {
  return weight > 0.0 ? gap / weight : std::numeric_limits<double>::infinity();
}

}  // namespace

ArmId best_competitor(const BanditInstance& inst, ArmId k) {
  ArmId best(1);
  double best_ratio = dueling_ratio(inst, k, best);
  for (int l = 2; l < k.value; ++l) {
    const double r = dueling_ratio(inst, k, ArmId(l));
    if (r < best_ratio) {
      best_ratio = r;
      best = ArmId(l);
    }
  }
  return best;
}

SimplifiedBound lower_bound_simplified(const BanditInstance& inst, double alpha) {
  SimplifiedBound out;
  for (int k = 2; k <= inst.arm_count(); ++k) {
    const ArmId arm(k);
    const double denom =
        std::max(safe_ratio(inst.reward_gap(arm), alpha), safe_ratio(inst.dueling_gap(arm), 1.0 - alpha));
    const double term = 1.0 / denom;  // 1 / inf = 0
    out.per_arm.push_back(term);
    out.total += term;
    if (best_competitor(inst, arm) != ArmId(1)) out.competitor_not_optimal.push_back(arm);
  }
  return out;
}

LowerBoundReport lower_bound_general(const BanditInstance& inst, double alpha) {
  LowerBoundReport report;
  report.alpha = alpha;
  const auto simplified = lower_bound_simplified(inst, alpha);
  for (int k = 2; k <= inst.arm_count(); ++k) {
    const ArmId arm(k);
    ArmBoundTerms terms;
    terms.arm = arm;
    terms.reward_term = alpha * inst.reward_gap(arm) / bernoulli_kl(inst.mu(arm), inst.mu(ArmId(1)));
    terms.best_competitor = best_competitor(inst, arm);
    terms.dueling_term = (1.0 - alpha) * dueling_ratio(inst, arm, terms.best_competitor);
    terms.min_term = std::min(terms.reward_term, terms.dueling_term);
    terms.simplified_term = simplified.per_arm[static_cast<std::size_t>(k - 2)];
    report.total_general += terms.min_term;
    report.per_arm.push_back(terms);
  }
  report.total_simplified = simplified.total;
  report.competitor_not_optimal = simplified.competitor_not_optimal;
  return report;
}

std::vector<double> trajectory_information(const BanditInstance& inst, const SufficientStats& stats) {
  const ArmId best(1);
  std::vector<double> out;
  for (int i = 1; i < inst.arm_count(); ++i) {
    const ArmId k = ArmId::from_index(i);
    double v = static_cast<double>(stats.pulls(k)) * bernoulli_kl(inst.mu(k), inst.mu(best));
    for (int j = 0; j < i; ++j) {
      const ArmId l = ArmId::from_index(j);
      v += static_cast<double>(stats.duels(k, l)) * bernoulli_kl(inst.nu(k, l), 0.5);
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace drmab
