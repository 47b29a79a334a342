#pragma once

#include <cstdint>
#include <vector>

#include "drmab/arm_set.hpp"
#include "drmab/instance.hpp"
#include "drmab/stats.hpp"

namespace drmab {

// Arguments of bernoulli_kl are clamped into [kKlClamp, 1 - kKlClamp] so that
// empirical estimates of exactly 0 or 1 give finite divergences.
inline constexpr double kKlClamp = 1e-12;

// KL divergence between Bernoulli(p) and Bernoulli(q), natural log.
double bernoulli_kl(double p, double q);

// ln(K t / delta)
double confidence_log_term(std::int64_t t, int arm_count, double delta);

// sqrt(2 ln(K t / delta) / n). Requires n >= 1.
double confidence_radius(std::int64_t t, int arm_count, double delta, std::int64_t n);
double confidence_radius(double log_term, std::int64_t n);

// N_k * kl(mu_hat_k, max_{l in ref_set} mu_hat_l)
double emp_loglik_reward(const SufficientStats& stats, ArmId k, const ArmSet& ref_set);

// sum over l in ref_set with nu_hat_{k,l} < 1/2 of M_{k,l} * kl(nu_hat_{k,l}, 1/2)
double emp_loglik_dueling(const SufficientStats& stats, ArmId k, const ArmSet& ref_set);

struct ArmBoundTerms {
  ArmId arm;
  double reward_term = 0.0;   // alpha * gap_R / kl(mu_k, mu_1)
  double dueling_term = 0.0;  // min over l < k of (1 - alpha)(gap_D_k + gap_D_l) / kl(nu_{k,l}, 1/2)
  double min_term = 0.0;
  ArmId best_competitor;      // minimising l, smallest index on ties
  double simplified_term = 0.0;
};

// Coefficients of log T in the general and simplified lower bounds. The
// universal constant of the simplified bound is not represented.
struct LowerBoundReport {
  double alpha = 0.0;
  std::vector<ArmBoundTerms> per_arm;  // arms 2..K
  double total_general = 0.0;
  double total_simplified = 0.0;
  // Arms whose best competitor is not arm 1; the simplified bound assumes none.
  std::vector<ArmId> competitor_not_optimal;
};

LowerBoundReport lower_bound_general(const BanditInstance& inst, double alpha);

struct SimplifiedBound {
  std::vector<double> per_arm;  // arms 2..K: 1 / max{gap_R / alpha, gap_D / (1 - alpha)}
  double total = 0.0;
  std::vector<ArmId> competitor_not_optimal;
};

// x / 0 is taken as +inf inside the max, so alpha in {0, 1} gives zero terms.
SimplifiedBound lower_bound_simplified(const BanditInstance& inst, double alpha);

// Per-arm information collected by a run: N_k kl(mu_k, mu_1) plus the sum over
// l < k of M_{k,l} kl(nu_{k,l}, 1/2), for arms 2..K. Consistent policies drive
// each entry to at least about log T; informational only.
std::vector<double> trajectory_information(const BanditInstance& inst, const SufficientStats& stats);

// Best competitor of arm k > 1: argmin over l < k of (gap_D_k + gap_D_l) / kl(nu_{k,l}, 1/2).
ArmId best_competitor(const BanditInstance& inst, ArmId k);

}  // namespace drmab
