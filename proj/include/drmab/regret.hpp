#pragma once

#include "drmab/instance.hpp"
#include "drmab/types.hpp"

namespace drmab {

// Unweighted per-round regret of one action against ground truth.
struct RegretComponents {
  double reward = 0.0;   // gap of the pulled arm
  double dueling = 0.0;  // mean gap of the two duelled arms
};

RegretComponents regret_components(const BanditInstance& inst, const Action& action);

// alpha * reward + (1 - alpha) * dueling
double instantaneous_regret(const BanditInstance& inst, double alpha, const Action& action);

class RegretLedger {
 public:
  explicit RegretLedger(double alpha);

  void accumulate(const BanditInstance& inst, const Action& action);
  void accumulate(const RegretComponents& step);

  double alpha() const { return alpha_; }
  double cum_reward() const { return cum_reward_; }
  double cum_dueling() const { return cum_dueling_; }
  // Recomputed from the two unweighted sums after each update, so the weighted
  // identity holds to a single rounding.
  double cum_total() const { return cum_total_; }

 private:
  double alpha_;
  double cum_reward_ = 0.0;
  double cum_dueling_ = 0.0;
  double cum_total_ = 0.0;
};

}  // namespace drmab
