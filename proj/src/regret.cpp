#include "drmab/regret.hpp"

namespace drmab {

RegretComponents regret_components(const BanditInstance& inst, const Action& action) {
  return {inst.reward_gap(action.reward_arm),
          0.5 * (inst.dueling_gap(action.duel.first) + inst.dueling_gap(action.duel.second))};
}

double instantaneous_regret(const BanditInstance& inst, double alpha, const Action& action) {
  const auto c = regret_components(inst, action);
  return alpha * c.reward + (1.0 - alpha) * c.dueling;
}

RegretLedger::RegretLedger(double alpha) : alpha_(alpha) {}

void RegretLedger::accumulate(const BanditInstance& inst, const Action& action) {
  accumulate(regret_components(inst, action));
}

void RegretLedger::accumulate(const RegretComponents& step) {
  cum_reward_ += step.reward;
  cum_dueling_ += step.dueling;
  cum_total_ = alpha_ * cum_reward_ + (1.0 - alpha_) * cum_dueling_;
}

}  // namespace drmab
