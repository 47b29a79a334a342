#include "drmab/environment.hpp"

namespace drmab {

RoundOutcome sample_round(const BanditInstance& inst, RngStream& reward_rng, RngStream& duel_rng,
                          const Action& action) {
  RoundOutcome out;
  out.reward = reward_rng.bernoulli(inst.mu(action.reward_arm)) ? 1 : 0;
  const auto [first, second] = action.duel;
  // nu_{k,k} = 1/2 by definition, whatever the matrix holds.
  const double p_first = first == second ? 0.5 : inst.nu(first, second);
  out.duel_winner = duel_rng.bernoulli(p_first) ? first : second;
  return out;
}

}  // namespace drmab
