#pragma once

#include <cstdint>

#include "drmab/instance.hpp"
#include "drmab/rng.hpp"
#include "drmab/types.hpp"

namespace drmab {

// Draws one round of feedback. The reward and the duel use separate streams.
RoundOutcome sample_round(const BanditInstance& inst, RngStream& reward_rng, RngStream& duel_rng,
                          const Action& action);

// Per-repetition environment owning its two feedback streams.
class Environment {
 public:
  Environment(const BanditInstance& inst, std::uint64_t base_seed, std::uint64_t rep)
      : inst_(&inst), reward_rng_(base_seed, rep, Channel::reward), duel_rng_(base_seed, rep, Channel::duel) {}

  RoundOutcome step(const Action& action) { return sample_round(*inst_, reward_rng_, duel_rng_, action); }
  const BanditInstance& instance() const { return *inst_; }

 private:
  const BanditInstance* inst_;
  RngStream reward_rng_;
  RngStream duel_rng_;
};

}  // namespace drmab
