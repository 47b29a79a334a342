#include "drmab/types.hpp"

namespace drmab {

std::string to_string(ArmId arm) { return std::to_string(arm.value); }

std::string to_string(const Action& action) {
  return "{arm " + to_string(action.reward_arm) + ", duel (" + to_string(action.duel.first) + "," +
         to_string(action.duel.second) + ")}";
}

}  // namespace drmab
