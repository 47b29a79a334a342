#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>

namespace drmab {

// Arms are labelled 1..K. Arm 1 is the optimal arm of a valid instance.
struct ArmId {
  int value = 1;

  constexpr ArmId() = default;
  constexpr explicit ArmId(int v) : value(v) {}

  constexpr std::size_t index() const { return static_cast<std::size_t>(value - 1); }
  static constexpr ArmId from_index(std::size_t i) { return ArmId(static_cast<int>(i) + 1); }

  constexpr auto operator<=>(const ArmId&) const = default;
};

// Ordered duel pair. Self-duels (k, k) are allowed.
struct DuelPair {
  ArmId first;
  ArmId second;

  constexpr bool is_self() const { return first == second; }
  constexpr auto operator<=>(const DuelPair&) const = default;
};

struct Action {
  ArmId reward_arm;
  DuelPair duel;

  constexpr auto operator<=>(const Action&) const = default;
};

struct RoundOutcome {
  int reward = 0;  // 0 or 1
  ArmId duel_winner;
};

std::string to_string(ArmId arm);
std::string to_string(const Action& action);

}  // namespace drmab
