#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "drmab/rng.hpp"
#include "drmab/stats.hpp"
#include "drmab/types.hpp"

namespace drmab {

enum class PolicyKind { elim_fusion, deco_fusion, elim_no_fusion, med_no_fusion };

std::string_view policy_name(PolicyKind kind);
// Accepts the display names (e.g. "DecoFusion"), case-insensitively.
std::optional<PolicyKind> parse_policy_kind(std::string_view name);
const std::vector<PolicyKind>& all_policy_kinds();

// Confidence parameter of the elimination policies.
struct DeltaRule {
  enum class Kind { fixed, inverse_horizon, inverse_k2_t2 };
  Kind kind = Kind::inverse_horizon;
  double value = 0.0;  // used by Kind::fixed

  double resolve(int arm_count, std::int64_t horizon) const;
  std::string describe() const;
  static std::optional<DeltaRule> parse(std::string_view text);
};

struct PolicyParams {
  double alpha = 0.5;
  DeltaRule delta;
  // f(K) = f_coeff * K^f_exponent
  double f_coeff = 0.05;
  double f_exponent = 1.01;

  double f_of_k(int arm_count) const;
};

// Number of warm-up rounds: every ordered pair (k, l), k != l, once.
constexpr std::int64_t warmup_length(int arm_count) {
  return static_cast<std::int64_t>(arm_count) * (arm_count - 1);
}

// Warm-up round `slot` in [0, K(K-1)): the slot-th ordered pair in lexicographic
// order, and arm (slot mod K) + 1 for reward. Throws std::out_of_range otherwise.
Action warmup_action(int arm_count, std::int64_t slot);

// Uniform stepping interface consumed by the harness. Rounds are numbered from 1
// and the first K(K-1) rounds are the shared warm-up. Policies never see the
// instance; they learn only from observed outcomes.
class Policy {
 public:
  // Policies built with shared_warmup = false are handed every round.
  Policy(int arm_count, std::int64_t horizon, bool shared_warmup = true);
  virtual ~Policy() = default;

  Policy(const Policy&) = delete;
  Policy& operator=(const Policy&) = delete;

  virtual std::string_view name() const = 0;

  Action select_action(std::int64_t t);
  void observe(std::int64_t t, const Action& action, const RoundOutcome& outcome);

  int arm_count() const { return arm_count_; }
  std::int64_t horizon() const { return horizon_; }
  bool in_warmup(std::int64_t t) const { return shared_warmup_ && t <= warmup_length(arm_count_); }
  const SufficientStats& stats() const { return stats_; }

  // Rounds where a policy had to fall back from its normal rule.
  std::int64_t fallback_count() const { return fallback_count_; }
  const std::vector<std::int64_t>& fallback_rounds() const { return fallback_rounds_; }

 protected:
  virtual Action decide(std::int64_t t) = 0;
  // Called after the statistics update of every post-warm-up round.
  virtual void learn(std::int64_t t, const Action& action, const RoundOutcome& outcome) = 0;

  void note_fallback(std::int64_t t);

 private:
  int arm_count_;
  std::int64_t horizon_;
  bool shared_warmup_;
  SufficientStats stats_;
  std::int64_t fallback_count_ = 0;
  std::vector<std::int64_t> fallback_rounds_;
};

// Builds one of the four policies. `rng` is the policy's private stream; only
// DecoFusion draws from it.
std::unique_ptr<Policy> make_policy(PolicyKind kind, int arm_count, const PolicyParams& params,
                                    std::int64_t horizon, RngStream rng);

}  // namespace drmab
