#include "drmab/policy.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <charconv>
#include <stdexcept>

#include "drmab/deco_fusion.hpp"
#include "drmab/elim_fusion.hpp"
#include "drmab/med_no_fusion.hpp"

namespace drmab {
namespace {

constexpr std::size_t kMaxLoggedFallbacks = 32;

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

std::string_view policy_name(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::elim_fusion: return "ElimFusion";
    case PolicyKind::deco_fusion: return "DecoFusion";
    case PolicyKind::elim_no_fusion: return "ElimNoFusion";
    case PolicyKind::med_no_fusion: return "MEDNoFusion";
  }
  return "unknown";
}

const std::vector<PolicyKind>& all_policy_kinds() {
  static const std::vector<PolicyKind> kinds{PolicyKind::deco_fusion, PolicyKind::med_no_fusion,
                                             PolicyKind::elim_fusion, PolicyKind::elim_no_fusion};
  return kinds;
}

std::optional<PolicyKind> parse_policy_kind(std::string_view name) {
  const auto key = lower(name);
  for (auto kind : all_policy_kinds()) {
    if (lower(policy_name(kind)) == key) return kind;
  }
  return std::nullopt;
}

double DeltaRule::resolve(int arm_count, std::int64_t horizon) const {
  const double t = static_cast<double>(horizon);
  const double k = static_cast<double>(arm_count);
  switch (kind) {
    case Kind::fixed: return value;
    case Kind::inverse_horizon: return 1.0 / t;
    case Kind::inverse_k2_t2: return 1.0 / (k * k * t * t);
  }
  return value;
}

std::string DeltaRule::describe() const {
  switch (kind) {
    case Kind::fixed: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", value);
      return buf;
    }
    case Kind::inverse_horizon: return "1/T";
    case Kind::inverse_k2_t2: return "1/(K^2T^2)";
  }
  return "?";
}

std::optional<DeltaRule> DeltaRule::parse(std::string_view text) {
  std::string compact;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact += static_cast<char>(std::toupper(c));
  }
  if (compact == "1/T") return DeltaRule{Kind::inverse_horizon, 0.0};
  if (compact == "1/(K^2T^2)" || compact == "1/K^2T^2" || compact == "1/(K2T2)") {
    return DeltaRule{Kind::inverse_k2_t2, 0.0};
  }
  double v = 0.0;
  const auto* begin = text.data();
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end || !(v > 0.0 && v < 1.0)) return std::nullopt;
  return DeltaRule{Kind::fixed, v};
}

double PolicyParams::f_of_k(int arm_count) const {
  return f_coeff * std::pow(static_cast<double>(arm_count), f_exponent);
}

Action warmup_action(int arm_count, std::int64_t slot) {
  if (slot < 0 || slot >= warmup_length(arm_count)) throw std::out_of_range("warm-up slot out of range");
  // Row k holds K-1 ordered pairs (k, l), l != k.
  const auto row = slot / (arm_count - 1);
  auto col = slot % (arm_count - 1);
  if (col >= row) ++col;
  Action a;
  a.reward_arm = ArmId::from_index(static_cast<std::size_t>(slot % arm_count));
  a.duel = {ArmId::from_index(static_cast<std::size_t>(row)), ArmId::from_index(static_cast<std::size_t>(col))};
  return a;
}

Policy::Policy(int arm_count, std::int64_t horizon, bool shared_warmup)
    : arm_count_(arm_count), horizon_(horizon), shared_warmup_(shared_warmup), stats_(arm_count) {
  if (arm_count < 2) throw std::invalid_argument("a policy needs at least two arms");
}

Action Policy::select_action(std::int64_t t) {
  if (in_warmup(t)) return warmup_action(arm_count_, t - 1);
  return decide(t);
}

void Policy::observe(std::int64_t t, const Action& action, const RoundOutcome& outcome) {
  stats_.update(action, outcome);
  if (!in_warmup(t)) learn(t, action, outcome);
}

void Policy::note_fallback(std::int64_t t) {
  ++fallback_count_;
  if (fallback_rounds_.size() < kMaxLoggedFallbacks) fallback_rounds_.push_back(t);
}

std::unique_ptr<Policy> make_policy(PolicyKind kind, int arm_count, const PolicyParams& params,
                                    std::int64_t horizon, RngStream rng) {
  switch (kind) {
    case PolicyKind::elim_fusion:
      return std::make_unique<ElimFusion>(arm_count, horizon, params.delta.resolve(arm_count, horizon));
    case PolicyKind::elim_no_fusion:
      return std::make_unique<ElimNoFusion>(arm_count, horizon, params.delta.resolve(arm_count, horizon));
    case PolicyKind::deco_fusion:
      return std::make_unique<DecoFusion>(arm_count, horizon, params.alpha, params.f_of_k(arm_count), rng);
    case PolicyKind::med_no_fusion:
      return std::make_unique<MedNoFusion>(arm_count, horizon, params.f_of_k(arm_count));
  }
  throw std::invalid_argument("unknown policy kind");
}

}  // namespace drmab
