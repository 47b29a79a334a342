#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "drmab/arm_set.hpp"
#include "drmab/policy.hpp"
#include "drmab/rng.hpp"

namespace drmab {

// Building blocks of the decomposition-fusion policy. They are free functions
// over explicit state so each step can be exercised on hand-built fixtures.
namespace deco {

// ln t + f(K)
double exploration_threshold(std::int64_t t, double f_of_k);

// alpha^2 / (alpha^2 + (1 - alpha)^2): probability of the dueling-explore branch.
double dueling_branch_probability(double alpha);

struct Decomposition {
  ArmSet reward_set;    // arms whose dueling evidence deficit is within the threshold
  ArmSet dueling_set;   // arms whose reward evidence is within the threshold
  ArmId reward_best;    // argmax of mu_hat over reward_set
  ArmId dueling_best;   // argmin of dueling evidence over dueling_set
};

// Builds both decomposition sets and their estimated optima from the current
// information measures (indexed by arm - 1). Ties go to the smallest index.
Decomposition decompose(std::span<const double> info_reward, std::span<const double> info_dueling,
                        std::span<const double> mean_reward, double threshold);

// Exploration set E and the auxiliary set B that refills it. Disjoint.
struct ExplorationSets {
  ArmSet explore;
  ArmSet pending;
};

struct Decision {
  Action action;
  std::optional<ArmId> explored;  // empty when E was empty (full exploitation)
  bool dueling_branch = false;
};

// Randomised decision for one round given a uniform draw u in [0, 1).
// u > beta: pull the exploration arm, duel (reward_best, reward_best).
// otherwise: pull dueling_best and duel the exploration arm against the
// comparison arm picked by the relative-minimum-divergence rule over the
// dueling set. With E empty both channels exploit.
Decision decide(const ExplorationSets& sets, const Decomposition& dec, const SufficientStats& stats, double beta,
                double u);

// Removes the explored arm from E, adds every qualifying arm outside E to B and
// renews E from B once E is exhausted. `explored` is empty on exploit-only rounds.
void update_exploration_sets(ExplorationSets& sets, std::optional<ArmId> explored, const Decomposition& dec,
                             std::span<const double> info_reward, std::span<const double> info_dueling,
                             double threshold);

// Recomputes both information measures for every arm with the decomposition
// sets as reference sets. Returns the arm attaining the reference maximum of
// mu_hat, whose reward information is zero.
ArmId refresh_information(const SufficientStats& stats, const Decomposition& dec, std::vector<double>& info_reward,
                          std::vector<double>& info_dueling);

}  // namespace deco

class DecoFusion final : public Policy {
 public:
  DecoFusion(int arm_count, std::int64_t horizon, double alpha, double f_of_k, RngStream rng);

  std::string_view name() const override { return "DecoFusion"; }

  double alpha() const { return alpha_; }
  double f_of_k() const { return f_of_k_; }
  double beta() const { return beta_; }

  const deco::ExplorationSets& exploration_sets() const { return sets_; }
  const deco::Decomposition& decomposition() const { return decomposition_; }
  const std::vector<double>& info_reward() const { return info_reward_; }
  const std::vector<double>& info_dueling() const { return info_dueling_; }
  // argmax of mu_hat over the reward reference set used by the last refresh.
  ArmId reward_reference_best() const { return reward_reference_best_; }
  const std::optional<deco::Decision>& last_decision() const { return last_decision_; }
  std::int64_t dueling_branch_rounds() const { return dueling_branch_rounds_; }
  std::int64_t decision_rounds() const { return decision_rounds_; }

  // Empty when every state invariant holds; otherwise a description of the first
  // violation. Checked after each round when NDEBUG is not defined.
  std::string invariant_violation() const;

 protected:
  Action decide(std::int64_t t) override;
  void learn(std::int64_t t, const Action& action, const RoundOutcome& outcome) override;

 private:
  double alpha_;
  double f_of_k_;
  double beta_;
  RngStream rng_;
  deco::ExplorationSets sets_;
  deco::Decomposition decomposition_;
  std::vector<double> info_reward_;
  std::vector<double> info_dueling_;
  ArmId reward_reference_best_{1};
  std::optional<deco::Decision> last_decision_;
  std::int64_t dueling_branch_rounds_ = 0;
  std::int64_t decision_rounds_ = 0;
};

}  // namespace drmab
