#include <doctest.h>

#include <cmath>
#include <vector>

#include "drmab/analysis.hpp"
#include "drmab/deco_fusion.hpp"
#include "drmab/elim_fusion.hpp"
#include "drmab/environment.hpp"
#include "drmab/med_no_fusion.hpp"
#include "drmab/policy.hpp"
#include "fixtures.hpp"
#include "oracle_values.hpp"

using namespace drmab;

namespace {

Action act(int arm, int a, int b) { return {ArmId(arm), {ArmId(a), ArmId(b)}}; }

void duel_n(SufficientStats& s, int k, int l, int k_wins, int l_wins) {
  for (int i = 0; i < k_wins; ++i) s.record_duel(ArmId(k), ArmId(l), ArmId(k));
  for (int i = 0; i < l_wins; ++i) s.record_duel(ArmId(k), ArmId(l), ArmId(l));
}

void pull_n(SufficientStats& s, int arm, int ones, int zeros) {
  for (int i = 0; i < ones; ++i) s.record_reward(ArmId(arm), 1);
  for (int i = 0; i < zeros; ++i) s.record_reward(ArmId(arm), 0);
}

// Plays `rounds` rounds of `policy` against `inst`.
void drive(Policy& policy, const BanditInstance& inst, std::int64_t rounds, std::uint64_t seed = 1) {
  Environment env(inst, seed, 0);
  for (std::int64_t t = 1; t <= rounds; ++t) {
    const Action a = policy.select_action(t);
    policy.observe(t, a, env.step(a));
  }
}

}  // namespace

TEST_SUITE("parameters") {
  TEST_CASE("names round trip") {
    for (auto k : all_policy_kinds()) CHECK(parse_policy_kind(policy_name(k)) == k);
    CHECK(parse_policy_kind("decofusion") == PolicyKind::deco_fusion);
    CHECK_FALSE(parse_policy_kind("UCB").has_value());
  }

  TEST_CASE("delta rules") {
    CHECK(DeltaRule::parse("1/T")->resolve(16, 200000) == doctest::Approx(5e-6));
    CHECK(DeltaRule::parse("1/(K^2T^2)")->resolve(2, 10) == doctest::Approx(1.0 / 400));
    CHECK(DeltaRule::parse("0.05")->resolve(2, 10) == doctest::Approx(0.05));
    CHECK_FALSE(DeltaRule::parse("2").has_value());
    CHECK_FALSE(DeltaRule::parse("abc").has_value());
  }

  TEST_CASE("f(K) for the benchmark") {
    PolicyParams p;
    CHECK(std::abs(p.f_of_k(16) - oracle::f_k16) < 1e-12);
    CHECK(p.f_of_k(16) == doctest::Approx(0.8224).epsilon(1e-4));
  }
}

TEST_SUITE("warm-up") {
  TEST_CASE("schedule length") {
    CHECK(warmup_length(16) == 240);
    CHECK(warmup_length(2) == 2);
  }

  TEST_CASE("lexicographic pairs with round-robin pulls") {
    CHECK(warmup_action(3, 0) == act(1, 1, 2));
    CHECK(warmup_action(3, 5) == act(3, 3, 2));
    CHECK(warmup_action(3, 1) == act(2, 1, 3));
    CHECK(warmup_action(3, 2) == act(3, 2, 1));
    CHECK_THROWS_AS(warmup_action(3, 6), std::out_of_range);
    CHECK_THROWS_AS(warmup_action(3, -1), std::out_of_range);
  }

  TEST_CASE("counts after warm-up") {
    const auto inst = drmab::testing::k16();
    for (auto kind : all_policy_kinds()) {
      auto p = make_policy(kind, 16, PolicyParams{}, 1000, RngStream(1, 0, Channel::policy));
      drive(*p, inst, 240);
      for (int k = 1; k <= 16; ++k) {
        CHECK(p->stats().pulls(ArmId(k)) == 15);
        for (int l = 1; l <= 16; ++l) {
          if (k != l) CHECK(p->stats().duels(ArmId(k), ArmId(l)) == 2);
        }
      }
    }
  }
}

TEST_SUITE("statistics") {
  TEST_CASE("single duel") {
    SufficientStats s(3);
    s.update(act(1, 1, 2), RoundOutcome{1, ArmId(1)});
    CHECK(s.duels(ArmId(1), ArmId(2)) == 1);
    CHECK(s.duels(ArmId(2), ArmId(1)) == 1);
    CHECK(s.win_rate(ArmId(1), ArmId(2)) == 1.0);
    CHECK(s.win_rate(ArmId(2), ArmId(1)) == 0.0);
    CHECK(s.pulls(ArmId(1)) == 1);
  }

  TEST_CASE("running mean") {
    SufficientStats s(2);
    s.record_reward(ArmId(1), 1);
    s.record_reward(ArmId(1), 0);
    CHECK(s.pulls(ArmId(1)) == 2);
    CHECK(s.mean(ArmId(1)) == 0.5);
  }

  TEST_CASE("self-duel records nothing") {
    SufficientStats s(2);
    s.update(act(2, 1, 1), RoundOutcome{0, ArmId(1)});
    CHECK(s.duels(ArmId(1), ArmId(1)) == 0);
    CHECK(s.win_rate(ArmId(1), ArmId(1)) == 0.0);
    CHECK(s.pulls(ArmId(2)) == 1);
  }

  TEST_CASE("cached loss evidence") {
    SufficientStats s(2);
    duel_n(s, 2, 1, 3, 7);
    CHECK(s.loss_evidence(ArmId(2), ArmId(1)) == doctest::Approx(10 * bernoulli_kl(0.3, 0.5)));
    CHECK(s.loss_evidence(ArmId(1), ArmId(2)) == 0.0);
  }
}

TEST_SUITE("elimination") {
  TEST_CASE("tie rules") {
    SufficientStats s(3);
    const auto all = ArmSet::full(3);
    CHECK(elim::least_pulled(all, s) == ArmId(1));
    CHECK(elim::least_dueled_pair(all, s) == DuelPair{ArmId(1), ArmId(2)});
    s.record_reward(ArmId(1), 1);
    s.record_duel(ArmId(1), ArmId(2), ArmId(1));
    CHECK(elim::least_pulled(all, s) == ArmId(2));
    CHECK(elim::least_dueled_pair(all, s) == DuelPair{ArmId(1), ArmId(3)});
  }

  TEST_CASE("dueling clause removes a clearly beaten arm") {
    SufficientStats s(2);
    // nu_hat_{2,1} = 0.1 with CR < 0.4
    const double log_term = confidence_log_term(1000, 2, 0.001);
    std::int64_t m = 10;
    while (confidence_radius(log_term, m) >= 0.4) m += 10;
    duel_n(s, 2, 1, static_cast<int>(m / 10), static_cast<int>(m - m / 10));
    pull_n(s, 1, 1, 1);
    pull_n(s, 2, 1, 1);
    const auto kept = elim::surviving_arms(ArmSet::full(2), s, log_term, elim::Clause::both);
    CHECK(kept == ArmSet::of(2, {1}));
    const auto reward_only = elim::surviving_arms(ArmSet::full(2), s, log_term, elim::Clause::reward);
    CHECK(reward_only == ArmSet::full(2));
  }

  TEST_CASE("reward clause is non-strict, dueling clause strict") {
    // Two arms, N = 4 and log_term = 0.5 so CR = 0.5; means 1 and 0 put UCB_2 == LCB_1.
    SufficientStats s(2);
    const double log_term = 0.5;
    pull_n(s, 1, 4, 0);
    pull_n(s, 2, 0, 4);
    CHECK(elim::surviving_arms(ArmSet::full(2), s, log_term, elim::Clause::reward) == ArmSet::of(2, {1}));

    // nu_hat + CR == 1/2 exactly: M = 16, log_term = 0.5 gives CR = 0.25; nu_hat = 0.25.
    SufficientStats d(2);
    duel_n(d, 2, 1, 4, 12);
    CHECK(elim::surviving_arms(ArmSet::full(2), d, 0.5, elim::Clause::dueling) == ArmSet::full(2));
  }

  TEST_CASE("pass that would empty the set is skipped") {
    SufficientStats s(2);
    duel_n(s, 1, 2, 0, 1000);
    duel_n(s, 2, 1, 0, 1000);  // both have nu_hat 0.5 overall: no removal
    bool skipped = true;
    CHECK(elim::surviving_arms(ArmSet::full(2), s, 1.0, elim::Clause::both, &skipped) == ArmSet::full(2));
    CHECK_FALSE(skipped);
  }

  TEST_CASE("converged ElimFusion exploits the survivor for free") {
    const auto inst = BanditInstance::create(reward_gap_instance(0.21));
    ElimFusion p(5, 60000, 1.0 / 60000);
    drive(p, inst, 60000, 4);
    REQUIRE(p.candidates().size() == 1);
    CHECK(p.candidates().contains(ArmId(1)));
    CHECK(p.phase(60001) == ElimFusion::Phase::exploit);
    CHECK(p.select_action(60001) == act(1, 1, 1));
  }

  TEST_CASE("ElimNoFusion keeps the channels apart") {
    const auto inst = BanditInstance::create(dueling_gap_instance(0.11));
    ElimNoFusion p(5, 20000, 1.0 / 20000);
    Environment env(inst, 2, 0);
    bool split_seen = false;
    for (std::int64_t t = 1; t <= 20000; ++t) {
      const Action a = p.select_action(t);
      p.observe(t, a, env.step(a));
      for (int k = 2; k <= 5; ++k) {
        if (!p.dueling_candidates().contains(ArmId(k)) && p.reward_candidates().contains(ArmId(k))) {
          split_seen = true;
        }
      }
      if (p.reward_candidates().size() == 1) {
        CHECK(p.select_action(t + 1).reward_arm == *p.reward_candidates().smallest());
      }
    }
    CHECK(split_seen);
  }
}

TEST_SUITE("decomposition fusion") {
  TEST_CASE("branch probability") {
    CHECK(deco::dueling_branch_probability(0.5) == 0.5);
    CHECK(deco::dueling_branch_probability(0.0) == 0.0);
    CHECK(deco::dueling_branch_probability(1.0) == 1.0);
    CHECK(deco::dueling_branch_probability(0.3) == doctest::Approx(0.09 / (0.09 + 0.49)));
  }

  TEST_CASE("small information keeps every arm") {
    const std::vector<double> ir(4, 0.0), id(4, 0.0), mu{0.2, 0.9, 0.5, 0.1};
    const auto d = deco::decompose(ir, id, mu, deco::exploration_threshold(300, 0.1));
    CHECK(d.reward_set == ArmSet::full(4));
    CHECK(d.dueling_set == ArmSet::full(4));
    CHECK(d.reward_best == ArmId(2));
    CHECK(d.dueling_best == ArmId(1));
  }

  TEST_CASE("threshold boundary excludes strictly larger information") {
    const double thr = deco::exploration_threshold(1000, 0.8);
    const std::vector<double> ir{0.0, 1.0, thr + 0.01, thr};
    const std::vector<double> id{5.0, 0.0, 0.0, thr + 1.0};
    const std::vector<double> mu{0.9, 0.8, 0.7, 0.6};
    const auto d = deco::decompose(ir, id, mu, thr);
    CHECK(d.dueling_set == ArmSet::of(4, {1, 2, 4}));
    CHECK(d.dueling_best == ArmId(2));
    CHECK(d.reward_set == ArmSet::of(4, {1, 2, 3}));
    CHECK(d.reward_best == ArmId(1));
  }

  TEST_CASE("branch selection") {
    SufficientStats s(3);
    duel_n(s, 1, 2, 6, 4);  // nu_hat_{1,2} = 0.6
    duel_n(s, 1, 3, 7, 3);  // nu_hat_{1,3} = 0.7
    deco::ExplorationSets sets{ArmSet::of(3, {1, 3}), ArmSet(3)};
    deco::Decomposition d{ArmSet::full(3), ArmSet::full(3), ArmId(2), ArmId(3)};

    const auto reward = deco::decide(sets, d, s, 0.5, 0.75);
    CHECK_FALSE(reward.dueling_branch);
    CHECK(reward.explored == ArmId(1));
    CHECK(reward.action == act(1, 2, 2));

    // Every opponent of arm 1 is beaten, so the comparison arm is the dueling leader.
    const auto duel = deco::decide(sets, d, s, 0.5, 0.25);
    CHECK(duel.dueling_branch);
    CHECK(duel.action == act(3, 1, 3));
  }

  TEST_CASE("comparison arm when the leader is beaten but another arm is not") {
    SufficientStats s(4);
    duel_n(s, 3, 1, 2, 8);  // arm 3 loses to arm 1: 0.2
    duel_n(s, 3, 2, 4, 6);  // and to arm 2: 0.4
    duel_n(s, 3, 4, 9, 1);  // beats the leader arm 4
    deco::ExplorationSets sets{ArmSet::of(4, {3}), ArmSet(4)};
    deco::Decomposition d{ArmSet::full(4), ArmSet::full(4), ArmId(1), ArmId(4)};
    const auto out = deco::decide(sets, d, s, 1.0, 0.5);
    CHECK(out.action == act(4, 3, 1));  // argmin of nu_hat_{3,.}
  }

  TEST_CASE("empty exploration set exploits both channels") {
    SufficientStats s(3);
    deco::ExplorationSets sets{ArmSet(3), ArmSet(3)};
    deco::Decomposition d{ArmSet::full(3), ArmSet::full(3), ArmId(2), ArmId(3)};
    const auto out = deco::decide(sets, d, s, 0.5, 0.1);
    CHECK_FALSE(out.explored.has_value());
    CHECK(out.action == act(2, 3, 3));
  }

  TEST_CASE("renewal") {
    // Only arms 2 and 7 qualify, and they are already pending.
    deco::Decomposition d{ArmSet::full(8), ArmSet::of(8, {2, 7}), ArmId(1), ArmId(2)};
    const std::vector<double> ir(8, 100.0), id(8, 100.0);
    deco::ExplorationSets sets{ArmSet::of(8, {5}), ArmSet::of(8, {2, 7})};
    deco::update_exploration_sets(sets, ArmId(5), d, ir, id, 5.0);
    CHECK(sets.explore == ArmSet::of(8, {2, 7}));
    CHECK(sets.pending.empty());
  }

  TEST_CASE("qualifying arm is added once and never while in E") {
    const double thr = 5.0;
    deco::Decomposition d{ArmSet::full(4), ArmSet::full(4), ArmId(1), ArmId(1)};
    const std::vector<double> ir{0.0, 1.0, 9.0, 9.0};
    const std::vector<double> id{0.0, 1.0, 9.0, 9.0};
    deco::ExplorationSets sets{ArmSet::of(4, {1, 2}), ArmSet(4)};
    deco::update_exploration_sets(sets, ArmId(1), d, ir, id, thr);
    CHECK(sets.explore == ArmSet::of(4, {2}));
    CHECK(sets.pending == ArmSet::of(4, {1}));
  }

  TEST_CASE("exhausted sets leave E empty") {
    // Hand-built converged fixture: the only reference arm is the one just explored
    // and its information is above the threshold.
    deco::Decomposition d{ArmSet::of(2, {1}), ArmSet(2), ArmId(1), ArmId(1)};
    const std::vector<double> ir{9.0, 9.0}, id{9.0, 9.0};
    deco::ExplorationSets sets{ArmSet::of(2, {1}), ArmSet(2)};
    deco::update_exploration_sets(sets, ArmId(1), d, ir, id, 5.0);
    CHECK(sets.explore.empty());
    CHECK(sets.pending.empty());
  }

  TEST_CASE("dueling leader always returns to the schedule") {
    deco::Decomposition d{ArmSet::full(3), ArmSet::full(3), ArmId(1), ArmId(1)};
    const std::vector<double> ir{0.0, 50.0, 50.0}, id{0.0, 50.0, 50.0};
    deco::ExplorationSets sets{ArmSet::of(3, {1}), ArmSet(3)};
    deco::update_exploration_sets(sets, ArmId(1), d, ir, id, 5.0);
    CHECK(sets.explore == ArmSet::of(3, {1}));
  }

  TEST_CASE("information refresh") {
    SufficientStats s(3);
    pull_n(s, 1, 50, 50);
    pull_n(s, 2, 30, 70);
    pull_n(s, 3, 90, 10);
    duel_n(s, 2, 1, 18, 42);
    deco::Decomposition d{ArmSet::of(3, {1, 2}), ArmSet::of(3, {1, 2}), ArmId(1), ArmId(1)};
    std::vector<double> ir, id;
    const ArmId best = deco::refresh_information(s, d, ir, id);
    CHECK(best == ArmId(1));
    CHECK(ir[0] == 0.0);
    CHECK(ir[1] == doctest::Approx(8.228288).epsilon(1e-6));
    CHECK(id[1] == doctest::Approx(4.9369728).epsilon(1e-7));
    CHECK(id[0] == 0.0);
  }

  TEST_CASE("free exploration extremes pick a single branch") {
    const auto inst = drmab::testing::k16();
    for (double alpha : {0.0, 1.0}) {
      DecoFusion p(16, 5000, alpha, PolicyParams{}.f_of_k(16), RngStream(1, 0, Channel::policy));
      drive(p, inst, 5000);
      const auto decided = p.decision_rounds();
      CHECK(decided == 5000 - 240);
      CHECK(p.dueling_branch_rounds() == (alpha == 1.0 ? decided - p.fallback_count() : 0));
    }
  }

  TEST_CASE("state invariants hold along a run") {
    const auto inst = drmab::testing::k16();
    DecoFusion p(16, 20000, 0.5, PolicyParams{}.f_of_k(16), RngStream(8, 0, Channel::policy));
    Environment env(inst, 8, 0);
    for (std::int64_t t = 1; t <= 20000; ++t) {
      const Action a = p.select_action(t);
      p.observe(t, a, env.step(a));
      if (t > 240) REQUIRE(p.invariant_violation().empty());
    }
  }
}

TEST_SUITE("minimum empirical divergence baseline") {
  TEST_CASE("empirical reward best stays scheduled") {
    const auto inst = drmab::testing::k16();
    MedNoFusion p(16, 20000, PolicyParams{}.f_of_k(16));
    Environment env(inst, 6, 0);
    for (std::int64_t t = 1; t <= 20000; ++t) {
      const Action a = p.select_action(t);
      p.observe(t, a, env.step(a));
      if (t <= 240) continue;
      for (int k = 1; k <= 16; ++k) {
        if (p.info_reward()[static_cast<std::size_t>(k - 1)] == 0.0) {
          CHECK((p.reward_list().contains(ArmId(k)) || p.reward_pending().contains(ArmId(k))));
        }
      }
      CHECK_FALSE(p.reward_list().empty());
      CHECK_FALSE(p.dueling_list().empty());
    }
  }

  TEST_CASE("converges to arm 1 on both channels") {
    const auto inst = BanditInstance::create(reward_gap_instance(0.21));
    MedNoFusion p(5, 30000, PolicyParams{}.f_of_k(5));
    drive(p, inst, 30000, 9);
    int optimal = 0;
    Environment env(inst, 10, 0);
    for (std::int64_t t = 30001; t <= 31000; ++t) {
      const Action a = p.select_action(t);
      optimal += a.reward_arm == ArmId(1) && a.duel.first == ArmId(1) && a.duel.second == ArmId(1);
      p.observe(t, a, env.step(a));
    }
    CHECK(optimal > 900);
  }
}
