// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "drmab/analysis.hpp"
#include "drmab/builtin.hpp"
#include "drmab/deco_fusion.hpp"
#include "drmab/elim_fusion.hpp"
#include "drmab/environment.hpp"
#include "drmab/experiment.hpp"
#include "drmab/regret.hpp"
#include "oracle_values.hpp"

using namespace drmab;

namespace {

int failures = 0;

void report(bool ok, const std::string& name, const std::string& detail) {
  std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(double x, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

ExperimentConfig base_config() {
  ExperimentConfig c;
  c.instance = "appendix-f-k16";
  c.algorithms = all_policy_kinds();
  c.horizon = 200000;
  c.params.alpha = 0.5;
  c.reps = 20;
  c.base_seed = 1;
  c.checkpoint_stride = 1000;
  c.workers = 0;
  return c;
}

double final_mean(const ExperimentResult& r, PolicyKind k) { return r.find(k)->final_point().mean_total; }

// (baseline - candidate) / candidate: how much higher the baseline's regret is.
double improvement(double candidate, double baseline) { return (baseline - candidate) / candidate; }

bool nonincreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[i - 1]) return false;
  return true;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : " ") + fmt(x);
  return s;
}

void k16_benchmark() {
  std::ostringstream warn;
  const auto r = run_experiment(base_config(), warn);
  const double deco = final_mean(r, PolicyKind::deco_fusion);
  const double med = final_mean(r, PolicyKind::med_no_fusion);
  const double elim = final_mean(r, PolicyKind::elim_fusion);
  const double elim_no = final_mean(r, PolicyKind::elim_no_fusion);
  const double imp_elim = improvement(elim, elim_no);
  const double imp_deco = improvement(deco, med);
  const bool order = deco < med && med < elim && elim < elim_no;
  const bool elim_ok = std::abs(imp_elim - 0.813) <= 0.15;
  const bool deco_ok = std::abs(imp_deco - 0.475) <= 0.15;
  const bool ratio_ok = elim >= 20.0 * deco;
  report(order && elim_ok && deco_ok && ratio_ok, "k16-benchmark",
         "Deco=" + fmt(deco) + " MED=" + fmt(med) + " Elim=" + fmt(elim) + " ElimNo=" + fmt(elim_no) +
             " elim_improvement=" + fmt(100 * imp_elim) + "% (81.3+-15) deco_improvement=" + fmt(100 * imp_deco) +
             "% (47.5+-15) elim/deco=" + fmt(elim / deco) + " (>=20)");
}

void alpha_sweep() {
  auto c = base_config();
  c.algorithms = {PolicyKind::deco_fusion};
  c.axis = SweepAxis::alpha;
  c.axis_values = default_axis_values(SweepAxis::alpha);
  std::ostringstream warn;
  const auto s = sweep(c, warn);

  std::vector<double> finals;
  double plateau_worst = 0.0;
  for (const auto& p : s.points) {
    const auto& agg = p.result.algorithms[0].aggregate;
    finals.push_back(agg.back().mean_total);
    if (p.axis_value == 0.0 || p.axis_value == 1.0) {
      const auto mid = std::find_if(agg.begin(), agg.end(), [&](const AggregatePoint& a) { return a.t == c.horizon / 2; });
      const double late = agg.back().mean_total - mid->mean_total;
      plateau_worst = std::max(plateau_worst, late / agg.back().mean_total);
    }
  }
  const auto peak = std::max_element(finals.begin(), finals.end()) - finals.begin();
  const double peak_alpha = s.points[static_cast<std::size_t>(peak)].axis_value;
  const bool peak_ok = std::abs(peak_alpha - 0.4) < 1e-9 || std::abs(peak_alpha - 0.5) < 1e-9 ||
                       std::abs(peak_alpha - 0.6) < 1e-9;
  const bool plateau_ok = plateau_worst < 0.05;
  report(peak_ok && plateau_ok, "alpha-sweep",
         "final regret [" + join(finals) + "] peak at alpha=" + fmt(peak_alpha) +
             " (need 0.4/0.5/0.6); late share at alpha 0,1 <= " + fmt(plateau_worst) + " (<0.05)");
}

void gap_sweeps() {
  bool ok = true;
  std::string detail;
  for (auto axis : {SweepAxis::reward_gap, SweepAxis::dueling_gap}) {
    auto c = base_config();
    c.axis = axis;
    c.axis_values = default_axis_values(axis);
    std::ostringstream warn;
    const auto s = sweep(c, warn);
    for (auto kind : all_policy_kinds()) {
      std::vector<double> finals;
      for (const auto& p : s.points) finals.push_back(final_mean(p.result, kind));
      const bool mono = nonincreasing(finals);
      const bool required = !(kind == PolicyKind::deco_fusion && axis == SweepAxis::dueling_gap);
      if (required && !mono) ok = false;
      detail += std::string(axis_name(axis)) + "/" + std::string(policy_name(kind)) + "=[" + join(finals) + "]" +
                (required ? (mono ? "" : "!") : "~") + " ";
    }
  }
  report(ok, "gap-sweeps", detail);
}

void unit_oracles() {
  double kl_err = 0.0, cr_err = 0.0;
  for (const auto& p : oracle::kl_grid) kl_err = std::max(kl_err, std::abs(bernoulli_kl(p.p, p.q) - p.value));
  for (const auto& p : oracle::cr_grid)
    cr_err = std::max(cr_err, std::abs(confidence_radius(p.t, p.k, p.delta, p.n) - p.value));

  const auto inst = BanditInstance::create(appendix_f_k16());
  bool enum_ok = true;
  double enum_err = 0.0;
  for (double alpha : {0.1, 0.5, 0.9}) {
    const auto lb = lower_bound_general(inst, alpha);
    for (const auto& term : lb.per_arm) {
      const int k = term.arm.value;
      long double best = std::numeric_limits<long double>::infinity();
      int best_l = 0;
      for (int l = 1; l < k; ++l) {
        const long double nu = inst.nu(ArmId(k), ArmId(l));
        const long double kl = nu * std::log(nu / 0.5L) + (1 - nu) * std::log((1 - nu) / 0.5L);
        const long double gaps = static_cast<long double>(inst.dueling_gap(ArmId(k))) + inst.dueling_gap(ArmId(l));
        const long double v = (1 - static_cast<long double>(alpha)) * gaps / kl;
        if (v < best) best = v, best_l = l;
      }
      const double err = std::abs(static_cast<double>(best) - term.dueling_term) / static_cast<double>(best);
      enum_err = std::max(enum_err, err);
      if (err > 1e-9 || term.best_competitor.value != best_l) enum_ok = false;
    }
  }
  report(kl_err <= 1e-8 && cr_err <= 1e-6 && enum_ok, "unit-oracles",
         "kl max err " + fmt(kl_err) + " (<=1e-8), radius max err " + fmt(cr_err) +
             " (<=1e-6), inner-min rel err " + fmt(enum_err) + " over k=2..16, alpha 0.1/0.5/0.9");
}

ArmId pick(std::mt19937_64& g, int k) { return ArmId(std::uniform_int_distribution<int>(1, k)(g)); }

void property_suites() {
  std::vector<std::string> broken;
  std::mt19937_64 g(2024);

  bool stats_ok = true;
  for (int seq = 0; seq < 10000 && stats_ok; ++seq) {
    const int k = std::uniform_int_distribution<int>(2, 6)(g);
    SufficientStats s(k);
    const int steps = std::uniform_int_distribution<int>(1, 30)(g);
    for (int i = 0; i < steps; ++i) {
      const ArmId a = pick(g, k), b = pick(g, k);
      s.update({pick(g, k), {a, b}}, {static_cast<int>(g() & 1), (g() & 1) ? a : b});
    }
    for (int i = 1; i <= k; ++i)
      for (int j = 1; j <= k; ++j) {
        if (i == j) continue;
        const ArmId x(i), y(j);
        if (s.duels(x, y) != s.duels(y, x)) stats_ok = false;
        if (s.duels(x, y) > 0 && std::abs(s.win_rate(x, y) + s.win_rate(y, x) - 1.0) > 1e-12) stats_ok = false;
      }
  }
  if (!stats_ok) broken.push_back("stats symmetry");

  std::string deco_violation;
  DecoFusion deco(8, 20000, 0.5, 0.05 * std::pow(8, 1.01), RngStream(1, 0, Channel::policy));
  for (std::int64_t t = 1; t <= 10000 + warmup_length(8) && deco_violation.empty(); ++t) {
    const Action a = deco.select_action(t);
    deco.observe(t, a, {static_cast<int>(g() & 1), (g() & 1) ? a.duel.first : a.duel.second});
    if (!deco.in_warmup(t)) deco_violation = deco.invariant_violation();
  }
  if (!deco_violation.empty()) broken.push_back("DecoFusion sets: " + deco_violation);

  ExperimentConfig c;
  c.instance = "appendix-f-k16";
  c.horizon = 3000;
  c.reps = 2;
  c.checkpoint_stride = 100;
  c.workers = 2;
  std::ostringstream warn, a, b;
  write_regret_csv(a, run_experiment(c, warn));
  write_regret_csv(b, run_experiment(c, warn));
  if (a.str() != b.str()) broken.push_back("determinism");

  const auto inst = BanditInstance::create(appendix_f_k16());
  bool ledger_ok = true;
  for (double alpha : {0.0, 0.3, 0.5, 0.9, 1.0}) {
    RegretLedger ledger(alpha);
    for (int t = 0; t < 10000; ++t) {
      ledger.accumulate(inst, {pick(g, 16), {pick(g, 16), pick(g, 16)}});
      if (std::abs(ledger.cum_total() - (alpha * ledger.cum_reward() + (1 - alpha) * ledger.cum_dueling())) > 1e-9)
        ledger_ok = false;
    }
  }
  if (!ledger_ok) broken.push_back("ledger identity");

  std::string detail = "stats symmetry, DecoFusion set invariants, CSV determinism, ledger identity";
  for (const auto& s : broken) detail += "; broken: " + s;
  report(broken.empty(), "property-suites", detail);
}

void elimination_safety() {
  const auto inst = BanditInstance::create(reward_gap_instance(0.21));
  const int k = inst.arm_count();
  constexpr int runs = 500;
  constexpr std::int64_t horizon = 50000;
  PolicyParams params;
  params.alpha = 0.5;

  auto run_one = [&](int rep) {
    auto policy = make_policy(PolicyKind::elim_fusion, k, params, horizon,
                              RngStream(1, static_cast<std::uint64_t>(rep), Channel::policy));
    Environment env(inst, 1, static_cast<std::uint64_t>(rep));
    for (std::int64_t t = 1; t <= horizon; ++t) {
      const Action a = policy->select_action(t);
      policy->observe(t, a, env.step(a));
    }
    return !static_cast<const ElimFusion&>(*policy).candidates().contains(ArmId(1));
  };

  const int workers = std::max(1U, std::thread::hardware_concurrency());
  std::vector<std::future<int>> parts;
  for (int w = 0; w < workers; ++w)
    parts.push_back(std::async(std::launch::async, [&, w] {
      int lost = 0;
      for (int rep = w; rep < runs; rep += workers) lost += run_one(rep);
      return lost;
    }));
  int lost = 0;
  for (auto& p : parts) lost += p.get();
  const double rate = static_cast<double>(lost) / runs;
  report(rate <= 0.02, "elimination-safety",
         "arm 1 eliminated in " + std::to_string(lost) + "/" + std::to_string(runs) + " runs (" + fmt(100 * rate) +
             "%, need <=2%)");
}

}  // namespace

int main() {
  unit_oracles();
  property_suites();
  elimination_safety();
  k16_benchmark();
  gap_sweeps();
  alpha_sweep();
  std::printf("%s: %d criteria failed\n", failures ? "FAILED" : "ALL PASSED", failures);
  return failures ? 1 : 0;
}
