#include "drmab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "drmab/builtin.hpp"
#include "drmab/environment.hpp"
#include "drmab/errors.hpp"
#include "drmab/regret.hpp"

#ifndef DRMAB_VERSION
#define DRMAB_VERSION "0.0.0"
#endif

namespace drmab {
namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string axis_label(SweepAxis axis, double value) {
  return std::string(axis_name(axis)) + "=" + fmt(value);
}

std::string instance_for_point(const ExperimentConfig& config, double value) {
  switch (config.axis) {
    case SweepAxis::reward_gap: return "reward-gap:" + fmt(value);
    case SweepAxis::dueling_gap: return "dueling-gap:" + fmt(value);
    default: return config.instance;
  }
}

json config_json(const ExperimentConfig& c) {
  json j;
  j["instance"] = c.instance;
  json algos = json::array();
  for (auto k : c.algorithms) algos.push_back(std::string(policy_name(k)));
  j["algorithms"] = algos;
  j["horizon"] = c.horizon;
  j["alpha"] = c.params.alpha;
  j["reps"] = c.reps;
  j["base_seed"] = c.base_seed;
  j["checkpoint_stride"] = c.checkpoint_stride;
  j["delta"] = c.params.delta.describe();
  j["f_coeff"] = c.params.f_coeff;
  j["f_exponent"] = c.params.f_exponent;
  j["output"] = c.output;
  if (c.axis != SweepAxis::none) {
    j["sweep"] = {{"axis", std::string(axis_name(c.axis))}, {"values", c.axis_values}};
  }
  return j;
}

json fallback_json(const ExperimentResult& r) {
  json out = json::object();
  for (const auto& a : r.algorithms) {
    json runs = json::array();
    for (const auto& run : a.runs) {
      if (run.fallback_count == 0) continue;
      runs.push_back({{"rep", run.rep}, {"count", run.fallback_count}, {"first_rounds", run.fallback_rounds}});
    }
    out[std::string(policy_name(a.kind))] = runs;
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

template <class F>
std::string render(F&& f) {
  std::ostringstream s;
  f(s);
  return s.str();
}

void make_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());
}

}  // namespace

RunTrace simulate(const BanditInstance& inst, Policy& policy, const RunSettings& settings, std::uint64_t rep) {
  Environment env(inst, settings.base_seed, rep);
  RegretLedger ledger(settings.alpha);
  RunTrace trace;
  trace.algorithm = std::string(policy.name());
  trace.rep = rep;
  trace.points.reserve(static_cast<std::size_t>(settings.horizon / settings.checkpoint_stride + 1));

  for (std::int64_t t = 1; t <= settings.horizon; ++t) {
    const Action action = policy.select_action(t);
    const RoundOutcome outcome = env.step(action);
    policy.observe(t, action, outcome);
    ledger.accumulate(inst, action);
    if (t % settings.checkpoint_stride == 0 || t == settings.horizon) {
      trace.points.push_back({t, ledger.cum_total(), ledger.cum_reward(), ledger.cum_dueling()});
    }
  }
  trace.fallback_count = policy.fallback_count();
  trace.fallback_rounds = policy.fallback_rounds();
  return trace;
}

RunTrace simulate(const BanditInstance& inst, PolicyKind kind, const PolicyParams& params,
                  const RunSettings& settings, std::uint64_t rep) {
  auto policy = make_policy(kind, inst.arm_count(), params, settings.horizon,
                            RngStream(settings.base_seed, rep, Channel::policy));
  return simulate(inst, *policy, settings, rep);
}

std::string_view axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::none: return "none";
    case SweepAxis::alpha: return "alpha";
    case SweepAxis::reward_gap: return "reward_gap";
    case SweepAxis::dueling_gap: return "dueling_gap";
  }
  return "none";
}

std::optional<SweepAxis> parse_axis(std::string_view name) {
  std::string key(name);
  std::replace(key.begin(), key.end(), '-', '_');
  for (auto a : {SweepAxis::none, SweepAxis::alpha, SweepAxis::reward_gap, SweepAxis::dueling_gap}) {
    if (axis_name(a) == key) return a;
  }
  return std::nullopt;
}

std::vector<double> default_axis_values(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::alpha: {
      std::vector<double> v;
      for (int i = 0; i <= 10; ++i) v.push_back(i / 10.0);
      return v;
    }
    case SweepAxis::reward_gap: return kRewardGapGrid;
    case SweepAxis::dueling_gap: return kDuelingGapGrid;
    case SweepAxis::none: break;
  }
  return {};
}

ExperimentConfig parse_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  ExperimentConfig c;
  bool alpha_list = false;
  try {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string& key = it.key();
      const json& v = it.value();
      if (key == "instance") {
        c.instance = v.get<std::string>();
      } else if (key == "algorithms") {
        c.algorithms.clear();
        for (const auto& name : v) {
          const auto kind = parse_policy_kind(name.get<std::string>());
          if (!kind) throw ConfigError("unknown algorithm '" + name.get<std::string>() + "'");
          c.algorithms.push_back(*kind);
        }
      } else if (key == "horizon" || key == "T") {
        c.horizon = v.get<std::int64_t>();
      } else if (key == "alpha") {
        if (v.is_array()) {
          c.axis_values = v.get<std::vector<double>>();
          alpha_list = true;
        } else {
          c.params.alpha = v.get<double>();
        }
      } else if (key == "reps") {
        c.reps = v.get<int>();
      } else if (key == "base_seed" || key == "seed") {
        c.base_seed = v.get<std::uint64_t>();
      } else if (key == "checkpoint_stride") {
        c.checkpoint_stride = v.get<std::int64_t>();
      } else if (key == "delta") {
        const auto rule =
            v.is_number() ? DeltaRule::parse(fmt(v.get<double>())) : DeltaRule::parse(v.get<std::string>());
        if (!rule) throw ConfigError("delta must be \"1/T\", \"1/(K^2T^2)\" or a number in (0, 1)");
        c.params.delta = *rule;
      } else if (key == "f_coeff") {
        c.params.f_coeff = v.get<double>();
      } else if (key == "f_exponent") {
        c.params.f_exponent = v.get<double>();
      } else if (key == "output") {
        c.output = v.get<std::string>();
      } else if (key == "workers") {
        c.workers = v.get<int>();
      } else if (key == "sweep") {
        for (auto s = v.begin(); s != v.end(); ++s) {
          if (s.key() == "axis") {
            const auto axis = parse_axis(s.value().get<std::string>());
            if (!axis) throw ConfigError("unknown sweep axis '" + s.value().get<std::string>() + "'");
            c.axis = *axis;
          } else if (s.key() == "values") {
            c.axis_values = s.value().get<std::vector<double>>();
          } else {
            throw ConfigError("unknown sweep key '" + s.key() + "'");
          }
        }
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config has a field of the wrong type: ") + e.what());
  }

  if (alpha_list && c.axis == SweepAxis::none) c.axis = SweepAxis::alpha;
  if (c.axis != SweepAxis::none && c.axis_values.empty()) c.axis_values = default_axis_values(c.axis);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file '" + path.string() + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return parse_config(s.str());
}

std::string config_to_json(const ExperimentConfig& config) { return config_json(config).dump(2); }

void validate_config(const ExperimentConfig& c, int arm_count) {
  if (c.reps < 1) throw ConfigError("invalid config: reps >= 1 required, got " + std::to_string(c.reps));
  if (c.checkpoint_stride < 1) {
    throw ConfigError("invalid config: checkpoint_stride >= 1 required, got " +
                      std::to_string(c.checkpoint_stride));
  }
  if (c.horizon < warmup_length(arm_count)) {
    throw ConfigError("invalid config: horizon T >= K(K-1) = " + std::to_string(warmup_length(arm_count)) +
                      " required, got " + std::to_string(c.horizon));
  }
  if (c.algorithms.empty()) throw ConfigError("invalid config: at least one algorithm required");
  if (!(c.params.alpha >= 0.0 && c.params.alpha <= 1.0)) {
    throw ConfigError("invalid config: alpha in [0, 1] required, got " + fmt(c.params.alpha));
  }
  if (c.axis == SweepAxis::alpha) {
    for (double a : c.axis_values) {
      if (!(a >= 0.0 && a <= 1.0)) throw ConfigError("invalid config: alpha in [0, 1] required, got " + fmt(a));
    }
  }
  if (c.workers < 0) throw ConfigError("invalid config: workers >= 0 required");
}

int resolve_workers(int requested, std::size_t tasks) {
  int n = requested;
  if (n <= 0) {
    if (const char* env = std::getenv("DRMAB_WORKERS")) n = std::atoi(env);
  }
  if (n <= 0) n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return static_cast<int>(std::clamp<std::size_t>(static_cast<std::size_t>(n), 1, std::max<std::size_t>(tasks, 1)));
}

const AlgorithmResult* ExperimentResult::find(PolicyKind kind) const {
  for (const auto& a : algorithms) {
    if (a.kind == kind) return &a;
  }
  return nullptr;
}

std::pair<double, double> mean_and_std(const std::vector<double>& values) {
  if (values.empty()) return {0.0, 0.0};
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  if (values.size() < 2) return {mean, 0.0};
  double sq = 0.0;
  for (double v : values) sq += (v - mean) * (v - mean);
  return {mean, std::sqrt(sq / static_cast<double>(values.size() - 1))};
}

std::vector<AggregatePoint> aggregate_runs(const std::vector<RunTrace>& runs) {
  std::vector<AggregatePoint> out;
  if (runs.empty()) return out;
  const std::size_t n = runs.front().points.size();
  std::vector<double> total(runs.size()), reward(runs.size()), dueling(runs.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t r = 0; r < runs.size(); ++r) {
      const auto& p = runs[r].points[i];
      total[r] = p.total;
      reward[r] = p.reward;
      dueling[r] = p.dueling;
    }
    AggregatePoint a;
    a.t = runs.front().points[i].t;
    std::tie(a.mean_total, a.std_total) = mean_and_std(total);
    std::tie(a.mean_reward, a.std_reward) = mean_and_std(reward);
    std::tie(a.mean_dueling, a.std_dueling) = mean_and_std(dueling);
    out.push_back(a);
  }
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config, std::ostream& warn) {
  auto named = resolve_instance(config.instance, warn);
  const BanditInstance& inst = named.instance;
  validate_config(config, inst.arm_count());

  ExperimentResult result;
  result.instance_name = named.name;
  result.instance = inst.data();
  result.config = config;

  RunSettings settings;
  settings.alpha = config.params.alpha;
  settings.horizon = config.horizon;
  settings.checkpoint_stride = config.checkpoint_stride;
  settings.base_seed = config.base_seed;

  const std::size_t reps = static_cast<std::size_t>(config.reps);
  const std::size_t tasks = config.algorithms.size() * reps;
  std::vector<RunTrace> traces(tasks);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    for (std::size_t i = next++; i < tasks; i = next++) {
      try {
        traces[i] = simulate(inst, config.algorithms[i / reps], config.params, settings, i % reps);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const int workers = resolve_workers(config.workers, tasks);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (std::size_t a = 0; a < config.algorithms.size(); ++a) {
    AlgorithmResult ar{config.algorithms[a], {}, {}};
    ar.runs.assign(std::make_move_iterator(traces.begin() + a * reps),
                   std::make_move_iterator(traces.begin() + (a + 1) * reps));
    ar.aggregate = aggregate_runs(ar.runs);
    result.algorithms.push_back(std::move(ar));
  }
  return result;
}

SweepResult sweep(const ExperimentConfig& config, std::ostream& warn) {
  if (config.axis == SweepAxis::none) throw ConfigError("invalid config: sweep needs an axis");
  if (config.axis_values.empty()) throw ConfigError("invalid config: sweep grid must be nonempty");
  SweepResult out;
  out.axis = config.axis;
  for (double value : config.axis_values) {
    ExperimentConfig point = config;
    point.axis = SweepAxis::none;
    point.axis_values.clear();
    point.instance = instance_for_point(config, value);
    if (config.axis == SweepAxis::alpha) point.params.alpha = value;
    out.points.push_back({value, run_experiment(point, warn)});
  }
  return out;
}

void write_regret_csv(std::ostream& out, const ExperimentResult& result) {
  out << "algorithm,rep,t,regret_total,regret_reward,regret_dueling\n";
  for (const auto& a : result.algorithms) {
    const std::string name(policy_name(a.kind));
    for (const auto& run : a.runs) {
      for (const auto& p : run.points) {
        out << name << ',' << run.rep << ',' << p.t << ',' << fmt(p.total) << ',' << fmt(p.reward) << ','
            << fmt(p.dueling) << '\n';
      }
    }
  }
}

void write_aggregate_csv(std::ostream& out, const ExperimentResult& result) {
  out << "algorithm,t,reps,mean_total,std_total,mean_reward,std_reward,mean_dueling,std_dueling\n";
  for (const auto& a : result.algorithms) {
    const std::string name(policy_name(a.kind));
    for (const auto& p : a.aggregate) {
      out << name << ',' << p.t << ',' << a.runs.size() << ',' << fmt(p.mean_total) << ',' << fmt(p.std_total)
          << ',' << fmt(p.mean_reward) << ',' << fmt(p.std_reward) << ',' << fmt(p.mean_dueling) << ','
          << fmt(p.std_dueling) << '\n';
    }
  }
}

namespace {

constexpr const char* kSummaryHeader =
    "algorithm,axis,axis_value,mean_final,std_final,mean_final_reward,std_final_reward,mean_final_dueling,"
    "std_final_dueling\n";

void summary_rows(std::ostream& out, const ExperimentResult& result, std::string_view axis,
                  const std::string& value) {
  for (const auto& a : result.algorithms) {
    const auto& p = a.final_point();
    out << policy_name(a.kind) << ',' << axis << ',' << value << ',' << fmt(p.mean_total) << ','
        << fmt(p.std_total) << ',' << fmt(p.mean_reward) << ',' << fmt(p.std_reward) << ','
        << fmt(p.mean_dueling) << ',' << fmt(p.std_dueling) << '\n';
  }
}

}  // namespace

void write_summary_csv(std::ostream& out, const ExperimentResult& result) {
  out << kSummaryHeader;
  summary_rows(out, result, "none", "");
}

void write_summary_csv(std::ostream& out, const SweepResult& result) {
  out << kSummaryHeader;
  for (const auto& p : result.points) summary_rows(out, p.result, axis_name(result.axis), fmt(p.axis_value));
}

std::string build_identifier() {
#ifdef __VERSION__
  return std::string("drmab ") + DRMAB_VERSION + " (" + __VERSION__ + ")";
#else
  return std::string("drmab ") + DRMAB_VERSION;
#endif
}

std::string metadata_json(const ExperimentResult& result) {
  json j;
  j["build"] = build_identifier();
  j["instance_name"] = result.instance_name;
  j["instance"] = json::parse(instance_to_json(result.instance));
  j["config"] = config_json(result.config);
  j["base_seed"] = result.config.base_seed;
  j["seed_derivation"] = "mix64(mix64(base_seed ^ mix64(rep)) + channel), channels reward=1 duel=2 policy=3";
  j["delta_resolved"] = result.config.params.delta.resolve(result.instance.arm_count, result.config.horizon);
  j["f_of_k"] = result.config.params.f_of_k(result.instance.arm_count);
  j["fallbacks"] = fallback_json(result);
  return j.dump(2) + "\n";
}

std::string metadata_json(const SweepResult& result, const ExperimentConfig& config) {
  json j;
  j["build"] = build_identifier();
  j["config"] = config_json(config);
  j["axis"] = std::string(axis_name(result.axis));
  json points = json::array();
  for (const auto& p : result.points) {
    points.push_back({{"axis_value", p.axis_value},
                      {"instance_name", p.result.instance_name},
                      {"directory", axis_label(result.axis, p.axis_value)}});
  }
  j["points"] = points;
  return j.dump(2) + "\n";
}

void write_outputs(const std::filesystem::path& dir, const ExperimentResult& result) {
  make_dir(dir);
  write_file(dir / "regret.csv", render([&](std::ostream& s) { write_regret_csv(s, result); }));
  write_file(dir / "aggregate.csv", render([&](std::ostream& s) { write_aggregate_csv(s, result); }));
  write_file(dir / "summary.csv", render([&](std::ostream& s) { write_summary_csv(s, result); }));
  write_file(dir / "metadata.json", metadata_json(result));
}

void write_outputs(const std::filesystem::path& dir, const SweepResult& result, const ExperimentConfig& config) {
  make_dir(dir);
  write_file(dir / "summary.csv", render([&](std::ostream& s) { write_summary_csv(s, result); }));
  write_file(dir / "metadata.json", metadata_json(result, config));
  for (const auto& p : result.points) write_outputs(dir / axis_label(result.axis, p.axis_value), p.result);
}

}  // namespace drmab
