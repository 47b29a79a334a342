#include "drmab/cli.hpp"

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "drmab/analysis.hpp"
#include "drmab/builtin.hpp"
#include "drmab/errors.hpp"
#include "drmab/experiment.hpp"

namespace drmab {
namespace {

std::string fmt(double v, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

struct Overrides {
  std::optional<int> reps;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> horizon;
  std::optional<std::string> out;
  std::optional<int> workers;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--reps", reps, "Repetitions per algorithm");
    cmd.add_option("--seed", seed, "Base seed");
    cmd.add_option("--horizon", horizon, "Horizon T");
    cmd.add_option("--out", out, "Output directory");
    cmd.add_option("--workers", workers, "Worker threads (0: automatic)");
  }

  void apply(ExperimentConfig& c) const {
    if (reps) c.reps = *reps;
    if (seed) c.base_seed = *seed;
    if (horizon) c.horizon = *horizon;
    if (out) c.output = *out;
    if (workers) c.workers = *workers;
  }
};

void print_summary(std::ostream& out, const ExperimentResult& r, const std::string& prefix) {
  for (const auto& a : r.algorithms) {
    const auto& p = a.final_point();
    out << prefix << policy_name(a.kind) << ": final regret " << fmt(p.mean_total, 6) << " +- "
        << fmt(p.std_total, 6) << " over " << a.runs.size() << " reps\n";
  }
}

int lower_bound_command(const std::string& source, double alpha, int digits, std::ostream& out, std::ostream& err) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in [0, 1]");
  const auto named = resolve_instance(source, err);
  const auto general = lower_bound_general(named.instance, alpha);
  const auto simple = lower_bound_simplified(named.instance, alpha);
  out << "arm,reward_term,dueling_term,min_term,best_competitor,simplified_term\n";
  for (std::size_t i = 0; i < general.per_arm.size(); ++i) {
    const auto& a = general.per_arm[i];
    out << a.arm.value << ',' << fmt(a.reward_term, digits) << ',' << fmt(a.dueling_term, digits) << ','
        << fmt(a.min_term, digits) << ',' << a.best_competitor.value << ',' << fmt(simple.per_arm[i], digits)
        << '\n';
  }
  out << "total,,," << fmt(general.total_general, digits) << ",," << fmt(simple.total, digits) << '\n';
  for (ArmId k : general.competitor_not_optimal) {
    err << "note: best competitor of arm " << k.value << " is not arm 1; the simplified bound does not apply\n";
  }
  return 0;
}

int validate_command(const std::string& source, std::ostream& out, std::ostream& err) {
  const bool builtin = source == "appendix-f-k16" || source.rfind("reward-gap", 0) == 0 ||
                       source.rfind("dueling-gap", 0) == 0;
  if (!builtin) {
    const auto data = load_instance_file(source);
    const auto report = validate_instance(data);
    if (!report.ok()) {
      err << source << ": invalid instance\n" << report.summary();
      return 1;
    }
  }
  const auto named = resolve_instance(source, err);
  out << "ok: " << named.name << " (K=" << named.instance.arm_count() << ")\n";
  return 0;
}

}  // namespace

int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dueling-reward multi-armed bandit simulator", "drmab"};
  app.require_subcommand(1);

  std::string config_path;
  Overrides run_overrides;
  auto* run = app.add_subcommand("run", "Run every configured algorithm for the configured repetitions");
  run->add_option("config", config_path, "Experiment config (JSON)")->required();
  run_overrides.add_to(*run);

  Overrides sweep_overrides;
  std::string sweep_axis;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run one experiment per value of the sweep axis");
  sweep_cmd->add_option("config", config_path, "Experiment config (JSON)")->required();
  sweep_cmd->add_option("--axis", sweep_axis, "alpha, reward_gap or dueling_gap");
  sweep_overrides.add_to(*sweep_cmd);

  std::string instance_source;
  double alpha = 0.5;
  int digits = 5;
  auto* lb = app.add_subcommand("lower-bound", "Print the lower-bound coefficients of an instance as CSV");
  lb->add_option("instance", instance_source, "Built-in name or instance file")->required();
  lb->add_option("--alpha", alpha, "Reward weight in [0, 1]")->required();
  lb->add_option("--digits", digits, "Significant digits")->check(CLI::Range(1, 17));

  auto* validate = app.add_subcommand("validate", "Check an instance and report every violation");
  validate->add_option("instance", instance_source, "Built-in name or instance file")->required();

  auto* list = app.add_subcommand("list-instances", "List the built-in instances");

  if (argc > 1 && argv[1][0] != '-') {
    bool known = false;
    for (const auto* sub : app.get_subcommands({})) known = known || sub->check_name(argv[1]);
    if (!known) {
      err << "error: unknown subcommand '" << argv[1] << "'\n\n" << app.help();
      return 1;
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    if (*list) {
      for (const auto& [name, text] : builtin_catalog()) out << name << "  " << text << '\n';
      return 0;
    }
    if (*validate) return validate_command(instance_source, out, err);
    if (*lb) return lower_bound_command(instance_source, alpha, digits, out, err);
    if (*run) {
      auto config = load_config(config_path);
      run_overrides.apply(config);
      if (config.axis != SweepAxis::none) throw ConfigError("config describes a sweep; use the sweep subcommand");
      const auto result = run_experiment(config, err);
      write_outputs(config.output, result);
      print_summary(out, result, "");
      out << "wrote " << config.output << '\n';
      return 0;
    }
    if (*sweep_cmd) {
      auto config = load_config(config_path);
      sweep_overrides.apply(config);
      if (!sweep_axis.empty()) {
        const auto axis = parse_axis(sweep_axis);
        if (!axis || *axis == SweepAxis::none) throw ConfigError("unknown sweep axis '" + sweep_axis + "'");
        if (*axis != config.axis) config.axis_values = default_axis_values(*axis);
        config.axis = *axis;
      }
      const auto result = sweep(config, err);
      write_outputs(config.output, result, config);
      for (const auto& p : result.points) {
        print_summary(out, p.result, std::string(axis_name(result.axis)) + "=" + fmt(p.axis_value, 6) + " ");
      }
      out << "wrote " << config.output << '\n';
      return 0;
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  err << app.help();
  return 1;
}

}  // namespace drmab
