#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "drmab/instance.hpp"
#include "drmab/policy.hpp"

namespace drmab {

struct Checkpoint {
  std::int64_t t = 0;
  double total = 0.0;
  double reward = 0.0;   // unweighted
  double dueling = 0.0;  // unweighted
};

struct RunTrace {
  std::string algorithm;
  std::uint64_t rep = 0;
  std::vector<Checkpoint> points;
  std::int64_t fallback_count = 0;
  std::vector<std::int64_t> fallback_rounds;  // first few only
};

struct RunSettings {
  double alpha = 0.5;
  std::int64_t horizon = 200000;
  std::int64_t checkpoint_stride = 1000;
  std::uint64_t base_seed = 1;
};

// Runs `policy` for the full horizon on fresh environment streams of repetition
// `rep`, recording cumulative regret every `checkpoint_stride` rounds and at T.
RunTrace simulate(const BanditInstance& inst, Policy& policy, const RunSettings& settings, std::uint64_t rep);

// Same, building the policy with its private stream for `rep`.
RunTrace simulate(const BanditInstance& inst, PolicyKind kind, const PolicyParams& params,
                  const RunSettings& settings, std::uint64_t rep);

enum class SweepAxis { none, alpha, reward_gap, dueling_gap };

std::string_view axis_name(SweepAxis axis);
std::optional<SweepAxis> parse_axis(std::string_view name);
// Standard grid of each axis: alpha 0, 0.1, ..., 1 and the two gap grids.
std::vector<double> default_axis_values(SweepAxis axis);

struct ExperimentConfig {
  std::string instance = "appendix-f-k16";
  std::vector<PolicyKind> algorithms = all_policy_kinds();
  std::int64_t horizon = 200000;
  PolicyParams params;
  int reps = 20;
  std::uint64_t base_seed = 1;
  std::int64_t checkpoint_stride = 1000;
  std::string output = "results";
  int workers = 0;  // 0: DRMAB_WORKERS or the hardware thread count
  SweepAxis axis = SweepAxis::none;
  std::vector<double> axis_values;
};

// Keys: instance, algorithms, horizon (or T), alpha (number, or list for an alpha
// sweep), reps, base_seed, checkpoint_stride, delta, f_coeff, f_exponent,
// output, workers, sweep {axis, values}. Unknown keys are rejected.
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const ExperimentConfig& config);

// Throws ConfigError naming the violated invariant.
void validate_config(const ExperimentConfig& config, int arm_count);

// Worker count actually used for `tasks` independent runs.
int resolve_workers(int requested, std::size_t tasks);

struct AggregatePoint {
  std::int64_t t = 0;
  double mean_total = 0.0, std_total = 0.0;
  double mean_reward = 0.0, std_reward = 0.0;
  double mean_dueling = 0.0, std_dueling = 0.0;
};

struct AlgorithmResult {
  PolicyKind kind;
  std::vector<RunTrace> runs;  // rep order
  std::vector<AggregatePoint> aggregate;

  const AggregatePoint& final_point() const { return aggregate.back(); }
};

struct ExperimentResult {
  std::string instance_name;
  InstanceData instance;
  ExperimentConfig config;
  std::vector<AlgorithmResult> algorithms;  // config order

  const AlgorithmResult* find(PolicyKind kind) const;
};

// Sample mean and standard deviation (n - 1 denominator; 0 for a single run).
std::pair<double, double> mean_and_std(const std::vector<double>& values);
std::vector<AggregatePoint> aggregate_runs(const std::vector<RunTrace>& runs);

ExperimentResult run_experiment(const ExperimentConfig& config, std::ostream& warn);

struct SweepPoint {
  double axis_value = 0.0;
  ExperimentResult result;
};

struct SweepResult {
  SweepAxis axis = SweepAxis::none;
  std::vector<SweepPoint> points;
};

// One experiment per axis value. Gap axes replace the configured instance.
SweepResult sweep(const ExperimentConfig& config, std::ostream& warn);

// CSV emission. Reals are printed with %.12g.
void write_regret_csv(std::ostream& out, const ExperimentResult& result);
void write_aggregate_csv(std::ostream& out, const ExperimentResult& result);
void write_summary_csv(std::ostream& out, const ExperimentResult& result);
void write_summary_csv(std::ostream& out, const SweepResult& result);
std::string metadata_json(const ExperimentResult& result);
std::string metadata_json(const SweepResult& result, const ExperimentConfig& config);

std::string build_identifier();

// Write the CSV files and metadata.json into `dir`, creating it if needed.
// A sweep writes summary.csv at the top and one subdirectory per axis value.
void write_outputs(const std::filesystem::path& dir, const ExperimentResult& result);
void write_outputs(const std::filesystem::path& dir, const SweepResult& result, const ExperimentConfig& config);

}  // namespace drmab
