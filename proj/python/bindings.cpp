#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <sstream>

#include <json.hpp>

#include "drmab/analysis.hpp"
#include "drmab/builtin.hpp"
#include "drmab/errors.hpp"
#include "drmab/experiment.hpp"
#include "drmab/policy.hpp"
#include "drmab/regret.hpp"

namespace py = pybind11;
using namespace drmab;

namespace {

PolicyKind kind_from(const std::string& name) {
  const auto kind = parse_policy_kind(name);
  if (!kind) throw ConfigError("unknown algorithm '" + name + "'");
  return *kind;
}

Action action_from(int reward_arm, std::pair<int, int> duel) {
  return {ArmId(reward_arm), {ArmId(duel.first), ArmId(duel.second)}};
}

py::dict lower_bound_dict(const BanditInstance& inst, double alpha) {
  const auto general = lower_bound_general(inst, alpha);
  const auto simple = lower_bound_simplified(inst, alpha);
  py::list arms;
  for (std::size_t i = 0; i < general.per_arm.size(); ++i) {
    const auto& a = general.per_arm[i];
    py::dict row;
    row["arm"] = a.arm.value;
    row["reward_term"] = a.reward_term;
    row["dueling_term"] = a.dueling_term;
    row["min_term"] = a.min_term;
    row["best_competitor"] = a.best_competitor.value;
    row["simplified_term"] = simple.per_arm[i];
    arms.append(row);
  }
  py::dict out;
  out["alpha"] = alpha;
  out["per_arm"] = arms;
  out["total_general"] = general.total_general;
  out["total_simplified"] = simple.total;
  std::vector<int> flagged;
  for (ArmId k : general.competitor_not_optimal) flagged.push_back(k.value);
  out["competitor_not_optimal"] = flagged;
  return out;
}

py::dict result_dict(const ExperimentResult& r) {
  py::dict out;
  out["instance"] = r.instance_name;
  py::dict algos;
  for (const auto& a : r.algorithms) {
    py::list agg;
    for (const auto& p : a.aggregate) {
      py::dict row;
      row["t"] = p.t;
      row["mean_total"] = p.mean_total;
      row["std_total"] = p.std_total;
      row["mean_reward"] = p.mean_reward;
      row["std_reward"] = p.std_reward;
      row["mean_dueling"] = p.mean_dueling;
      row["std_dueling"] = p.std_dueling;
      agg.append(row);
    }
    py::list finals;
    for (const auto& run : a.runs) finals.append(run.points.back().total);
    py::dict entry;
    entry["aggregate"] = agg;
    entry["final_per_rep"] = finals;
    entry["mean_final"] = a.final_point().mean_total;
    entry["std_final"] = a.final_point().std_total;
    algos[py::str(std::string(policy_name(a.kind)))] = entry;
  }
  out["algorithms"] = algos;
  std::ostringstream csv;
  write_regret_csv(csv, r);
  out["regret_csv"] = csv.str();
  return out;
}

// Owns the policy together with the parameters it was built from.
class PolicyHandle {
 public:
  PolicyHandle(const std::string& kind, int arm_count, std::int64_t horizon, double alpha, std::uint64_t seed,
               std::uint64_t rep, const std::string& delta)
      : kind_(kind_from(kind)) {
    PolicyParams params;
    params.alpha = alpha;
    const auto rule = DeltaRule::parse(delta);
    if (!rule) throw ConfigError("bad delta rule '" + delta + "'");
    params.delta = *rule;
    policy_ = make_policy(kind_, arm_count, params, horizon, RngStream(seed, rep, Channel::policy));
  }

  std::pair<int, std::pair<int, int>> select_action(std::int64_t t) {
    const Action a = policy_->select_action(t);
    return {a.reward_arm.value, {a.duel.first.value, a.duel.second.value}};
  }

  void observe(std::int64_t t, int reward_arm, std::pair<int, int> duel, int reward, int winner) {
    policy_->observe(t, action_from(reward_arm, duel), RoundOutcome{reward, ArmId(winner)});
  }

  std::string name() const { return std::string(policy_->name()); }
  std::int64_t pulls(int k) const { return policy_->stats().pulls(ArmId(k)); }
  std::int64_t duels(int k, int l) const { return policy_->stats().duels(ArmId(k), ArmId(l)); }
  std::int64_t fallbacks() const { return policy_->fallback_count(); }

 private:
  PolicyKind kind_;
  std::unique_ptr<Policy> policy_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Dueling-reward multi-armed bandit simulator";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  m.def("bernoulli_kl", &bernoulli_kl, py::arg("p"), py::arg("q"));
  m.def("confidence_radius", py::overload_cast<std::int64_t, int, double, std::int64_t>(&confidence_radius),
        py::arg("t"), py::arg("arm_count"), py::arg("delta"), py::arg("n"));
  m.def("policy_names", [] {
    std::vector<std::string> out;
    for (auto k : all_policy_kinds()) out.emplace_back(policy_name(k));
    return out;
  });

  m.def(
      "validate_instance",
      [](int arm_count, std::vector<double> mu, std::vector<std::vector<double>> nu) {
        std::vector<std::string> out;
        for (const auto& v : validate_instance({arm_count, std::move(mu), std::move(nu)}).violations) {
          out.push_back(v.message);
        }
        return out;
      },
      py::arg("arm_count"), py::arg("mu"), py::arg("nu"));

  py::class_<BanditInstance>(m, "Instance")
      .def(py::init([](std::vector<double> mu, std::vector<std::vector<double>> nu) {
             const int k = static_cast<int>(mu.size());
             return BanditInstance::create({k, std::move(mu), std::move(nu)});
           }),
           py::arg("mu"), py::arg("nu"))
      .def_static(
          "builtin",
          [](const std::string& name) {
            std::ostringstream warn;
            return resolve_instance(name, warn).instance;
          },
          py::arg("name"))
      .def_property_readonly("arm_count", &BanditInstance::arm_count)
      .def_property_readonly("mu", &BanditInstance::means)
      .def_property_readonly("nu", [](const BanditInstance& i) { return i.data().nu; })
      .def("reward_gap", [](const BanditInstance& i, int k) { return i.reward_gap(ArmId(k)); })
      .def("dueling_gap", [](const BanditInstance& i, int k) { return i.dueling_gap(ArmId(k)); })
      .def(
          "instantaneous_regret",
          [](const BanditInstance& i, double alpha, int reward_arm, std::pair<int, int> duel) {
            return instantaneous_regret(i, alpha, action_from(reward_arm, duel));
          },
          py::arg("alpha"), py::arg("reward_arm"), py::arg("duel"))
      .def("lower_bound", &lower_bound_dict, py::arg("alpha"));

  py::class_<PolicyHandle>(m, "Policy")
      .def(py::init<const std::string&, int, std::int64_t, double, std::uint64_t, std::uint64_t,
                    const std::string&>(),
           py::arg("kind"), py::arg("arm_count"), py::arg("horizon"), py::arg("alpha") = 0.5,
           py::arg("seed") = 1, py::arg("rep") = 0, py::arg("delta") = "1/T")
      .def_property_readonly("name", &PolicyHandle::name)
      .def("select_action", &PolicyHandle::select_action, py::arg("t"))
      .def("observe", &PolicyHandle::observe, py::arg("t"), py::arg("reward_arm"), py::arg("duel"),
           py::arg("reward"), py::arg("winner"))
      .def("pulls", &PolicyHandle::pulls)
      .def("duels", &PolicyHandle::duels)
      .def_property_readonly("fallbacks", &PolicyHandle::fallbacks);

  m.def(
      "run_experiment",
      [](const std::string& config_json) {
        const auto config = parse_config(config_json);
        std::ostringstream warn;
        ExperimentResult r;
        {
          py::gil_scoped_release release;
          r = run_experiment(config, warn);
        }
        return result_dict(r);
      },
      py::arg("config_json"));

  m.def(
      "sweep",
      [](const std::string& config_json) {
        const auto config = parse_config(config_json);
        std::ostringstream warn;
        SweepResult r;
        {
          py::gil_scoped_release release;
          r = sweep(config, warn);
        }
        py::list points;
        for (const auto& p : r.points) {
          py::dict d = result_dict(p.result);
          d["axis_value"] = p.axis_value;
          points.append(d);
        }
        std::ostringstream csv;
        write_summary_csv(csv, r);
        py::dict out;
        out["axis"] = std::string(axis_name(r.axis));
        out["points"] = points;
        out["summary_csv"] = csv.str();
        return out;
      },
      py::arg("config_json"));
}
