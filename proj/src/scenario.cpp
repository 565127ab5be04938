#include "slicesim/scenario.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "slicesim/slice_pool.hpp"

namespace slicesim {

QueueParams ScenarioConfig::queue_params() const {
  QueueParams p;
  p.mu = mu;
  p.w1 = w1;
  p.w2 = w2;
  p.lambda.reserve(ues.size());
  for (const auto& ue : ues) p.lambda.push_back(ue.lambda);
  p.packet_bits = packet_bits;
  p.link_rate = link_rate;
  return p;
}

void ScenarioConfig::validate() const {
  validate_graph(graph);
  const auto priorities = compute_task_priorities(graph);  // throws on cycles
  int tp_sum = 0;
  for (const auto& pr : priorities) tp_sum += pr.tp;
  const int r = alpha * tp_sum;

  if (mu <= 0.0) throw ConfigError("mu must be positive");
  if (alpha < 1) throw ConfigError("alpha must be >= 1");
  if (tau <= 0.0 || tau > 1.0) throw ConfigError("tau must be in (0, 1]");
  if (w1 < 0.0 || w2 < 0.0) throw ConfigError("w1 and w2 must be non-negative");
  if (ues.empty()) throw ConfigError("at least one UE is required");
  if (subtask_work < 1) throw ConfigError("subtask_work must be >= 1");
  for (const auto& [task, work] : subtask_work_overrides) {
    if (work < 1) {
      throw ConfigError("subtask_work_overrides[" + std::to_string(task) +
                        "] must be >= 1");
    }
  }
  if (duration_s < 0.0 || warmup_s < 0.0 ||
      (duration_s > 0.0 ? warmup_s >= duration_s : warmup_s > 0.0)) {
    throw ConfigError("need duration > warmup >= 0");
  }
  if (sample_period_s <= 0.0) throw ConfigError("sample_period must be positive");
  if (poll_period_s <= 0.0) throw ConfigError("poll_period must be positive");

  double total_lambda = 0.0;
  int expected_id = 1;
  for (const auto& ue : ues) {
    if (ue.id != expected_id) {
      throw ConfigError("ues[" + std::to_string(expected_id - 1) +
                        "].id: ids must be contiguous from 1");
    }
    ++expected_id;
    if (ue.lambda <= 0.0) {
      throw ConfigError("ues[" + std::to_string(ue.id - 1) + "].lambda must be positive");
    }
    if (ue.initial_task < 1 || ue.initial_task > static_cast<int>(graph.tasks.size())) {
      throw ConfigError("ues[" + std::to_string(ue.id - 1) + "].initial_task out of range");
    }
    total_lambda += ue.lambda;
  }
  if (total_lambda >= r * mu) {
    throw UnstableScenarioError("sum(lambda) = " + std::to_string(total_lambda) +
                                " must be < r*mu = " + std::to_string(r * mu));
  }

  const size_t cells = ues.size() * static_cast<size_t>(r);
  if (packet_bits.size() != cells || link_rate.size() != cells) {
    throw ConfigError("transmission table must cover n x r UE-UPF pairs");
  }
  for (size_t c = 0; c < cells; ++c) {
    if (packet_bits[c] < 0.0) throw ConfigError("packet lengths must be >= 0");
    if (link_rate[c] <= 0.0) throw ConfigError("link rates must be positive");
  }
}

namespace {

using json = nlohmann::json;

ConfigError field_error(const std::string& path, const std::string& what) {
  return ConfigError(path + ": " + what);
}

template <typename T>
T require(const json& obj, const std::string& path, const std::string& key) {
  if (!obj.contains(key)) throw field_error(path + "." + key, "missing");
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw field_error(path + "." + key, e.what());
  }
}

template <typename T>
T optional_field(const json& obj, const std::string& path, const std::string& key,
                 T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw field_error(path + "." + key, e.what());
  }
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::exception& e) {
    throw ConfigError(origin + ": " + e.what());
  }

  ScenarioConfig cfg;
  cfg.name = optional_field<std::string>(doc, origin, "name", "scenario");

  const json& dag = doc.contains("dag") ? doc.at("dag") : throw field_error("dag", "missing");
  for (const auto& t : require<json>(dag, "dag", "tasks")) {
    cfg.graph.tasks.push_back({require<int>(t, "dag.tasks[]", "id"),
                               optional_field<std::string>(t, "dag.tasks[]", "name", "")});
  }
  for (const auto& e : optional_field<json>(dag, "dag", "edges", json::array())) {
    cfg.graph.edges.emplace_back(require<int>(e, "dag.edges[]", "from"),
                                 require<int>(e, "dag.edges[]", "to"));
  }

  for (const auto& u : require<json>(doc, origin, "ues")) {
    UeSpec spec;
    spec.id = require<int>(u, "ues[]", "id");
    spec.lambda = require<double>(u, "ues[]", "lambda");
    spec.initial_task = optional_field<int>(u, "ues[]", "initial_task", 1);
    cfg.ues.push_back(spec);
  }

  cfg.alpha = optional_field<int>(doc, origin, "alpha", 1);
  cfg.tau = optional_field<double>(doc, origin, "tau", 0.8);
  cfg.w1 = optional_field<double>(doc, origin, "w1", 1.0);
  cfg.w2 = optional_field<double>(doc, origin, "w2", 0.0);
  cfg.mu = require<double>(doc, origin, "mu");
  cfg.subtask_work = optional_field<long>(doc, origin, "subtask_work", 1);
  for (const auto& o :
       optional_field<json>(doc, origin, "subtask_work_overrides", json::array())) {
    cfg.subtask_work_overrides[require<int>(o, "subtask_work_overrides[]", "task")] =
        require<long>(o, "subtask_work_overrides[]", "work");
  }
  cfg.duration_s = require<double>(doc, origin, "duration_s");
  cfg.warmup_s = optional_field<double>(doc, origin, "warmup_s", 0.0);
  cfg.sample_period_s = optional_field<double>(doc, origin, "sample_period_s", 1.0);
  cfg.poll_period_s = optional_field<double>(doc, origin, "poll_period_s", 1.0);
  cfg.seed = optional_field<uint64_t>(doc, origin, "seed", 1);

  // Transmission table: defaults plus sparse per-pair overrides. Needs r,
  // which depends on the DAG priorities.
  TaskPriorityList priorities;
  try {
    priorities = compute_task_priorities(cfg.graph);
  } catch (const CyclicGraphError& e) {
    throw ConfigError(origin + ": dag: " + e.what());
  } catch (const GraphError& e) {
    throw ConfigError(origin + ": dag: " + e.what());
  }
  int tp_sum = 0;
  for (const auto& pr : priorities) tp_sum += pr.tp;
  const int r = cfg.alpha * tp_sum;
  const int n = cfg.num_ues();

  const json trans = optional_field<json>(doc, origin, "transmission", json::object());
  const double def_bits =
      optional_field<double>(trans, "transmission", "default_packet_bits", 0.0);
  const double def_rate =
      optional_field<double>(trans, "transmission", "default_link_rate_bps", 1.0);
  cfg.packet_bits.assign(static_cast<size_t>(n) * r, def_bits);
  cfg.link_rate.assign(static_cast<size_t>(n) * r, def_rate);
  for (const auto& o :
       optional_field<json>(trans, "transmission", "overrides", json::array())) {
    const int ue = require<int>(o, "transmission.overrides[]", "ue");
    const int upf = require<int>(o, "transmission.overrides[]", "upf");
    if (ue < 1 || ue > n || upf < 1 || upf > r) {
      throw field_error("transmission.overrides[]", "ue/upf index out of range");
    }
    const size_t c = static_cast<size_t>(ue - 1) * r + (upf - 1);
    cfg.packet_bits[c] = optional_field<double>(o, "transmission.overrides[]",
                                                "packet_bits", def_bits);
    cfg.link_rate[c] = optional_field<double>(o, "transmission.overrides[]",
                                              "link_rate_bps", def_rate);
  }

  try {
    cfg.validate();
  } catch (const CyclicGraphError& e) {
    throw ConfigError(origin + ": dag: " + e.what());
  } catch (const GraphError& e) {
    throw ConfigError(origin + ": dag: " + e.what());
  }
  return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path);
}

}  // namespace slicesim
