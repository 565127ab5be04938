#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "slicesim/queue_model.hpp"
#include "slicesim/task_graph.hpp"

namespace slicesim {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnstableScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct UeSpec {
  int id = 0;
  double lambda = 0.0;    // requests/second
  int initial_task = 1;
};

struct ScenarioConfig {
  std::string name;
  TaskGraph graph;
  std::vector<UeSpec> ues;
  int alpha = 1;
  double tau = 0.8;
  double w1 = 1.0;
  double w2 = 0.0;
  double mu = 0.0;
  // n x r transmission table, row-major; filled from defaults + overrides
  std::vector<double> packet_bits;
  std::vector<double> link_rate;
  long subtask_work = 1;                       // serviced requests per subtask
  std::map<int, long> subtask_work_overrides;  // per task id
  double duration_s = 0.0;
  double warmup_s = 0.0;
  double sample_period_s = 1.0;
  double poll_period_s = 1.0;
  uint64_t seed = 1;

  int num_ues() const { return static_cast<int>(ues.size()); }
  long work_for_task(int task_id) const {
    auto it = subtask_work_overrides.find(task_id);
    return it == subtask_work_overrides.end() ? subtask_work : it->second;
  }
  QueueParams queue_params() const;

  // Invariant checks shared by the file loader and programmatic construction.
  // Throws ConfigError / UnstableScenarioError.
  void validate() const;
};

// Parses the scenario file (JSON, // comments allowed) and validates it.
ScenarioConfig load_scenario(const std::string& path);
ScenarioConfig parse_scenario(const std::string& text, const std::string& origin);

}  // namespace slicesim
