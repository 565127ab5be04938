#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "slicesim/scenario.hpp"

namespace slicesim {

struct MetricsSample {
  double t = 0.0;
  std::vector<double> upf_load;  // analytic theta_j per UPF, index j-1
  bool has_inuse = false;
  double mean_inuse = 0.0;
  double std_inuse = 0.0;  // population std over in-use UPFs
  long completed = 0;      // cumulative subtask completions
  int violations = 0;      // check_constraints count at this sample
  long generated = 0;      // cumulative requests generated
  long serviced = 0;       // cumulative requests serviced
  long outstanding = 0;    // in queue + in flight + in service
  // per slice: {active UPFs serving the slice, idle UPFs in its home range,
  // elevated UPFs currently serving it}
  std::vector<std::array<int, 3>> slice_counts;
};

struct TaskResponse {
  int task_id = 0;
  std::string name;
  long count = 0;
  double mean_e2e_s = 0.0;  // transmission + queuing wait + service
};

struct SimReport {
  std::string scenario_name;
  std::string algo;
  uint64_t seed = 0;
  double duration_s = 0.0;
  double warmup_s = 0.0;
  double sample_period_s = 0.0;
  int n = 0;
  int r = 0;
  std::vector<MetricsSample> samples;
  std::vector<TaskResponse> response_by_task;
  long total_completed = 0;
  long saturation_events = 0;
  long total_generated = 0;
  long total_serviced = 0;
  long departures = 0;
  double mean_queuing_delay_s = 0.0;  // over all departures
  // aggregates over samples with t > warmup that had in-use UPFs
  bool has_steady = false;
  double steady_mean_load = 0.0;
  double steady_std_load = 0.0;
};

// Deterministic single-threaded event loop: Poisson request generation per
// in-service UE, exponential FIFO service per UPF, per-request transmission
// delay, periodic status polls feeding the chosen scheduler, periodic metric
// samples. Identical (config, algo, seed) yields an identical report.
SimReport run(const ScenarioConfig& config, std::string_view algo);

}  // namespace slicesim
