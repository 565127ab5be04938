#pragma once

#include <map>
#include <string>
#include <vector>

#include "slicesim/sim_engine.hpp"

namespace slicesim {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AlgoSummary {
  std::string algo;
  double median_completions = 0.0;
  double median_steady_mean_load = 0.0;
  double median_steady_std_load = 0.0;
  // median across seeds of the per-run mean end-to-end response, per task
  std::map<int, double> median_response_by_task;
};

struct ComparisonSummary {
  std::string scenario_name;
  std::vector<uint64_t> seeds;
  std::vector<AlgoSummary> algos;
  // "a/b" -> median_completions(a) / median_completions(b) - 1
  std::map<std::string, double> completion_ratios;
  std::vector<SimReport> runs;  // every (algo, seed) run, algo-major order
};

// Full report as pretty JSON / as the fixed-schema per-sample CSV
// (t,algo,upf_id,theta,mean,std,completed). Byte-stable for identical runs.
std::string report_to_json(const SimReport& report);
std::string report_to_csv(const SimReport& report);

std::string summary_to_json(const ComparisonSummary& summary);
std::string summary_to_text(const ComparisonSummary& summary);

// Runs every (algo, seed) pair on the same scenario (traffic realizations are
// shared per seed) and aggregates medians across seeds. Runs fan out across
// threads; aggregation is order-insensitive.
ComparisonSummary compare(const ScenarioConfig& config,
                          const std::vector<std::string>& algos,
                          const std::vector<uint64_t>& seeds);

// Writes load_timeseries.csv, response_time_by_subtask.csv and
// completions_timeseries.csv into out_dir. Empty input yields headers-only
// files. Re-emission is byte-identical.
void emit_plot_data(const std::vector<SimReport>& reports, const std::string& out_dir);

SimReport report_from_json(const std::string& text);

}  // namespace slicesim
