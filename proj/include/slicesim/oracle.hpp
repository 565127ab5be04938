#pragma once

#include <stdexcept>
#include <vector>

#include "slicesim/queue_model.hpp"
#include "slicesim/scenario.hpp"
#include "slicesim/slice_pool.hpp"

namespace slicesim {

class TooLargeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One-shot snapshot of the assignment problem: every UE must be placed on a
// UPF inside its task's slice range.
struct StaticInstance {
  QueueParams params;
  std::vector<int> ue_slice;        // slice index per UE
  std::vector<SliceRange> ranges;   // per slice
  int max_ues = 8;                  // enumeration caps; exceeding is an error
  int max_upfs = 6;

  int num_ues() const { return static_cast<int>(ue_slice.size()); }
  int num_upfs() const { return ranges.empty() ? 0 : ranges.back().last; }

  // Derives the instance from a scenario: each UE sits at its initial task.
  static StaticInstance from_scenario(const ScenarioConfig& config);
};

struct OracleResult {
  std::vector<int> assignment;  // UPF id per UE
  double objective = 0.0;
  long evaluated = 0;           // feasible assignments examined
};

// Exhaustive minimizer of the objective over every feasible assignment.
// UE-major, UPF-minor enumeration; ties resolve to the lexicographically
// smallest assignment. Exact by construction, never sampled.
OracleResult brute_force_min(const StaticInstance& instance,
                             VarianceForm form = VarianceForm::PerTerm);

// Serial reference implementation, kept for testing and benchmarking the
// OpenMP enumeration above.
OracleResult brute_force_min_serial(const StaticInstance& instance,
                                    VarianceForm form = VarianceForm::PerTerm);

}  // namespace slicesim
