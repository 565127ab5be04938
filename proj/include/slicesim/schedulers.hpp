#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "slicesim/queue_model.hpp"
#include "slicesim/slice_pool.hpp"
#include "slicesim/task_graph.hpp"

namespace slicesim {

struct WaitEntry {
  int ue_id = 0;
  double priority = 0.0;
};

struct Commitment {
  int ue_id = 0;
  int upf_id = 0;
};

// Shared mutable state of one scheduler loop: the priority-ordered waitlist,
// the assignment matrix, and the UPF pool. Owned by a single run.
struct SchedulerState {
  std::vector<WaitEntry> waitlist;  // descending priority, ties by ascending ue id
  AssignmentState assignment;
  UpfPool pool;
  double tau = 0.8;
  TaskPriorityList priorities;
  std::vector<int> ue_task;      // current task per UE, index ue_id-1
  std::vector<int> ue_prev_upf;  // last UPF the UE was attached to, 0 = none

  // instrumentation
  long objective_evals = 0;   // candidate evaluations in the last step
  long saturation_events = 0;

  void insert_waitlist(int ue_id, double priority);
};

class Scheduler {
 public:
  virtual ~Scheduler() = default;
  // Processes the waitlist head-to-tail once. Committed UEs are attached in
  // the assignment matrix and pool and removed from the waitlist; UEs that
  // cannot be placed stay.
  virtual std::vector<Commitment> step(SchedulerState& state, const QueueParams& params) = 0;
  virtual std::string_view name() const = 0;
};

// algo: "dansm", "ffd", "bfd" or "mga". Throws std::invalid_argument.
std::unique_ptr<Scheduler> make_scheduler(std::string_view algo);

// Slice-local objective contribution w1*G(X_k) + w2*V(X_k); the other slices
// are constant across candidate attachments, so this preserves the argmin.
double slice_objective(const AssignmentState& state, const QueueParams& params, int k,
                       VarianceForm form = VarianceForm::PerTerm);

}  // namespace slicesim
