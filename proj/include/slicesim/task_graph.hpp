#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace slicesim {

// Workflow DAG of repair subtasks. Task ids are 1-based and contiguous.
struct TaskGraph {
  struct Task {
    int id = 0;
    std::string name;
  };
  std::vector<Task> tasks;
  std::vector<std::pair<int, int>> edges;  // from -> to dependency pairs
};

struct TopoEntry {
  int task_id = 0;
  int depth = 0;  // length of the longest dependency path ending at the task
};

struct TaskPriority {
  int task_id = 0;
  int tp = 0;
};
using TaskPriorityList = std::vector<TaskPriority>;

class CyclicGraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Checks id uniqueness/contiguity and edge endpoints; throws GraphError.
void validate_graph(const TaskGraph& graph);

// Kahn's algorithm. Output ordered by (depth asc, task_id asc).
// Throws CyclicGraphError if nodes remain unvisited.
std::vector<TopoEntry> topo_sort(const TaskGraph& graph);

// tp(v) = max_depth + 1 - depth(v); earlier tasks rank higher.
// Entries ordered by task_id.
TaskPriorityList compute_task_priorities(const TaskGraph& graph);

// UE priority = tp + 1/arrival_time, with arrival_time clamped to >= 1 tick
// (1 s) to absorb the t=0 singularity.
double compute_ue_priority(int tp, double arrival_time_s);

}  // namespace slicesim
