#include "slicesim/task_graph.hpp"

#include <algorithm>
#include <queue>
#include <unordered_set>

namespace slicesim {

void validate_graph(const TaskGraph& graph) {
  if (graph.tasks.empty()) {
    throw GraphError("graph has no tasks");
  }
  std::unordered_set<int> ids;
  for (const auto& t : graph.tasks) {
    if (!ids.insert(t.id).second) {
      throw GraphError("duplicate task id " + std::to_string(t.id));
    }
  }
  const int n = static_cast<int>(graph.tasks.size());
  for (int id = 1; id <= n; ++id) {
    if (!ids.count(id)) {
      throw GraphError("task ids must be contiguous from 1; missing " +
                       std::to_string(id));
    }
  }
  for (const auto& [u, v] : graph.edges) {
    if (!ids.count(u) || !ids.count(v)) {
      throw GraphError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                       ") references unknown task");
    }
  }
}

std::vector<TopoEntry> topo_sort(const TaskGraph& graph) {
  validate_graph(graph);
  const int n = static_cast<int>(graph.tasks.size());
  std::vector<int> indegree(n + 1, 0);
  std::vector<std::vector<int>> succ(n + 1);
  for (const auto& [u, v] : graph.edges) {
    succ[u].push_back(v);
    ++indegree[v];
  }
  for (auto& s : succ) {
    std::sort(s.begin(), s.end());
  }

  // Min-heap on task id keeps the visiting order deterministic.
  std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
  std::vector<int> depth(n + 1, 0);
  for (int id = 1; id <= n; ++id) {
    if (indegree[id] == 0) {
      ready.push(id);
    }
  }

  std::vector<TopoEntry> out;
  out.reserve(n);
  while (!ready.empty()) {
    const int u = ready.top();
    ready.pop();
    out.push_back({u, depth[u]});
    for (int v : succ[u]) {
      depth[v] = std::max(depth[v], depth[u] + 1);
      if (--indegree[v] == 0) {
        ready.push(v);
      }
    }
  }
  if (static_cast<int>(out.size()) != n) {
    throw CyclicGraphError("graph contains a cycle");
  }
  std::stable_sort(out.begin(), out.end(), [](const TopoEntry& a, const TopoEntry& b) {
    return a.depth != b.depth ? a.depth < b.depth : a.task_id < b.task_id;
  });
  return out;
}

TaskPriorityList compute_task_priorities(const TaskGraph& graph) {
  const auto order = topo_sort(graph);
  int max_depth = 0;
  for (const auto& e : order) {
    max_depth = std::max(max_depth, e.depth);
  }
  TaskPriorityList prios(order.size());
  for (const auto& e : order) {
    prios[e.task_id - 1] = {e.task_id, max_depth + 1 - e.depth};
  }
  return prios;
}

double compute_ue_priority(int tp, double arrival_time_s) {
  const double clamped = std::max(arrival_time_s, 1.0);
  return static_cast<double>(tp) + 1.0 / clamped;
}

}  // namespace slicesim
