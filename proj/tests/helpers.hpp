#pragma once

#include <random>
#include <vector>

#include "slicesim/scenario.hpp"
#include "slicesim/task_graph.hpp"

namespace slicesim::testing {

inline TaskGraph chain(int n) {
  TaskGraph g;
  for (int i = 1; i <= n; ++i) g.tasks.push_back({i, "task" + std::to_string(i)});
  for (int i = 1; i < n; ++i) g.edges.emplace_back(i, i + 1);
  return g;
}

inline TaskGraph diamond() {
  TaskGraph g;
  for (int i = 1; i <= 4; ++i) g.tasks.push_back({i, "t" + std::to_string(i)});
  g.edges = {{1, 2}, {1, 3}, {2, 4}, {3, 4}};
  return g;
}

// Random DAG: edges only from lower to higher id, so acyclic by construction.
inline TaskGraph random_dag(std::mt19937_64& rng, int max_nodes) {
  std::uniform_int_distribution<int> nd(1, max_nodes);
  const int n = nd(rng);
  TaskGraph g;
  for (int i = 1; i <= n; ++i) g.tasks.push_back({i, ""});
  std::bernoulli_distribution edge(0.3);
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) {
      if (edge(rng)) g.edges.emplace_back(u, v);
    }
  }
  return g;
}

// Small scenario on a chain DAG with a flat transmission table.
inline ScenarioConfig tiny_scenario(int tasks, int ues, double lambda, double mu,
                                    double duration) {
  ScenarioConfig cfg;
  cfg.name = "tiny";
  cfg.graph = chain(tasks);
  for (int i = 1; i <= ues; ++i) {
    cfg.ues.push_back({i, lambda, (i - 1) % tasks + 1});
  }
  cfg.alpha = 1;
  cfg.mu = mu;
  cfg.duration_s = duration;
  cfg.sample_period_s = 1.0;
  cfg.poll_period_s = 1.0;
  int tp_sum = 0;
  for (const auto& p : compute_task_priorities(cfg.graph)) tp_sum += p.tp;
  const int r = cfg.alpha * tp_sum;
  cfg.packet_bits.assign(static_cast<size_t>(ues) * r, 0.0);
  cfg.link_rate.assign(static_cast<size_t>(ues) * r, 1.0);
  return cfg;
}

}  // namespace slicesim::testing
