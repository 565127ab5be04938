#include "slicesim/oracle.hpp"

#include <limits>

#include "slicesim/task_graph.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace slicesim {

StaticInstance StaticInstance::from_scenario(const ScenarioConfig& config) {
  const auto priorities = compute_task_priorities(config.graph);
  const UpfPool pool = UpfPool::init(priorities, config.alpha, config.mu);
  StaticInstance inst;
  inst.params = config.queue_params();
  inst.ranges = pool.ranges();
  for (const auto& ue : config.ues) {
    inst.ue_slice.push_back(pool.slice_of_task(ue.initial_task));
  }
  return inst;
}

namespace {

struct SearchCtx {
  const StaticInstance& inst;
  VarianceForm form;
  AssignmentState state;
  std::vector<double> theta;  // per UPF, index j-1
  std::vector<int> choice;    // UPF id per UE
  OracleResult best;

  explicit SearchCtx(const StaticInstance& inst_, VarianceForm form_)
      : inst(inst_), form(form_),
        state(inst_.num_ues(), inst_.num_upfs(), inst_.ranges),
        theta(inst_.num_upfs(), 0.0), choice(inst_.num_ues(), 0) {
    best.objective = std::numeric_limits<double>::infinity();
  }

  // Depth-first over UEs in order; capacity pruned incrementally.
  void search(int ue) {
    const int n = inst.num_ues();
    if (ue > n) {
      ++best.evaluated;
      const double f = objective(state, inst.params, form);
      if (f < best.objective) {
        best.objective = f;
        best.assignment = choice;
      }
      return;
    }
    const SliceRange& rng = inst.ranges[inst.ue_slice[ue - 1] - 1];
    const double lambda = inst.params.lambda[ue - 1];
    for (int j = rng.first; j <= rng.last; ++j) {
      if (theta[j - 1] + lambda >= inst.params.mu) continue;
      theta[j - 1] += lambda;
      state.attach(ue, j);
      choice[ue - 1] = j;
      search(ue + 1);
      state.detach(ue);
      theta[j - 1] -= lambda;
    }
  }
};

void check_caps(const StaticInstance& inst) {
  if (inst.num_ues() > inst.max_ues || inst.num_upfs() > inst.max_upfs) {
    throw TooLargeError("instance exceeds enumeration caps (n=" +
                        std::to_string(inst.num_ues()) + ", r=" +
                        std::to_string(inst.num_upfs()) + ")");
  }
  if (inst.num_ues() == 0 || inst.num_upfs() == 0) {
    throw std::invalid_argument("empty instance");
  }
}

bool better(const OracleResult& a, const OracleResult& b) {
  if (a.objective != b.objective) return a.objective < b.objective;
  return a.assignment < b.assignment;
}

}  // namespace

OracleResult brute_force_min_serial(const StaticInstance& inst, VarianceForm form) {
  check_caps(inst);
  SearchCtx ctx(inst, form);
  ctx.search(1);
  if (ctx.best.assignment.empty()) {
    throw InfeasibleError("no assignment satisfies the capacity constraint");
  }
  return ctx.best;
}

OracleResult brute_force_min(const StaticInstance& inst, VarianceForm form) {
  check_caps(inst);
  const SliceRange& first_rng = inst.ranges[inst.ue_slice[0] - 1];
  const int width = first_rng.size();

  std::vector<OracleResult> partial(width);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int c = 0; c < width; ++c) {
    const int j = first_rng.first + c;
    SearchCtx ctx(inst, form);
    const double lambda = inst.params.lambda[0];
    partial[c].objective = std::numeric_limits<double>::infinity();
    if (ctx.theta[j - 1] + lambda >= inst.params.mu) continue;
    ctx.theta[j - 1] += lambda;
    ctx.state.attach(1, j);
    ctx.choice[0] = j;
    ctx.search(2);
    partial[c] = ctx.best;
  }

  OracleResult best;
  best.objective = std::numeric_limits<double>::infinity();
  long evaluated = 0;
  for (const OracleResult& p : partial) {
    evaluated += p.evaluated;
    if (p.assignment.empty()) continue;
    if (best.assignment.empty() || better(p, best)) best = p;
  }
  best.evaluated = evaluated;
  if (best.assignment.empty()) {
    throw InfeasibleError("no assignment satisfies the capacity constraint");
  }
  return best;
}

}  // namespace slicesim
