#include "slicesim/schedulers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace slicesim {

void SchedulerState::insert_waitlist(int ue_id, double priority) {
  WaitEntry e{ue_id, priority};
  auto pos = std::lower_bound(waitlist.begin(), waitlist.end(), e,
                              [](const WaitEntry& a, const WaitEntry& b) {
                                if (a.priority != b.priority) return a.priority > b.priority;
                                return a.ue_id < b.ue_id;
                              });
  waitlist.insert(pos, e);
}

double slice_objective(const AssignmentState& state, const QueueParams& params, int k,
                       VarianceForm form) {
  return params.w1 * slice_latency_mean(state, params, k) +
         params.w2 * slice_latency_variance(state, params, k, form);
}

namespace {

int slice_of_ue(const SchedulerState& state, int ue) {
  return state.pool.slice_of_task(state.ue_task[ue - 1]);
}

double mean_active_load(const SchedulerState& state, const QueueParams& params,
                        const std::vector<int>& active) {
  double sum = 0.0;
  for (int j : active) sum += upf_load(state.assignment, params, j);
  return sum / static_cast<double>(active.size());
}

void commit(SchedulerState& state, int ue, int upf, std::vector<Commitment>& out) {
  state.assignment.attach(ue, upf);
  state.pool.attach_ue(upf, ue);
  state.ue_prev_upf[ue - 1] = upf;
  out.push_back({ue, upf});
}

// Steps 10-12: acquire from the slice's own range, else elevate from a lower
// range. Returns nullptr on total saturation.
Upf* pull_upf(SchedulerState& state, int k) {
  Upf* u = state.pool.acquire(k);
  if (!u) u = state.pool.elevate(k);
  return u;
}

void erase_committed(SchedulerState& state, const std::vector<Commitment>& committed) {
  for (const Commitment& c : committed) {
    auto it = std::find_if(state.waitlist.begin(), state.waitlist.end(),
                           [&](const WaitEntry& e) { return e.ue_id == c.ue_id; });
    if (it != state.waitlist.end()) state.waitlist.erase(it);
  }
}

class DansmScheduler final : public Scheduler {
 public:
  std::string_view name() const override { return "dansm"; }

  std::vector<Commitment> step(SchedulerState& state, const QueueParams& params) override {
    state.objective_evals = 0;
    std::vector<Commitment> committed;
    const auto snapshot = state.waitlist;
    for (const WaitEntry& entry : snapshot) {
      const int ue = entry.ue_id;
      const double lambda = params.lambda[ue - 1];
      const int k = slice_of_ue(state, ue);
      const auto active = state.pool.active_in_slice(k);

      bool overload = true;
      if (!active.empty() &&
          mean_active_load(state, params, active) <= state.tau * params.mu) {
        // Step 7: argmin of the slice objective over candidate attachments.
        int best = 0;
        double best_f = std::numeric_limits<double>::infinity();
        for (int j : active) {
          if (upf_load(state.assignment, params, j) + lambda >= params.mu) continue;
          state.assignment.attach(ue, j);
          const double f = slice_objective(state.assignment, params, k);
          state.assignment.detach(ue);
          ++state.objective_evals;
          if (f < best_f) {
            best_f = f;
            best = j;
          }
        }
        if (best != 0) {
          // Step 8: recheck the average with the pre-assignment in place.
          state.assignment.attach(ue, best);
          const double avg_new = mean_active_load(state, params, active);
          state.assignment.detach(ue);
          if (avg_new < state.tau * params.mu) {
            commit(state, ue, best, committed);
            state.pool.release_idle(k);
            overload = false;
          }
        }
      }
      if (overload) {
        if (lambda >= params.mu) {
          ++state.saturation_events;
          continue;
        }
        Upf* u = pull_upf(state, k);
        if (!u) {
          ++state.saturation_events;
          continue;
        }
        commit(state, ue, u->id, committed);
        state.pool.release_idle(k);
      }
    }
    erase_committed(state, committed);
    return committed;
  }
};

class FfdScheduler final : public Scheduler {
 public:
  std::string_view name() const override { return "ffd"; }

  std::vector<Commitment> step(SchedulerState& state, const QueueParams& params) override {
    std::vector<Commitment> committed;
    const auto snapshot = state.waitlist;
    for (const WaitEntry& entry : snapshot) {
      const int ue = entry.ue_id;
      const double lambda = params.lambda[ue - 1];
      const int k = slice_of_ue(state, ue);

      int chosen = 0;
      for (int j : state.pool.active_in_slice(k)) {
        if (params.mu - upf_load(state.assignment, params, j) > lambda) {
          chosen = j;
          break;
        }
      }
      if (chosen == 0 && lambda < params.mu) {
        if (Upf* u = pull_upf(state, k)) chosen = u->id;
      }
      if (chosen == 0) {
        ++state.saturation_events;
        continue;
      }
      commit(state, ue, chosen, committed);
      state.pool.release_idle(k);
    }
    erase_committed(state, committed);
    return committed;
  }
};

class BfdScheduler final : public Scheduler {
 public:
  std::string_view name() const override { return "bfd"; }

  std::vector<Commitment> step(SchedulerState& state, const QueueParams& params) override {
    std::vector<Commitment> committed;
    const auto snapshot = state.waitlist;
    for (const WaitEntry& entry : snapshot) {
      const int ue = entry.ue_id;
      const double lambda = params.lambda[ue - 1];
      const int k = slice_of_ue(state, ue);

      int chosen = 0;
      double best_residual = std::numeric_limits<double>::infinity();
      for (int j : state.pool.active_in_slice(k)) {
        const double residual = params.mu - upf_load(state.assignment, params, j) - lambda;
        if (residual <= 0.0) continue;  // does not fit
        if (residual < best_residual) {
          best_residual = residual;
          chosen = j;
        }
      }
      if (chosen == 0 && lambda < params.mu) {
        if (Upf* u = pull_upf(state, k)) chosen = u->id;
      }
      if (chosen == 0) {
        ++state.saturation_events;
        continue;
      }
      commit(state, ue, chosen, committed);
      state.pool.release_idle(k);
    }
    erase_committed(state, committed);
    return committed;
  }
};

// Reconstructed baseline: greedy per-UE choice minimizing
// w1 * (mean active load in the slice after the attachment)
// + w2 * (1 if the UE moves off its previous UPF, else 0).
// The cited algorithm's internals are not published; this reconstruction is
// labeled as such in the README.
class MgaScheduler final : public Scheduler {
 public:
  std::string_view name() const override { return "mga"; }

  std::vector<Commitment> step(SchedulerState& state, const QueueParams& params) override {
    std::vector<Commitment> committed;
    const auto snapshot = state.waitlist;
    for (const WaitEntry& entry : snapshot) {
      const int ue = entry.ue_id;
      const double lambda = params.lambda[ue - 1];
      const int k = slice_of_ue(state, ue);
      const int prev = state.ue_prev_upf[ue - 1];
      const auto active = state.pool.active_in_slice(k);

      double active_sum = 0.0;
      for (int j : active) active_sum += upf_load(state.assignment, params, j);
      const auto m = static_cast<double>(active.size());

      int chosen = 0;
      bool chosen_is_new = false;
      double best_cost = std::numeric_limits<double>::infinity();
      for (int j : active) {
        if (upf_load(state.assignment, params, j) + lambda >= params.mu) continue;
        const double cost =
            params.w1 * (active_sum + lambda) / m + params.w2 * (j != prev ? 1.0 : 0.0);
        if (cost < best_cost) {
          best_cost = cost;
          chosen = j;
        }
      }
      // Pulling an idle UPF from the home range is also a candidate; it
      // lowers the resulting mean load.
      const SliceRange& rng = state.pool.range(k);
      for (int j = rng.first; j <= rng.last && lambda < params.mu; ++j) {
        if (!state.pool.upf(j).idle()) continue;
        const double cost = params.w1 * (active_sum + lambda) / (m + 1.0) +
                            params.w2 * (j != prev ? 1.0 : 0.0);
        if (cost < best_cost) {
          best_cost = cost;
          chosen = j;
          chosen_is_new = true;
        }
        break;  // lowest-id idle only
      }
      if (chosen == 0 && lambda < params.mu) {
        if (Upf* u = state.pool.elevate(k)) {
          chosen = u->id;
          chosen_is_new = false;  // elevate() already activated it
        }
      } else if (chosen_is_new) {
        state.pool.acquire(k);  // activates exactly the lowest-id idle UPF
      }
      if (chosen == 0) {
        ++state.saturation_events;
        continue;
      }
      commit(state, ue, chosen, committed);
      state.pool.release_idle(k);
    }
    erase_committed(state, committed);
    return committed;
  }
};

}  // namespace

std::unique_ptr<Scheduler> make_scheduler(std::string_view algo) {
  if (algo == "dansm") return std::make_unique<DansmScheduler>();
  if (algo == "ffd") return std::make_unique<FfdScheduler>();
  if (algo == "bfd") return std::make_unique<BfdScheduler>();
  if (algo == "mga") return std::make_unique<MgaScheduler>();
  throw std::invalid_argument("unknown algorithm: " + std::string(algo));
}

}  // namespace slicesim
