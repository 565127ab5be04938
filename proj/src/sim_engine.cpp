#include "slicesim/sim_engine.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <queue>

#include "slicesim/rng.hpp"
#include "slicesim/schedulers.hpp"

namespace slicesim {

namespace {

struct Request {
  int ue = 0;
  int task = 0;
  int upf = 0;
  double t_created = 0.0;
  double trans_delay = 0.0;
  double t_enqueued = 0.0;
};

enum class EvType { Gen, Enqueue, ServiceDone, Poll, Sample };

struct Event {
  double t = 0.0;
  long seq = 0;
  EvType type = EvType::Poll;
  int id = 0;  // UE for Gen, UPF for Enqueue/ServiceDone
  Request req;
};

struct EventLater {
  bool operator()(const Event& a, const Event& b) const {
    if (a.t != b.t) return a.t > b.t;
    return a.seq > b.seq;
  }
};

struct UeRt {
  double lambda = 0.0;
  int workflow_pos = 0;  // index into the topo-ordered task sequence
  bool pending_free = true;
  bool in_waitlist = false;
  bool in_service = false;
  long remaining_gen = 0;
  long outstanding = 0;
  long serviced = 0;
  long work = 0;
  double arrival_time = 0.0;
  std::mt19937_64 rng;
};

struct UpfRt {
  std::deque<Request> queue;
  bool busy = false;
  Request in_service;
  double service_start = 0.0;
  std::mt19937_64 rng;
};

struct TaskAcc {
  long count = 0;
  double sum_e2e = 0.0;
};

class Engine {
 public:
  Engine(const ScenarioConfig& config, std::string_view algo)
      : cfg_(config), params_(config.queue_params()), scheduler_(make_scheduler(algo)) {
    cfg_.validate();

    const auto priorities = compute_task_priorities(cfg_.graph);
    sched_.priorities = priorities;
    sched_.pool = UpfPool::init(priorities, cfg_.alpha, cfg_.mu);
    sched_.tau = cfg_.tau;
    const int n = cfg_.num_ues();
    const int r = sched_.pool.size();
    sched_.assignment = AssignmentState(n, r, sched_.pool.ranges());
    sched_.ue_task.assign(n, 0);
    sched_.ue_prev_upf.assign(n, 0);

    for (const auto& e : topo_sort(cfg_.graph)) task_order_.push_back(e.task_id);

    ues_.resize(n);
    for (int i = 0; i < n; ++i) {
      ues_[i].lambda = cfg_.ues[i].lambda;
      const auto pos = std::find(task_order_.begin(), task_order_.end(),
                                 cfg_.ues[i].initial_task);
      ues_[i].workflow_pos = static_cast<int>(pos - task_order_.begin());
      sched_.ue_task[i] = cfg_.ues[i].initial_task;
      ues_[i].rng = make_stream(cfg_.seed, 0x0e000000ULL + i + 1);
    }
    upfs_.resize(r);
    for (int j = 0; j < r; ++j) {
      upfs_[j].rng = make_stream(cfg_.seed, 0x0f000000ULL + j + 1);
    }

    report_.scenario_name = cfg_.name;
    report_.algo = std::string(algo);
    report_.seed = cfg_.seed;
    report_.duration_s = cfg_.duration_s;
    report_.warmup_s = cfg_.warmup_s;
    report_.sample_period_s = cfg_.sample_period_s;
    report_.n = n;
    report_.r = r;
  }

  SimReport run() {
    push({0.0, 0, EvType::Poll, 0, {}});
    if (cfg_.sample_period_s <= cfg_.duration_s) {
      push({cfg_.sample_period_s, 0, EvType::Sample, 0, {}});
    }
    while (!events_.empty()) {
      Event ev = events_.top();
      if (ev.t > cfg_.duration_s) break;
      events_.pop();
      switch (ev.type) {
        case EvType::Gen: on_gen(ev); break;
        case EvType::Enqueue: on_enqueue(ev); break;
        case EvType::ServiceDone: on_service_done(ev); break;
        case EvType::Poll: on_poll(ev.t); break;
        case EvType::Sample: on_sample(ev.t); break;
      }
    }
    finalize();
    return std::move(report_);
  }

 private:
  void push(Event ev) {
    ev.seq = next_seq_++;
    events_.push(ev);
  }

  double exp_draw(std::mt19937_64& rng, double rate) {
    return std::exponential_distribution<double>(rate)(rng);
  }

  void on_gen(const Event& ev) {
    UeRt& ue = ues_[ev.id - 1];
    if (!ue.in_service || ue.remaining_gen <= 0) return;
    --ue.remaining_gen;
    ++ue.outstanding;
    ++total_generated_;
    const int upf = *sched_.assignment.assigned_upf(ev.id);
    Request req;
    req.ue = ev.id;
    req.task = sched_.ue_task[ev.id - 1];
    req.upf = upf;
    req.t_created = ev.t;
    req.trans_delay = transmission_time(params_.packet(ev.id, upf), params_.rate(ev.id, upf));
    push({ev.t + req.trans_delay, 0, EvType::Enqueue, upf, req});
    if (ue.remaining_gen > 0) {
      push({ev.t + exp_draw(ue.rng, ue.lambda), 0, EvType::Gen, ev.id, {}});
    }
  }

  void on_enqueue(const Event& ev) {
    UpfRt& upf = upfs_[ev.id - 1];
    Request req = ev.req;
    req.t_enqueued = ev.t;
    if (upf.busy) {
      upf.queue.push_back(req);
    } else {
      start_service(ev.id, req, ev.t);
    }
  }

  void start_service(int upf_id, const Request& req, double t) {
    UpfRt& upf = upfs_[upf_id - 1];
    upf.busy = true;
    upf.in_service = req;
    upf.service_start = t;
    push({t + exp_draw(upf.rng, cfg_.mu), 0, EvType::ServiceDone, upf_id, {}});
  }

  void on_service_done(const Event& ev) {
    UpfRt& upf = upfs_[ev.id - 1];
    const Request req = upf.in_service;
    upf.busy = false;

    const double wait = upf.service_start - req.t_enqueued;
    sum_wait_ += wait;
    ++departures_;
    TaskAcc& acc = task_acc_[req.task];
    ++acc.count;
    acc.sum_e2e += ev.t - req.t_created;
    ++total_serviced_;

    UeRt& ue = ues_[req.ue - 1];
    --ue.outstanding;
    ++ue.serviced;
    if (ue.in_service && ue.serviced >= ue.work && ue.outstanding == 0) {
      complete_subtask(req.ue, req.upf);
    }
    if (!upf.queue.empty()) {
      const Request next = upf.queue.front();
      upf.queue.pop_front();
      start_service(ev.id, next, ev.t);
    }
  }

  void complete_subtask(int ue_id, int upf_id) {
    UeRt& ue = ues_[ue_id - 1];
    ue.in_service = false;
    ue.pending_free = true;
    ++total_completed_;
    sched_.assignment.detach(ue_id);
    sched_.pool.detach_ue(upf_id, ue_id);
    // advance the workflow, wrapping back to the first task
    ue.workflow_pos = (ue.workflow_pos + 1) % static_cast<int>(task_order_.size());
    sched_.ue_task[ue_id - 1] = task_order_[ue.workflow_pos];
  }

  void on_poll(double t) {
    // UEs whose buffer drained go Free and join the waitlist.
    for (int i = 1; i <= cfg_.num_ues(); ++i) {
      UeRt& ue = ues_[i - 1];
      if (!ue.pending_free || ue.in_waitlist) continue;
      ue.pending_free = false;
      ue.in_waitlist = true;
      ue.arrival_time = t;
      const int task = sched_.ue_task[i - 1];
      const int tp = sched_.priorities[task - 1].tp;
      sched_.insert_waitlist(i, compute_ue_priority(tp, t));
    }

    const auto commitments = scheduler_->step(sched_, params_);
    for (const Commitment& c : commitments) {
      UeRt& ue = ues_[c.ue_id - 1];
      ue.in_waitlist = false;
      ue.in_service = true;
      ue.work = cfg_.work_for_task(sched_.ue_task[c.ue_id - 1]);
      ue.remaining_gen = ue.work;
      ue.serviced = 0;
      push({t + exp_draw(ue.rng, ue.lambda), 0, EvType::Gen, c.ue_id, {}});
    }
    for (int k = 1; k <= sched_.pool.num_slices(); ++k) sched_.pool.release_idle(k);

    if (t + cfg_.poll_period_s <= cfg_.duration_s) {
      push({t + cfg_.poll_period_s, 0, EvType::Poll, 0, {}});
    }
  }

  void on_sample(double t) {
    MetricsSample s;
    s.t = t;
    s.upf_load.resize(report_.r);
    for (int j = 1; j <= report_.r; ++j) {
      s.upf_load[j - 1] = upf_load(sched_.assignment, params_, j);
    }
    std::vector<double> inuse;
    for (int j = 1; j <= report_.r; ++j) {
      if (!sched_.pool.upf(j).idle()) inuse.push_back(s.upf_load[j - 1]);
    }
    if (!inuse.empty()) {
      double mean = 0.0;
      for (double v : inuse) mean += v;
      mean /= static_cast<double>(inuse.size());
      double var = 0.0;
      for (double v : inuse) var += (v - mean) * (v - mean);
      var /= static_cast<double>(inuse.size());
      s.has_inuse = true;
      s.mean_inuse = mean;
      s.std_inuse = std::sqrt(var);
    }
    s.completed = total_completed_;
    s.violations =
        static_cast<int>(check_constraints(sched_.assignment, params_, sched_.pool).size());
    s.generated = total_generated_;
    s.serviced = total_serviced_;
    long outstanding = 0;
    for (const UeRt& ue : ues_) outstanding += ue.outstanding;
    s.outstanding = outstanding;
    s.slice_counts.resize(sched_.pool.num_slices());
    for (int k = 1; k <= sched_.pool.num_slices(); ++k) {
      int active = 0;
      int elevated = 0;
      for (int j : sched_.pool.active_in_slice(k)) {
        ++active;
        if (sched_.pool.upf(j).elevated) ++elevated;
      }
      int idle = 0;
      const SliceRange& rng = sched_.pool.range(k);
      for (int j = rng.first; j <= rng.last; ++j) {
        if (sched_.pool.upf(j).idle()) ++idle;
      }
      s.slice_counts[k - 1] = {active, idle, elevated};
    }
    report_.samples.push_back(std::move(s));

    if (t + cfg_.sample_period_s <= cfg_.duration_s) {
      push({t + cfg_.sample_period_s, 0, EvType::Sample, 0, {}});
    }
  }

  void finalize() {
    for (const auto& [task, acc] : task_acc_) {
      TaskResponse tr;
      tr.task_id = task;
      tr.name = cfg_.graph.tasks[task - 1].name;
      tr.count = acc.count;
      tr.mean_e2e_s = acc.count ? acc.sum_e2e / acc.count : 0.0;
      report_.response_by_task.push_back(tr);
    }
    std::sort(report_.response_by_task.begin(), report_.response_by_task.end(),
              [](const TaskResponse& a, const TaskResponse& b) {
                return a.task_id < b.task_id;
              });
    report_.total_completed = total_completed_;
    report_.saturation_events = sched_.saturation_events;
    report_.total_generated = total_generated_;
    report_.total_serviced = total_serviced_;
    report_.departures = departures_;
    report_.mean_queuing_delay_s = departures_ ? sum_wait_ / departures_ : 0.0;

    double sum_mean = 0.0;
    double sum_std = 0.0;
    long count = 0;
    for (const MetricsSample& s : report_.samples) {
      if (s.t > cfg_.warmup_s && s.has_inuse) {
        sum_mean += s.mean_inuse;
        sum_std += s.std_inuse;
        ++count;
      }
    }
    if (count > 0) {
      report_.has_steady = true;
      report_.steady_mean_load = sum_mean / count;
      report_.steady_std_load = sum_std / count;
    }
  }

  ScenarioConfig cfg_;
  QueueParams params_;
  std::unique_ptr<Scheduler> scheduler_;
  SchedulerState sched_;
  std::vector<int> task_order_;
  std::vector<UeRt> ues_;
  std::vector<UpfRt> upfs_;
  std::priority_queue<Event, std::vector<Event>, EventLater> events_;
  long next_seq_ = 0;
  long total_generated_ = 0;
  long total_serviced_ = 0;
  long total_completed_ = 0;
  long departures_ = 0;
  double sum_wait_ = 0.0;
  std::map<int, TaskAcc> task_acc_;
  SimReport report_;
};

}  // namespace

SimReport run(const ScenarioConfig& config, std::string_view algo) {
  Engine engine(config, algo);
  return engine.run();
}

}  // namespace slicesim
