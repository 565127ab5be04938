#include "slicesim/slice_pool.hpp"

#include <algorithm>
#include <stdexcept>

namespace slicesim {

UpfPool UpfPool::init(const TaskPriorityList& priorities, int alpha, double mu) {
  if (alpha < 1) {
    throw std::invalid_argument("alpha must be >= 1");
  }
  if (priorities.empty()) {
    throw std::invalid_argument("priority list is empty");
  }

  TaskPriorityList order = priorities;
  std::sort(order.begin(), order.end(), [](const TaskPriority& a, const TaskPriority& b) {
    return a.tp != b.tp ? a.tp > b.tp : a.task_id < b.task_id;
  });

  UpfPool pool;
  pool.alpha_ = alpha;
  int next = 1;
  for (int k = 0; k < static_cast<int>(order.size()); ++k) {
    const int width = alpha * order[k].tp;
    pool.ranges_.push_back({next, next + width - 1});
    pool.slice_tp_.push_back(order[k].tp);
    pool.slice_of_task_[order[k].task_id] = k + 1;
    pool.tp_sum_ += order[k].tp;
    next += width;
  }
  const int r = next - 1;
  pool.upfs_.resize(r);
  for (int k = 1; k <= pool.num_slices(); ++k) {
    for (int id = pool.range(k).first; id <= pool.range(k).last; ++id) {
      pool.upfs_[id - 1].id = id;
      pool.upfs_[id - 1].mu = mu;
      pool.upfs_[id - 1].home_slice = k;
    }
  }
  return pool;
}

Upf* UpfPool::acquire(int k) {
  const SliceRange& rng = range(k);
  for (int id = rng.first; id <= rng.last; ++id) {
    Upf& u = upf(id);
    if (u.idle()) {
      u.current_slice = k;
      u.elevated = false;
      return &u;
    }
  }
  return nullptr;
}

Upf* UpfPool::elevate(int k) {
  for (int lower = k + 1; lower <= num_slices(); ++lower) {
    const SliceRange& rng = range(lower);
    for (int id = rng.first; id <= rng.last; ++id) {
      Upf& u = upf(id);
      if (u.idle()) {
        u.current_slice = k;
        u.elevated = true;
        return &u;
      }
    }
  }
  return nullptr;
}

std::vector<int> UpfPool::release_idle(int k) {
  std::vector<int> released;
  for (Upf& u : upfs_) {
    if (u.current_slice == k && u.attached_ues.empty()) {
      u.current_slice.reset();
      u.elevated = false;
      released.push_back(u.id);
    }
  }
  return released;
}

std::vector<int> UpfPool::active_in_slice(int k) const {
  std::vector<int> out;
  for (const Upf& u : upfs_) {
    if (u.current_slice == k) {
      out.push_back(u.id);
    }
  }
  return out;
}

}  // namespace slicesim
