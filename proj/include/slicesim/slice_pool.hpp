#pragma once

#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "slicesim/task_graph.hpp"

namespace slicesim {

// 1-based inclusive UPF id interval.
struct SliceRange {
  int first = 1;
  int last = 0;
  int size() const { return last - first + 1; }
  bool contains(int j) const { return j >= first && j <= last; }
};

struct Upf {
  int id = 0;  // 1-based position in the pool
  double mu = 0.0;
  int home_slice = 0;
  std::optional<int> current_slice;
  bool elevated = false;
  std::set<int> attached_ues;

  bool idle() const { return !current_slice.has_value(); }
};

// Provisioned pool of r = alpha * sum(tp) UPFs, partitioned into per-slice
// ranges sized alpha*tp_k. Slices are ordered by descending task priority
// (ties by ascending task id), so slice 1 owns the front of the pool.
class UpfPool {
 public:
  UpfPool() = default;

  static UpfPool init(const TaskPriorityList& priorities, int alpha, double mu);

  int size() const { return static_cast<int>(upfs_.size()); }
  int alpha() const { return alpha_; }
  int num_slices() const { return static_cast<int>(ranges_.size()); }
  const std::vector<SliceRange>& ranges() const { return ranges_; }
  const SliceRange& range(int k) const { return ranges_.at(k - 1); }
  int slice_tp(int k) const { return slice_tp_.at(k - 1); }
  int slice_of_task(int task_id) const { return slice_of_task_.at(task_id); }
  int tp_sum() const { return tp_sum_; }

  Upf& upf(int id) { return upfs_.at(id - 1); }
  const Upf& upf(int id) const { return upfs_.at(id - 1); }

  // Lowest-id idle UPF whose home range is slice k; marks it active.
  Upf* acquire(int k);

  // Scans lower-priority ranges k+1, k+2, ... for the lowest-id idle UPF and
  // elevates it into slice k. Returns nullptr when every lower range is
  // exhausted.
  Upf* elevate(int k);

  // Releases every active UPF in slice k with no attached UEs; elevated UPFs
  // revert to their home range. Returns released ids, ascending.
  std::vector<int> release_idle(int k);

  // Ids of UPFs currently serving slice k (home or elevated), ascending.
  std::vector<int> active_in_slice(int k) const;

  void attach_ue(int upf_id, int ue_id) { upf(upf_id).attached_ues.insert(ue_id); }
  void detach_ue(int upf_id, int ue_id) { upf(upf_id).attached_ues.erase(ue_id); }

 private:
  std::vector<Upf> upfs_;
  std::vector<SliceRange> ranges_;
  std::vector<int> slice_tp_;
  std::unordered_map<int, int> slice_of_task_;
  int alpha_ = 0;
  int tp_sum_ = 0;
};

}  // namespace slicesim
