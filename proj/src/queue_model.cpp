#include "slicesim/queue_model.hpp"

#include <cmath>

namespace slicesim {

std::string Violation::describe() const {
  switch (kind) {
    case Kind::Capacity:
      return "CapacityViolation(Eq.10, upf=" + std::to_string(index) + ")";
    case Kind::Attachment:
      return "AttachmentViolation(Eq.11, ue=" + std::to_string(index) + ")";
    case Kind::Binary:
      return "BinaryViolation(Eq.12, ue=" + std::to_string(index) + ")";
    case Kind::PoolSizing:
      return "PoolSizingViolation(Eq.13)";
  }
  return "?";
}

double upf_load(const AssignmentState& state, const QueueParams& params, int j) {
  if (j < 1 || j > state.r) {
    throw std::out_of_range("upf index " + std::to_string(j) + " outside [1," +
                            std::to_string(state.r) + "]");
  }
  double theta = 0.0;
  for (int i = 1; i <= state.n; ++i) {
    if (state.at(i, j)) theta += params.lambda[i - 1];
  }
  return theta;
}

double slice_avg_load(const AssignmentState& state, const QueueParams& params,
                      const UpfPool& pool, int k, LoadAveraging mode) {
  if (mode == LoadAveraging::Provisioned) {
    const SliceRange& rng = pool.range(k);
    double sum = 0.0;
    for (int j = rng.first; j <= rng.last; ++j) sum += upf_load(state, params, j);
    return sum / rng.size();
  }
  const auto active = pool.active_in_slice(k);
  if (active.empty()) {
    throw EmptySliceError("slice " + std::to_string(k) + " has no active UPF");
  }
  double sum = 0.0;
  for (int j : active) sum += upf_load(state, params, j);
  return sum / static_cast<double>(active.size());
}

double queuing_delay(double theta, double mu) {
  if (theta >= mu) {
    throw UnstableError("theta >= mu");
  }
  return theta / (mu * (mu - theta));
}

double response_time(double theta, double mu) {
  if (theta >= mu) {
    throw UnstableError("theta >= mu");
  }
  return 1.0 / (mu - theta);
}

double transmission_time(double bits, double bits_per_second) {
  if (bits_per_second <= 0.0) {
    throw std::invalid_argument("transmission rate must be positive");
  }
  return bits / bits_per_second;
}

namespace {

// Per-pair latency terms 1/(mu - theta_j) + l_ij/d_ij for UEs assigned inside
// slice k's range.
std::vector<double> slice_terms(const AssignmentState& state, const QueueParams& params,
                                int k) {
  const SliceRange& rng = state.slice_ranges.at(k - 1);
  std::vector<double> theta(state.r + 1, 0.0);
  for (int j = rng.first; j <= rng.last; ++j) theta[j] = upf_load(state, params, j);

  std::vector<double> terms;
  for (int i = 1; i <= state.n; ++i) {
    for (int j = rng.first; j <= rng.last; ++j) {
      if (!state.at(i, j)) continue;
      if (theta[j] >= params.mu) {
        throw UnstableError("upf " + std::to_string(j) + " load >= mu");
      }
      terms.push_back(1.0 / (params.mu - theta[j]) +
                      transmission_time(params.packet(i, j), params.rate(i, j)));
    }
  }
  return terms;
}

}  // namespace

double slice_latency_mean(const AssignmentState& state, const QueueParams& params, int k) {
  double sum = 0.0;
  for (double t : slice_terms(state, params, k)) sum += t;
  return sum / static_cast<double>(state.n);
}

double slice_latency_variance(const AssignmentState& state, const QueueParams& params,
                              int k, VarianceForm form) {
  const auto terms = slice_terms(state, params, k);
  const double g = slice_latency_mean(state, params, k);
  if (form == VarianceForm::PrintedSquaredSum) {
    double dev = 0.0;
    for (double t : terms) dev += t - g;
    return dev * dev / static_cast<double>(state.n);
  }
  double acc = 0.0;
  for (double t : terms) acc += (t - g) * (t - g);
  return acc / static_cast<double>(state.n);
}

double objective(const AssignmentState& state, const QueueParams& params,
                 VarianceForm form) {
  double f = 0.0;
  for (int k = 1; k <= static_cast<int>(state.slice_ranges.size()); ++k) {
    f += params.w1 * slice_latency_mean(state, params, k) +
         params.w2 * slice_latency_variance(state, params, k, form);
  }
  return f;
}

std::vector<Violation> check_constraints(const AssignmentState& state,
                                         const QueueParams& params,
                                         const UpfPool& pool) {
  std::vector<Violation> out;
  for (int j = 1; j <= state.r; ++j) {
    if (upf_load(state, params, j) >= params.mu) {
      out.push_back({Violation::Kind::Capacity, 10, j});
    }
  }
  for (int i = 1; i <= state.n; ++i) {
    int row = 0;
    bool binary_ok = true;
    for (int j = 1; j <= state.r; ++j) {
      const uint8_t v = state.at(i, j);
      if (v > 1) binary_ok = false;
      row += v;
    }
    if (!binary_ok) out.push_back({Violation::Kind::Binary, 12, i});
    if (row > 1) out.push_back({Violation::Kind::Attachment, 11, i});
  }
  if (pool.alpha() * pool.tp_sum() != pool.size()) {
    out.push_back({Violation::Kind::PoolSizing, 13, 0});
  }
  return out;
}

}  // namespace slicesim
