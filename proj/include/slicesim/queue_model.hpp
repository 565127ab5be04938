#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "slicesim/slice_pool.hpp"

namespace slicesim {

class UnstableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptySliceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Analytic inputs of the multi-M/M/1 formulation. Rates in requests/second,
// packet lengths in bits, link rates in bits/second.
struct QueueParams {
  double mu = 0.0;
  double w1 = 1.0;
  double w2 = 0.0;
  std::vector<double> lambda;      // per UE, index ue_id-1
  std::vector<double> packet_bits; // n*r row-major, (i-1)*r + (j-1)
  std::vector<double> link_rate;   // n*r, bits/second

  int num_ues() const { return static_cast<int>(lambda.size()); }
  int num_upfs() const {
    return lambda.empty() ? 0 : static_cast<int>(packet_bits.size() / lambda.size());
  }
  double packet(int ue, int upf) const {
    return packet_bits[static_cast<size_t>(ue - 1) * num_upfs() + (upf - 1)];
  }
  double rate(int ue, int upf) const {
    return link_rate[static_cast<size_t>(ue - 1) * num_upfs() + (upf - 1)];
  }
};

// Binary UE->UPF assignment matrix with the per-slice pool ranges it was
// built against. Rows sum to 0 (Free UE) or 1 (attached).
struct AssignmentState {
  int n = 0;
  int r = 0;
  std::vector<uint8_t> x;  // n*r row-major
  std::vector<SliceRange> slice_ranges;

  AssignmentState() = default;
  AssignmentState(int n_, int r_, std::vector<SliceRange> ranges)
      : n(n_), r(r_), x(static_cast<size_t>(n_) * r_, 0),
        slice_ranges(std::move(ranges)) {}

  uint8_t& at(int ue, int upf) { return x[static_cast<size_t>(ue - 1) * r + (upf - 1)]; }
  uint8_t at(int ue, int upf) const { return x[static_cast<size_t>(ue - 1) * r + (upf - 1)]; }

  void attach(int ue, int upf) { at(ue, upf) = 1; }
  void detach(int ue) {
    for (int j = 1; j <= r; ++j) at(ue, j) = 0;
  }
  std::optional<int> assigned_upf(int ue) const {
    for (int j = 1; j <= r; ++j) {
      if (at(ue, j)) return j;
    }
    return std::nullopt;
  }
};

struct Violation {
  enum class Kind { Capacity, Attachment, Binary, PoolSizing };
  Kind kind;
  int equation;  // 10..13
  int index;     // offending UPF (capacity) or UE (attachment) id, 0 otherwise
  std::string describe() const;
};

enum class LoadAveraging { ActiveUpfs, Provisioned };
enum class VarianceForm { PerTerm, PrintedSquaredSum };

// theta_j = sum_i lambda_i * x_ij
double upf_load(const AssignmentState& state, const QueueParams& params, int j);

// Mean UPF load in slice k. Default averages over UPFs currently active in
// the slice (the measurement the evaluation uses); Provisioned divides the
// range-sum by alpha*tp_k as the formula is printed.
double slice_avg_load(const AssignmentState& state, const QueueParams& params,
                      const UpfPool& pool, int k,
                      LoadAveraging mode = LoadAveraging::ActiveUpfs);

// W_q = theta / (mu * (mu - theta))
double queuing_delay(double theta, double mu);

// W_s = W_q + 1/mu = 1 / (mu - theta)
double response_time(double theta, double mu);

// l / d for one UE-UPF pair
double transmission_time(double bits, double bits_per_second);

// G(X_k): per-pair latency terms 1/(mu - theta_j) + l_ij/d_ij summed over UEs
// assigned within slice k's range, divided by the total UE count n.
double slice_latency_mean(const AssignmentState& state, const QueueParams& params, int k);

// V(X_k). PerTerm (default) squares each per-pair deviation from G(X_k);
// PrintedSquaredSum squares the summed deviation, as the formula is printed.
double slice_latency_variance(const AssignmentState& state, const QueueParams& params,
                              int k, VarianceForm form = VarianceForm::PerTerm);

// F(X) = sum_k (w1 * G(X_k) + w2 * V(X_k))
double objective(const AssignmentState& state, const QueueParams& params,
                 VarianceForm form = VarianceForm::PerTerm);

// Capacity, single-attachment, binary and pool-sizing checks. Violations are
// data, not errors.
std::vector<Violation> check_constraints(const AssignmentState& state,
                                         const QueueParams& params,
                                         const UpfPool& pool);

}  // namespace slicesim
