#pragma once

#include <cstddef>
#include <span>

namespace seccell {

/// Per-user statistical delay requirement, stored in internal units.
///
/// Internally every rate is in nats per channel use. The exponent is scaled so
/// that `theta * rate` equals the product of the configured per-bit exponent and
/// the configured rate in bits/s; the effective bandwidth is converted the same
/// way, so `theta * effective_bandwidth` is unit-free and unchanged.
struct QoSProfile {
  double theta = 0.0;                // 1 / (nats per channel use)
  double effective_bandwidth = 0.0;  // nats per channel use

  /// Builds a profile from an exponent in 1/bit and an effective bandwidth in bits/s.
  static QoSProfile from_bits(double theta_per_bit, double effective_bandwidth_bps,
                              double bandwidth_hz);

  [[nodiscard]] double theta_per_bit(double bandwidth_hz) const;
  [[nodiscard]] double effective_bandwidth_bps(double bandwidth_hz) const;

  /// Throws std::invalid_argument unless theta > 0 and effective_bandwidth >= 0.
  void validate() const;
};

/// -(1/theta) ln E[exp(-theta R)] over an empirical sample, evaluated with a
/// shifted log-mean-exp so large theta*R does not underflow.
double esr_expectation(std::span<const double> rate_samples, double theta);

/// Running form of the effective secrecy rate: the time average of
/// exp(-theta R) over the first t slots replaces the expectation.
double esr_running(std::span<const double> rate_history, std::size_t t, double theta);

/// Incremental accumulator of exp(-theta R) in log space.
///
/// Holds the running maximum exponent m and sum_i expm1(x_i - m), so adding a
/// slot is O(1) and the result equals the batch log-mean-exp to rounding.
class EsrAccumulator {
 public:
  explicit EsrAccumulator(double theta);

  void add(double rate);

  [[nodiscard]] std::size_t count() const { return count_; }
  [[nodiscard]] double theta() const { return theta_; }
  /// Effective rate over the slots added so far; 0 before the first slot.
  [[nodiscard]] double value() const;
  /// Arithmetic mean of the rates added so far.
  [[nodiscard]] double mean_rate() const;

 private:
  double theta_;
  double max_exponent_ = 0.0;
  double scaled_excess_ = 0.0;
  double rate_sum_ = 0.0;
  std::size_t count_ = 0;
};

}  // namespace seccell
