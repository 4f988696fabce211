#include "seccell/effective_rate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace seccell {

QoSProfile QoSProfile::from_bits(double theta_per_bit, double effective_bandwidth_bps,
                                 double bandwidth_hz) {
  const double nats_per_use_per_bps = std::numbers::ln2 / bandwidth_hz;
  QoSProfile q;
  q.theta = theta_per_bit / nats_per_use_per_bps;
  q.effective_bandwidth = effective_bandwidth_bps * nats_per_use_per_bps;
  return q;
}

double QoSProfile::theta_per_bit(double bandwidth_hz) const {
  return theta * std::numbers::ln2 / bandwidth_hz;
}

double QoSProfile::effective_bandwidth_bps(double bandwidth_hz) const {
  return effective_bandwidth * bandwidth_hz / std::numbers::ln2;
}

void QoSProfile::validate() const {
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    throw std::invalid_argument("qos.theta_per_bit: QoS exponent must be positive and finite");
  }
  if (!(effective_bandwidth >= 0.0) || !std::isfinite(effective_bandwidth)) {
    throw std::invalid_argument("qos.be_bps: effective bandwidth must be non-negative and finite");
  }
}

double esr_expectation(std::span<const double> rate_samples, double theta) {
  if (rate_samples.empty()) {
    throw std::invalid_argument("esr_expectation: empty sample set");
  }
  if (!(theta > 0.0)) {
    throw std::invalid_argument("esr_expectation: theta must be positive");
  }
  double shift = -theta * rate_samples.front();
  for (double r : rate_samples) shift = std::max(shift, -theta * r);
  // expm1/log1p keep the theta -> 0 regime accurate, where every term is near 1.
  double excess = 0.0;
  for (double r : rate_samples) excess += std::expm1(-theta * r - shift);
  const double log_mean =
      shift + std::log1p(excess / static_cast<double>(rate_samples.size()));
  return -log_mean / theta;
}

double esr_running(std::span<const double> rate_history, std::size_t t, double theta) {
  if (t == 0 || t > rate_history.size()) {
    throw std::invalid_argument("esr_running: t must be in [1, history length]");
  }
  return esr_expectation(rate_history.first(t), theta);
}

EsrAccumulator::EsrAccumulator(double theta) : theta_(theta) {
  if (!(theta > 0.0)) throw std::invalid_argument("EsrAccumulator: theta must be positive");
}

void EsrAccumulator::add(double rate) {
  const double x = -theta_ * rate;
  if (count_ == 0) {
    max_exponent_ = x;
    scaled_excess_ = 0.0;
  } else if (x > max_exponent_) {
    const double n = static_cast<double>(count_);
    scaled_excess_ += std::expm1(max_exponent_ - x) * (scaled_excess_ + n);
    max_exponent_ = x;
  } else {
    scaled_excess_ += std::expm1(x - max_exponent_);
  }
  rate_sum_ += rate;
  ++count_;
}

double EsrAccumulator::value() const {
  if (count_ == 0) return 0.0;
  const double log_mean =
      max_exponent_ + std::log1p(scaled_excess_ / static_cast<double>(count_));
  return -log_mean / theta_;
}

double EsrAccumulator::mean_rate() const {
  return count_ == 0 ? 0.0 : rate_sum_ / static_cast<double>(count_);
}

}  // namespace seccell
