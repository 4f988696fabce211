#include "seccell/secrecy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace seccell {
namespace {

constexpr double kTwoPiE = 2.0 * std::numbers::pi * std::numbers::e;

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

bool all_zero(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

}  // namespace

Basis nullspace_basis(std::span<const double> h) {
  const std::size_t n = h.size();
  if (n < 2) throw std::invalid_argument("nullspace_basis: need at least two APs");
  const double norm = std::sqrt(dot(h, h));
  if (!(norm > 0.0)) throw std::invalid_argument("nullspace_basis: zero channel vector");

  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = h[i] / norm;
  // Householder H = I - 2 u u^T / u^T u with u = e1 + sign(v1) v maps e1 to a
  // multiple of v; its remaining columns are an orthonormal complement.
  const double s = v[0] >= 0.0 ? 1.0 : -1.0;
  const double denom = 1.0 + std::abs(v[0]);

  Basis basis;
  basis.reserve(n - 1);
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<double> col(n);
    col[0] = -s * v[k];
    for (std::size_t m = 1; m < n; ++m) {
      col[m] = (m == k ? 1.0 : 0.0) - v[m] * v[k] / denom;
    }
    double l1 = 0.0;
    double peak = 0.0;
    for (double x : col) {
      l1 += std::abs(x);
      peak = std::max(peak, std::abs(x));
    }
    double sign = 1.0;
    for (double x : col) {
      if (std::abs(x) > 1e-12 * peak) {
        sign = x > 0.0 ? 1.0 : -1.0;
        break;
      }
    }
    for (double& x : col) x *= sign / l1;
    basis.push_back(std::move(col));
  }
  return basis;
}

double jamming_energy(const Basis& nullspace, std::span<const double> h_e) {
  double e = 0.0;
  for (const auto& col : nullspace) {
    const double p = dot(col, h_e);
    e += p * p;
  }
  return e;
}

double pairwise_secrecy_rate_lb(const SecureCellParams& params, std::span<const double> h,
                                std::span<const double> h_e, double peak_amplitude,
                                double noise_variance) {
  const std::size_t n = h.size();
  if (params.w.size() != n || h_e.size() != n) {
    throw std::invalid_argument("pairwise_secrecy_rate_lb: dimension mismatch");
  }
  const double a2 = peak_amplitude * peak_amplitude;
  const double alpha = params.alpha;
  const double legit = dot(params.w, h);
  const double leak = dot(params.w, h_e);

  double jam = 0.0;  // sum_l (Gamma_l^T h_e)^2 (A^a)^2
  if (n > 1 && !params.nullspace.empty()) {
    if (params.nullspace.size() != n - 1) {
      throw std::invalid_argument("pairwise_secrecy_rate_lb: nullspace has wrong column count");
    }
    const double jam_amp = (1.0 - alpha) * peak_amplitude / static_cast<double>(n - 1);
    jam = jamming_energy(params.nullspace, h_e) * jam_amp * jam_amp;
  }

  const double c0 = kTwoPiE * noise_variance;
  const double rate = 0.5 * std::log(4.0 * legit * legit * alpha * alpha * a2 + c0) -
                      0.5 * std::log(c0) -
                      0.5 * std::log(kTwoPiE / 3.0 *
                                     (leak * leak * alpha * alpha * a2 + jam + 3.0 * noise_variance)) +
                      0.5 * std::log(4.0 * jam + c0);
  return std::max(0.0, rate);
}

double achievable_secrecy_rate(std::size_t user, const SecureCellParams& params, bool scheduled,
                               const ChannelState& channel, double peak_amplitude,
                               double noise_variance) {
  if (!scheduled) return 0.0;
  const std::size_t ku = channel.h.size();
  if (ku < 2) throw std::invalid_argument("achievable_secrecy_rate: no eavesdroppers");
  const auto& h = channel.h.at(user);
  if (h.empty()) return 0.0;

  SecureCellParams effective = params;
  if (h.size() == 1) effective.alpha = 1.0;

  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < ku; ++k) {
    if (k == user) continue;
    best = std::min(best, pairwise_secrecy_rate_lb(effective, h, channel.h_e[user][k],
                                                   peak_amplitude, noise_variance));
  }
  return best;
}

double rate_to_bits_per_second(double rate_nats, double bandwidth_hz) {
  return rate_nats * bandwidth_hz / std::numbers::ln2;
}

double bits_per_second_to_rate(double rate_bps, double bandwidth_hz) {
  return rate_bps * std::numbers::ln2 / bandwidth_hz;
}

std::vector<double> mrt_precoder(std::span<const double> h) {
  double peak = 0.0;
  for (double x : h) peak = std::max(peak, std::abs(x));
  if (peak == 0.0) return all_ones(h.size());
  std::vector<double> w(h.begin(), h.end());
  for (double& x : w) x /= peak;
  return w;
}

std::vector<double> all_ones(std::size_t n) { return std::vector<double>(n, 1.0); }

SecureCellParams make_cell_params(double alpha, std::vector<double> w, std::span<const double> h) {
  SecureCellParams p;
  p.alpha = alpha;
  p.w = std::move(w);
  if (h.size() >= 2 && !all_zero(h)) p.nullspace = nullspace_basis(h);
  return p;
}

CellEvaluator::CellEvaluator(std::size_t user, const ChannelState& channel, double peak_amplitude,
                             double noise_variance)
    : h_(channel.h.at(user)), amp2_(peak_amplitude * peak_amplitude), noise_(noise_variance) {
  const std::size_t ku = channel.h.size();
  if (ku < 2) throw std::invalid_argument("CellEvaluator: no eavesdroppers");
  const std::size_t n = h_.size();
  zero_channel_ = all_zero(h_);
  if (n >= 2 && !zero_channel_) nullspace_ = nullspace_basis(h_);
  num_eaves_ = ku - 1;
  eaves_.reserve(num_eaves_ * n);
  jamming_.reserve(num_eaves_);
  for (std::size_t k = 0; k < ku; ++k) {
    if (k == user) continue;
    const auto& he = channel.h_e[user][k];
    eaves_.insert(eaves_.end(), he.begin(), he.end());
    jamming_.push_back(nullspace_.empty() ? 0.0 : jamming_energy(nullspace_, he));
  }
}

double CellEvaluator::rate(std::span<const double> w, double alpha, bool jamming) const {
  const std::size_t n = h_.size();
  if (n == 0 || zero_channel_) return 0.0;
  if (n == 1) alpha = 1.0;
  const double c0 = kTwoPiE * noise_;
  const double legit = dot(w, h_);
  const double signal = legit * legit * alpha * alpha * amp2_;
  const double jam_scale =
      n > 1 && jamming ? (1.0 - alpha) * (1.0 - alpha) * amp2_ / static_cast<double>((n - 1) * (n - 1)) : 0.0;

  // Every pairwise bound shares the legitimate term, so the minimum over
  // eavesdroppers is the minimum of the ratio inside the remaining logs.
  double worst = std::numeric_limits<double>::infinity();
  const double* row = eaves_.data();
  for (std::size_t k = 0; k < num_eaves_; ++k, row += n) {
    double leak = 0.0;
    for (std::size_t i = 0; i < n; ++i) leak += w[i] * row[i];
    const double jam = jamming_[k] * jam_scale;
    const double ratio = (4.0 * jam + c0) /
                         (kTwoPiE / 3.0 * (leak * leak * alpha * alpha * amp2_ + jam + 3.0 * noise_));
    worst = std::min(worst, ratio);
  }
  const double r = 0.5 * std::log1p(4.0 * signal / c0) + 0.5 * std::log(worst);
  return std::max(0.0, r);
}

}  // namespace seccell
