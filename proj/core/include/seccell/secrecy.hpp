#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "seccell/channel.hpp"

namespace seccell {

/// Columns of an n x (n-1) matrix; each inner vector has length n.
using Basis = std::vector<std::vector<double>>;

/// Secure-cell parameters of one user for one slot.
struct SecureCellParams {
  double alpha = 1.0;       // share of the peak amplitude carrying data
  std::vector<double> w;    // precoder over Omega_j, sup-norm <= 1
  Basis nullspace;          // jamming directions, each column L1-normalized;
                            // empty means no artificial noise is sent
};

/// Basis of the orthogonal complement of span{h}, built from a Householder
/// reflection; columns rescaled to unit L1 norm with the first nonzero entry
/// positive. Throws std::invalid_argument for n < 2 or h == 0.
Basis nullspace_basis(std::span<const double> h);

/// Sum over jamming directions of (Gamma_l^T h_e)^2.
double jamming_energy(const Basis& nullspace, std::span<const double> h_e);

/// Artificial-noise-aided secrecy rate lower bound (nats per channel use)
/// against one eavesdropper, clamped at zero. With |Omega| = 1 or an empty
/// nullspace the jamming terms are dropped.
double pairwise_secrecy_rate_lb(const SecureCellParams& params, std::span<const double> h,
                                std::span<const double> h_e, double peak_amplitude,
                                double noise_variance);

/// Secrecy rate of user j in the slot: zero when unscheduled, otherwise the
/// minimum of the pairwise bound over every other user. A single-AP cell is
/// evaluated with alpha = 1.
double achievable_secrecy_rate(std::size_t user, const SecureCellParams& params, bool scheduled,
                               const ChannelState& channel, double peak_amplitude,
                               double noise_variance);

/// r * B / ln 2.
double rate_to_bits_per_second(double rate_nats, double bandwidth_hz);
double bits_per_second_to_rate(double rate_bps, double bandwidth_hz);

/// h / ||h||_inf, or all-ones if h == 0.
std::vector<double> mrt_precoder(std::span<const double> h);
std::vector<double> all_ones(std::size_t n);

/// Secure-cell parameters with the nullspace filled in for `h` (empty when
/// the cell has a single AP or h == 0).
SecureCellParams make_cell_params(double alpha, std::vector<double> w, std::span<const double> h);

/// Achievable secrecy rate of one scheduled cell for arbitrary (w, alpha).
///
/// The nullspace and the per-eavesdropper jamming energies depend only on the
/// slot's channel, so they are computed once. Each evaluation then costs one
/// dot product per eavesdropper and two logarithms, which keeps the
/// thousands of evaluations per PSO solve cheap.
class CellEvaluator {
 public:
  CellEvaluator(std::size_t user, const ChannelState& channel, double peak_amplitude,
                double noise_variance);

  /// With `jamming` false the (1 - alpha) share is left unused.
  [[nodiscard]] double rate(std::span<const double> w, double alpha, bool jamming = true) const;

  [[nodiscard]] std::size_t cell_size() const { return h_.size(); }
  [[nodiscard]] std::span<const double> h() const { return h_; }
  [[nodiscard]] const Basis& nullspace() const { return nullspace_; }

 private:
  std::vector<double> h_;
  Basis nullspace_;
  std::vector<double> eaves_;    // (K_u - 1) x n, row-major
  std::vector<double> jamming_;  // per eavesdropper
  std::size_t num_eaves_ = 0;
  double amp2_ = 0.0;
  double noise_ = 0.0;
  bool zero_channel_ = false;
};

}  // namespace seccell
