#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "seccell/channel.hpp"
#include "seccell/effective_rate.hpp"
#include "seccell/scheduler.hpp"
#include "seccell/secrecy.hpp"

namespace seccell {

/// Per-user virtual queue backlogs; all start at zero.
struct VirtualQueueState {
  std::vector<double> F;
  std::size_t slot = 0;

  explicit VirtualQueueState(std::size_t num_users = 0) : F(num_users, 0.0) {}
};

/// max{F + exp(-theta R) - exp(-theta B_e), 0}.
double queue_update(double backlog, double rate, const QoSProfile& qos);

/// -R + F (exp(-theta R) - exp(-theta B_e)).
double dpp_user_term(double backlog, double rate, const QoSProfile& qos);

/// Advances every queue by one slot with the realized rates.
void update_queues(VirtualQueueState& queues, std::span<const double> rates,
                   std::span<const QoSProfile> qos);

/// Sum of the per-user terms for a whole slot. Unscheduled users contribute
/// with zero rate. Throws std::invalid_argument if two interfering users are
/// both scheduled.
double dpp_total(const Schedule& schedule, const InterferenceGraph& graph,
                 const std::vector<SecureCellParams>& params, const ChannelState& channel,
                 std::span<const double> backlogs, std::span<const QoSProfile> qos,
                 double peak_amplitude, double noise_variance);

struct StabilityReport {
  std::vector<double> normalized_backlog;  // F_j(T) / T
  std::vector<double> tail_slope;          // least-squares dF/dt over the last half
  [[nodiscard]] double max_normalized() const;
};

/// `history[t][j]` is F_j after slot t (t = 0..T-1). Requires T >= 100.
StabilityReport stability_check(const std::vector<std::vector<double>>& history);

}  // namespace seccell
