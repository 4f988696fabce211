#include "seccell/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace seccell {

double queue_update(double backlog, double rate, const QoSProfile& qos) {
  const double arrival = std::exp(-qos.theta * rate);
  const double service = std::exp(-qos.theta * qos.effective_bandwidth);
  return std::max(backlog + arrival - service, 0.0);
}

double dpp_user_term(double backlog, double rate, const QoSProfile& qos) {
  return -rate + backlog * (std::exp(-qos.theta * rate) - std::exp(-qos.theta * qos.effective_bandwidth));
}

void update_queues(VirtualQueueState& queues, std::span<const double> rates,
                   std::span<const QoSProfile> qos) {
  if (rates.size() != queues.F.size() || qos.size() != queues.F.size()) {
    throw std::invalid_argument("update_queues: per-user inputs have the wrong size");
  }
  for (std::size_t j = 0; j < queues.F.size(); ++j) {
    queues.F[j] = queue_update(queues.F[j], rates[j], qos[j]);
  }
  ++queues.slot;
}

double dpp_total(const Schedule& schedule, const InterferenceGraph& graph,
                 const std::vector<SecureCellParams>& params, const ChannelState& channel,
                 std::span<const double> backlogs, std::span<const QoSProfile> qos,
                 double peak_amplitude, double noise_variance) {
  const std::size_t ku = channel.h.size();
  if (schedule.is_scheduled.size() != ku || params.size() != ku || backlogs.size() != ku ||
      qos.size() != ku) {
    throw std::invalid_argument("dpp_total: per-user inputs have the wrong size");
  }
  if (!is_interference_free(schedule, graph)) {
    throw std::invalid_argument("dpp_total: schedule contains an interfering pair");
  }
  double total = 0.0;
  for (std::size_t j = 0; j < ku; ++j) {
    const bool on = schedule.is_scheduled[j] != 0;
    const double r =
        on ? achievable_secrecy_rate(j, params[j], true, channel, peak_amplitude, noise_variance)
           : 0.0;
    total += dpp_user_term(backlogs[j], r, qos[j]);
  }
  return total;
}

double StabilityReport::max_normalized() const {
  double m = 0.0;
  for (double x : normalized_backlog) m = std::max(m, x);
  return m;
}

StabilityReport stability_check(const std::vector<std::vector<double>>& history) {
  const std::size_t T = history.size();
  if (T < 100) throw std::invalid_argument("stability_check: horizon must be at least 100 slots");
  const std::size_t ku = history.front().size();
  StabilityReport rep;
  rep.normalized_backlog.resize(ku);
  rep.tail_slope.resize(ku);

  const std::size_t start = T / 2;
  const double n = static_cast<double>(T - start);
  double tbar = 0.0;
  for (std::size_t t = start; t < T; ++t) tbar += static_cast<double>(t);
  tbar /= n;
  double stt = 0.0;
  for (std::size_t t = start; t < T; ++t) stt += (static_cast<double>(t) - tbar) * (static_cast<double>(t) - tbar);

  for (std::size_t j = 0; j < ku; ++j) {
    rep.normalized_backlog[j] = history.back().at(j) / static_cast<double>(T);
    double fbar = 0.0;
    for (std::size_t t = start; t < T; ++t) fbar += history[t].at(j);
    fbar /= n;
    double stf = 0.0;
    for (std::size_t t = start; t < T; ++t) stf += (static_cast<double>(t) - tbar) * (history[t][j] - fbar);
    rep.tail_slope[j] = stf / stt;
  }
  return rep;
}

}  // namespace seccell
