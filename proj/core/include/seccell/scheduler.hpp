#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "seccell/channel.hpp"
#include "seccell/scenario.hpp"

namespace seccell {

/// Users as vertices; an edge joins two users whose capable AP sets overlap.
/// Users with an empty capable set stay in the vertex list but are marked
/// unschedulable and carry no edges.
class InterferenceGraph {
 public:
  InterferenceGraph() = default;
  explicit InterferenceGraph(std::size_t num_vertices);

  void add_edge(std::size_t a, std::size_t b);
  void set_schedulable(std::size_t v, bool on) { schedulable_.at(v) = on ? 1 : 0; }

  [[nodiscard]] std::size_t size() const { return neighbors_.size(); }
  [[nodiscard]] bool adjacent(std::size_t a, std::size_t b) const;
  [[nodiscard]] const std::vector<std::size_t>& neighbors(std::size_t v) const { return neighbors_.at(v); }
  [[nodiscard]] bool schedulable(std::size_t v) const { return schedulable_.at(v) != 0; }
  [[nodiscard]] std::size_t num_edges() const;

 private:
  std::vector<std::vector<std::size_t>> neighbors_;  // sorted ascending
  std::vector<std::uint8_t> schedulable_;
};

InterferenceGraph build_ig(const std::vector<ApSet>& capable);

/// Scheduled user set of one slot plus the K_a x K_u connection matrix.
struct Schedule {
  std::vector<std::size_t> scheduled;    // ascending
  std::vector<std::uint8_t> is_scheduled;  // per user
  std::size_t num_aps = 0;
  std::vector<std::uint8_t> pi;          // row-major [ap * K_u + user]

  [[nodiscard]] bool connected(std::size_t ap, std::size_t user) const {
    return pi[ap * is_scheduled.size() + user] != 0;
  }
};

/// Connection matrix for a given user set: every AP of a scheduled user's
/// capable set serves that user.
Schedule make_schedule(std::vector<std::size_t> users, const std::vector<ApSet>& capable,
                       std::size_t num_aps);

/// True when no two users sharing an edge are both connected to some AP.
bool is_interference_free(const Schedule& schedule, const InterferenceGraph& graph);

/// Repeatedly takes the schedulable vertex of least weight and removes it
/// with its neighbourhood. Ties go to the lowest index.
Schedule greedy_min_weight_is(const InterferenceGraph& graph, std::span<const double> weights,
                              const std::vector<ApSet>& capable, std::size_t num_aps);

/// Same extraction with the largest weight first.
Schedule greedy_max_weight_is(const InterferenceGraph& graph, std::span<const double> weights,
                              const std::vector<ApSet>& capable, std::size_t num_aps);

/// Largest v such that at least `quantile` of the values are >= v.
double quantile_threshold(std::vector<double> values, double quantile);

struct EpsilonGrid {
  double spacing = 0.5;           // metres
  double receiver_height = 0.5;   // metres
  double quantile = 0.9;
};

/// Channel-gain threshold: the NLoS gain summed over all APs is evaluated on a
/// grid over the receiving plane, and the threshold is the value reached by at
/// least `quantile` of the positions.
double epsilon_threshold(const Scenario& scenario, const EpsilonGrid& grid = {});

/// Per-position NLoS sums used by epsilon_threshold, row-major by x.
std::vector<double> receiving_plane_nlos_sums(const Scenario& scenario, const EpsilonGrid& grid);

/// Rate without artificial noise: 1/2 ln(1 + 4 h^T h A^2 / (2 pi e sigma^2)).
double mr_rate(std::span<const double> h, double peak_amplitude, double noise_variance);

/// Proportional-fair average-rate recursion with window T_F.
double pf_priority_update(double average_rate, double rate, bool scheduled, double window);

enum class BaselineMode { MaxRate, ProportionalFair };

/// Greedy max-weight schedule for the baselines: weights are r_j (MR) or
/// r_j / C_j (PF).
Schedule baseline_schedule(BaselineMode mode, const InterferenceGraph& graph,
                           std::span<const double> rates, std::span<const double> average_rates,
                           const std::vector<ApSet>& capable, std::size_t num_aps);

}  // namespace seccell
