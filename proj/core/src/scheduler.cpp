#include "seccell/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace seccell {
namespace {

bool overlap(const ApSet& a, const ApSet& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia == *ib) return true;
    if (*ia < *ib) ++ia; else ++ib;
  }
  return false;
}

template <class Better>
Schedule greedy_extract(const InterferenceGraph& graph, std::span<const double> weights,
                        const std::vector<ApSet>& capable, std::size_t num_aps, Better better) {
  const std::size_t n = graph.size();
  if (weights.size() != n || capable.size() != n) {
    throw std::invalid_argument("greedy scheduling: weights/capable sets do not match the graph");
  }
  std::vector<std::uint8_t> alive(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (!graph.schedulable(v)) continue;
    if (!std::isfinite(weights[v])) {
      throw std::invalid_argument("greedy scheduling: non-finite vertex weight");
    }
    alive[v] = 1;
  }
  std::vector<std::size_t> chosen;
  for (;;) {
    std::size_t pick = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (alive[v] && (pick == n || better(weights[v], weights[pick]))) pick = v;
    }
    if (pick == n) break;
    chosen.push_back(pick);
    alive[pick] = 0;
    for (std::size_t u : graph.neighbors(pick)) alive[u] = 0;
  }
  std::sort(chosen.begin(), chosen.end());
  return make_schedule(std::move(chosen), capable, num_aps);
}

}  // namespace

InterferenceGraph::InterferenceGraph(std::size_t num_vertices)
    : neighbors_(num_vertices), schedulable_(num_vertices, 1) {}

void InterferenceGraph::add_edge(std::size_t a, std::size_t b) {
  if (a == b) throw std::invalid_argument("InterferenceGraph: self-loop");
  auto insert = [](std::vector<std::size_t>& list, std::size_t v) {
    auto it = std::lower_bound(list.begin(), list.end(), v);
    if (it == list.end() || *it != v) list.insert(it, v);
  };
  insert(neighbors_.at(a), b);
  insert(neighbors_.at(b), a);
}

bool InterferenceGraph::adjacent(std::size_t a, std::size_t b) const {
  const auto& list = neighbors_.at(a);
  return std::binary_search(list.begin(), list.end(), b);
}

std::size_t InterferenceGraph::num_edges() const {
  std::size_t twice = 0;
  for (const auto& list : neighbors_) twice += list.size();
  return twice / 2;
}

InterferenceGraph build_ig(const std::vector<ApSet>& capable) {
  InterferenceGraph g(capable.size());
  for (std::size_t j = 0; j < capable.size(); ++j) {
    if (capable[j].empty()) g.set_schedulable(j, false);
    for (std::size_t k = j + 1; k < capable.size(); ++k) {
      if (overlap(capable[j], capable[k])) g.add_edge(j, k);
    }
  }
  return g;
}

Schedule make_schedule(std::vector<std::size_t> users, const std::vector<ApSet>& capable,
                       std::size_t num_aps) {
  const std::size_t ku = capable.size();
  Schedule s;
  std::sort(users.begin(), users.end());
  users.erase(std::unique(users.begin(), users.end()), users.end());
  s.scheduled = std::move(users);
  s.is_scheduled.assign(ku, 0);
  s.num_aps = num_aps;
  s.pi.assign(num_aps * ku, 0);
  for (std::size_t j : s.scheduled) {
    s.is_scheduled.at(j) = 1;
    for (std::size_t i : capable[j]) s.pi.at(i * ku + j) = 1;
  }
  return s;
}

bool is_interference_free(const Schedule& schedule, const InterferenceGraph& graph) {
  const std::size_t ku = schedule.is_scheduled.size();
  std::vector<std::size_t> links(ku, 0);
  for (std::size_t i = 0; i < schedule.num_aps; ++i) {
    for (std::size_t j = 0; j < ku; ++j) links[j] += schedule.pi[i * ku + j];
  }
  for (std::size_t j = 0; j < ku; ++j) {
    for (std::size_t k : graph.neighbors(j)) {
      if (k > j && links[j] * links[k] != 0) return false;
    }
  }
  return true;
}

Schedule greedy_min_weight_is(const InterferenceGraph& graph, std::span<const double> weights,
                              const std::vector<ApSet>& capable, std::size_t num_aps) {
  return greedy_extract(graph, weights, capable, num_aps, [](double a, double b) { return a < b; });
}

Schedule greedy_max_weight_is(const InterferenceGraph& graph, std::span<const double> weights,
                              const std::vector<ApSet>& capable, std::size_t num_aps) {
  return greedy_extract(graph, weights, capable, num_aps, [](double a, double b) { return a > b; });
}

double quantile_threshold(std::vector<double> values, double quantile) {
  if (values.empty()) throw std::invalid_argument("quantile_threshold: no values");
  if (!(quantile > 0.0 && quantile <= 1.0)) {
    throw std::invalid_argument("quantile_threshold: quantile must be in (0, 1]");
  }
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  const auto needed = static_cast<std::size_t>(std::ceil(quantile * static_cast<double>(n) - 1e-9));
  return values[n - std::max<std::size_t>(needed, 1)];
}

std::vector<double> receiving_plane_nlos_sums(const Scenario& scenario, const EpsilonGrid& grid) {
  if (!(grid.spacing > 0.0)) throw std::invalid_argument("epsilon.grid_spacing_m: must be positive");
  const auto nx = static_cast<std::size_t>(std::floor(scenario.room.length / grid.spacing + 1e-9));
  const auto ny = static_cast<std::size_t>(std::floor(scenario.room.width / grid.spacing + 1e-9));
  if (nx * ny < 100) {
    throw std::invalid_argument("epsilon.grid_spacing_m: grid must cover at least 100 receiver positions");
  }
  const ReflectionField field(scenario.room, scenario.wall_grid, scenario.ap_positions,
                              scenario.phys);
  const double x0 = 0.5 * (scenario.room.length - static_cast<double>(nx - 1) * grid.spacing);
  const double y0 = 0.5 * (scenario.room.width - static_cast<double>(ny - 1) * grid.spacing);
  std::vector<double> sums;
  sums.reserve(nx * ny);
  for (std::size_t ix = 0; ix < nx; ++ix) {
    for (std::size_t iy = 0; iy < ny; ++iy) {
      const Vec3 p{x0 + static_cast<double>(ix) * grid.spacing,
                   y0 + static_cast<double>(iy) * grid.spacing, grid.receiver_height};
      sums.push_back(field.total_to(p));
    }
  }
  return sums;
}

double epsilon_threshold(const Scenario& scenario, const EpsilonGrid& grid) {
  return quantile_threshold(receiving_plane_nlos_sums(scenario, grid), grid.quantile);
}

double mr_rate(std::span<const double> h, double peak_amplitude, double noise_variance) {
  double hh = 0.0;
  for (double x : h) hh += x * x;
  const double c0 = 2.0 * std::numbers::pi * std::numbers::e * noise_variance;
  return 0.5 * std::log1p(4.0 * hh * peak_amplitude * peak_amplitude / c0);
}

double pf_priority_update(double average_rate, double rate, bool scheduled, double window) {
  if (!(window >= 1.0)) throw std::invalid_argument("pf_priority_update: window must be >= 1");
  const double keep = (1.0 - 1.0 / window) * average_rate;
  return scheduled ? keep + rate / window : keep;
}

Schedule baseline_schedule(BaselineMode mode, const InterferenceGraph& graph,
                           std::span<const double> rates, std::span<const double> average_rates,
                           const std::vector<ApSet>& capable, std::size_t num_aps) {
  std::vector<double> weights(rates.begin(), rates.end());
  if (mode == BaselineMode::ProportionalFair) {
    if (average_rates.size() != rates.size()) {
      throw std::invalid_argument("baseline_schedule: PF needs one average rate per user");
    }
    for (std::size_t j = 0; j < weights.size(); ++j) {
      const double c = std::max(average_rates[j], 1e-300);
      weights[j] = rates[j] / c;
    }
  }
  return greedy_max_weight_is(graph, weights, capable, num_aps);
}

}  // namespace seccell
