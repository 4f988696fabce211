#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seccell/channel.hpp"
#include "seccell/pso.hpp"
#include "seccell/scenario.hpp"
#include "seccell/scheduler.hpp"

namespace seccell {

enum class Algorithm { Dpp, MaxRate, ProportionalFair, MaxRateAn, ProportionalFairAn };

/// "dpp", "mr", "pf", "mr-an", "pf-an". Throws std::invalid_argument otherwise.
Algorithm parse_algorithm(std::string_view tag);
std::string_view algorithm_name(Algorithm algo);

struct SimConfig {
  PsoConfig pso;
  double pf_window = 100.0;   // slots
  double an_alpha = 0.7;      // fixed data share of every baseline
  EpsilonGrid epsilon_grid;
  std::optional<double> epsilon;  // overrides the grid-derived threshold
  std::size_t threads = 1;        // per-user PSO solves within a slot
  bool record_slots = true;

  void validate() const;
};

/// Scenario plus everything that stays fixed over a run: gains, threshold,
/// capable AP sets and the interference graph.
struct PreparedScenario {
  Scenario scenario;
  GainTable gains;
  double epsilon = 0.0;
  std::vector<ApSet> capable;
  InterferenceGraph graph;
  std::vector<std::size_t> isolated;  // users with no capable AP
};

/// Validates the scenario (at least two users) and computes the static state.
PreparedScenario prepare(const Scenario& scenario, const SimConfig& config);

struct SlotRecord {
  std::size_t t = 0;
  std::vector<std::uint8_t> scheduled;
  std::vector<double> alpha;
  std::vector<double> rate_nats;
  std::vector<double> rate_bps;
  std::vector<double> dpp_weight;   // per-user term at the realized rate
  std::vector<double> F;            // backlog after this slot's update
  std::vector<double> esr_running_bps;
};

struct RunSummary {
  Algorithm algorithm = Algorithm::Dpp;
  std::uint64_t seed = 0;
  std::size_t slots = 0;
  std::size_t users = 0;
  std::vector<double> esr_bps;             // per user, over the horizon
  std::vector<double> mean_rate_bps;
  std::vector<double> schedule_fraction;
  std::vector<double> normalized_backlog;  // F(T) / T

  [[nodiscard]] double mean_esr_bps() const;
  [[nodiscard]] double mean_rate() const;
  [[nodiscard]] double mean_schedule_fraction() const;
  [[nodiscard]] double max_normalized_backlog() const;
};

struct RunResult {
  std::vector<SlotRecord> records;  // empty unless config.record_slots
  RunSummary summary;
};

RunResult run(const PreparedScenario& prepared, Algorithm algo, std::size_t horizon,
              std::uint64_t seed, const SimConfig& config);
RunResult run(const Scenario& scenario, Algorithm algo, std::size_t horizon, std::uint64_t seed,
              const SimConfig& config);

/// Recipe for scenarios that a sweep can regenerate per repetition.
struct ScenarioTemplate {
  LayoutSpec layout;
  PhysParams phys;
  double unblocked_probability = 0.7;
  WallGrid wall_grid;
  std::optional<std::vector<Vec3>> ap_positions;    // replaces the AP grid
  std::optional<std::vector<Vec3>> user_positions;  // replaces the random layout
  std::optional<std::vector<QoSProfile>> qos;       // replaces the graded profiles

  [[nodiscard]] Scenario build(std::uint64_t layout_seed) const;
};

enum class SweepAxis { Theta, Fov, UserCount, Beta, EffectiveBandwidth, AlphaFixed };

/// "theta", "fov", "user_count", "beta", "be", "alpha_fixed".
SweepAxis parse_sweep_axis(std::string_view name);
std::string_view sweep_axis_name(SweepAxis axis);

struct SweepSpec {
  SweepAxis axis = SweepAxis::Theta;
  std::vector<double> values;
  std::size_t reps = 1;
};

/// Applies one axis value: theta in 1/bit for every user, fov as the receiver
/// half-angle in degrees, user_count, beta, be in bits/s for every
/// user, alpha_fixed as the AN baselines' split.
void apply_axis(SweepAxis axis, double value, ScenarioTemplate& tmpl, SimConfig& config);

/// Seed of repetition `rep`: the base seed itself for rep 0.
std::uint64_t rep_seed(std::uint64_t base, std::size_t rep);

struct SweepRow {
  SweepAxis axis = SweepAxis::Theta;
  double value = 0.0;
  std::size_t rep = 0;
  std::uint64_t layout_seed = 0;
  RunSummary summary;
};

/// One run per (value, rep). The callback, if set, sees every full result
/// (e.g. to write per-run slot logs) before its records are dropped.
std::vector<SweepRow> sweep(const ScenarioTemplate& tmpl, const SweepSpec& spec, Algorithm algo,
                            std::size_t horizon, std::uint64_t seed, const SimConfig& config,
                            const std::function<void(const SweepRow&, const RunResult&)>& on_run = {});

}  // namespace seccell
