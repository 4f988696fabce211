#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "seccell/channel.hpp"
#include "seccell/effective_rate.hpp"
#include "seccell/secrecy.hpp"

namespace seccell {

struct PsoConfig {
  std::size_t swarm_size = 40;
  std::size_t max_iters = 100;
  std::size_t stall_threshold = 5;
  double c1 = 1.0;
  double c2 = 1.0;
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument naming the offending pso.* key.
  void validate() const;
};

struct Particle {
  std::vector<double> position;
  std::vector<double> velocity;
  std::vector<double> best_position;
  double best_fitness = 0.0;
};

using Fitness = std::function<double(std::span<const double>)>;

struct PsoProblem {
  Fitness fitness;
  std::vector<double> lower;
  std::vector<double> upper;
  /// Deterministic starting positions, clamped and placed first in the swarm.
  std::vector<std::vector<double>> seeds;
  /// Coordinates the stall perturbation may touch. Those sitting at 1 are
  /// preferred; empty disables the perturbation.
  std::vector<std::size_t> perturbable;
};

struct PsoResult {
  std::vector<double> best_position;
  double best_fitness = 0.0;
  std::vector<double> trace;  // gbest fitness after init and after each iteration
  std::size_t perturbations = 0;
  std::size_t accepted_perturbations = 0;
};

/// Box-constrained particle swarm minimization with decaying inertia and a
/// stall-triggered shrink of one gbest coordinate. Non-finite fitness values
/// count as +inf.
PsoResult pso_minimize(const PsoProblem& problem, const PsoConfig& config);

struct IntraCellSolution {
  bool schedulable = false;
  SecureCellParams params;
  double dpp_value = 0.0;  // per-user drift-plus-penalty term at the returned params
  double rate = 0.0;       // secrecy rate if scheduled, nats per channel use
  std::vector<double> trace;
};

/// Chooses (w, alpha) for one user's cell by minimizing its drift-plus-penalty
/// term. A single-AP cell optimizes the scalar w with alpha = 1; a user with
/// no capable AP is returned unschedulable with the zero-rate term.
IntraCellSolution solve_intra_cell(std::size_t user, const ChannelState& channel, double backlog,
                                   const QoSProfile& qos, double peak_amplitude,
                                   double noise_variance, const PsoConfig& config);

}  // namespace seccell
