#include "seccell/pso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "seccell/lyapunov.hpp"
#include "seccell/random.hpp"

namespace seccell {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double safe_eval(const Fitness& f, std::span<const double> x) {
  const double v = f(x);
  return std::isfinite(v) ? v : kInf;
}

void clamp_to(std::vector<double>& x, const std::vector<double>& lo, const std::vector<double>& hi) {
  for (std::size_t d = 0; d < x.size(); ++d) x[d] = std::clamp(x[d], lo[d], hi[d]);
}

}  // namespace

void PsoConfig::validate() const {
  if (swarm_size < 2) throw std::invalid_argument("pso.swarm_size must be >= 2");
  if (max_iters < 1) throw std::invalid_argument("pso.max_iters must be >= 1");
  if (stall_threshold < 1) throw std::invalid_argument("pso.stall_threshold must be >= 1");
  if (!(c1 >= 0.0) || !(c2 >= 0.0)) throw std::invalid_argument("pso.c1 and pso.c2 must be >= 0");
}

PsoResult pso_minimize(const PsoProblem& problem, const PsoConfig& config) {
  config.validate();
  const std::size_t dims = problem.lower.size();
  if (dims == 0 || problem.upper.size() != dims) {
    throw std::invalid_argument("pso_minimize: box bounds missing or mismatched");
  }
  for (std::size_t d = 0; d < dims; ++d) {
    if (!(problem.lower[d] <= problem.upper[d])) {
      throw std::invalid_argument("pso_minimize: lower bound exceeds upper bound");
    }
  }
  for (std::size_t m : problem.perturbable) {
    if (m >= dims) throw std::invalid_argument("pso_minimize: perturbable coordinate out of range");
  }

  Rng rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<Particle> swarm(config.swarm_size);
  for (std::size_t p = 0; p < swarm.size(); ++p) {
    Particle& q = swarm[p];
    if (p < problem.seeds.size()) {
      q.position = problem.seeds[p];
      if (q.position.size() != dims) throw std::invalid_argument("pso_minimize: seed has wrong size");
      clamp_to(q.position, problem.lower, problem.upper);
    } else {
      q.position.resize(dims);
      for (std::size_t d = 0; d < dims; ++d) {
        q.position[d] = problem.lower[d] + unit(rng) * (problem.upper[d] - problem.lower[d]);
      }
    }
    q.velocity.resize(dims);
    for (std::size_t d = 0; d < dims; ++d) {
      const double width = problem.upper[d] - problem.lower[d];
      q.velocity[d] = (2.0 * unit(rng) - 1.0) * width;
    }
    q.best_position = q.position;
    q.best_fitness = safe_eval(problem.fitness, q.position);
  }

  std::size_t lead = 0;
  for (std::size_t p = 1; p < swarm.size(); ++p) {
    if (swarm[p].best_fitness < swarm[lead].best_fitness) lead = p;
  }
  PsoResult res;
  res.best_position = swarm[lead].best_position;
  res.best_fitness = swarm[lead].best_fitness;
  res.trace.reserve(config.max_iters + 1);
  res.trace.push_back(res.best_fitness);

  std::vector<double> previous_best = res.best_position;
  std::vector<std::size_t> at_one;
  std::size_t stalled = 0;
  const double n_max = static_cast<double>(config.max_iters);

  for (std::size_t n = 0; n < config.max_iters; ++n) {
    const double inertia = 0.9 - 0.5 * static_cast<double>(n) / n_max;
    for (Particle& q : swarm) {
      const double r1 = unit(rng);
      const double r2 = unit(rng);
      for (std::size_t d = 0; d < dims; ++d) {
        q.velocity[d] = inertia * q.velocity[d] + config.c1 * r1 * (q.best_position[d] - q.position[d]) +
                        config.c2 * r2 * (res.best_position[d] - q.position[d]);
        q.position[d] += q.velocity[d];
        // a particle that hits the wall stops there instead of pressing on
        if (q.position[d] < problem.lower[d] || q.position[d] > problem.upper[d]) {
          q.position[d] = std::clamp(q.position[d], problem.lower[d], problem.upper[d]);
          q.velocity[d] = 0.0;
        }
      }
      const double f = safe_eval(problem.fitness, q.position);
      if (f < q.best_fitness) {
        q.best_fitness = f;
        q.best_position = q.position;
        if (f < res.best_fitness) {
          res.best_fitness = f;
          res.best_position = q.position;
        }
      }
    }

    stalled = res.best_position == previous_best ? stalled + 1 : 0;
    previous_best = res.best_position;

    if (stalled >= config.stall_threshold && !problem.perturbable.empty()) {
      at_one.clear();
      for (std::size_t m : problem.perturbable) {
        if (std::abs(res.best_position[m] - 1.0) < 1e-6) at_one.push_back(m);
      }
      const auto& pool = at_one.empty() ? problem.perturbable : at_one;
      std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
      const std::size_t m = pool[pick(rng)];
      std::vector<double> candidate = res.best_position;
      candidate[m] *= 1.0 - 0.1 * unit(rng);
      clamp_to(candidate, problem.lower, problem.upper);
      ++res.perturbations;
      const double f = safe_eval(problem.fitness, candidate);
      if (f < res.best_fitness) {
        res.best_fitness = f;
        res.best_position = std::move(candidate);
        ++res.accepted_perturbations;
      }
      stalled = 0;
      previous_best = res.best_position;
    }
    res.trace.push_back(res.best_fitness);
  }
  return res;
}

IntraCellSolution solve_intra_cell(std::size_t user, const ChannelState& channel, double backlog,
                                   const QoSProfile& qos, double peak_amplitude,
                                   double noise_variance, const PsoConfig& config) {
  IntraCellSolution out;
  const auto& h = channel.h.at(user);
  const std::size_t n = h.size();
  if (n == 0) {
    out.schedulable = false;
    out.dpp_value = dpp_user_term(backlog, 0.0, qos);
    return out;
  }
  out.schedulable = true;
  const CellEvaluator eval(user, channel, peak_amplitude, noise_variance);

  PsoProblem problem;
  if (n == 1) {
    problem.fitness = [&](std::span<const double> x) {
      return dpp_user_term(backlog, eval.rate(x, 1.0), qos);
    };
    problem.lower = {-1.0};
    problem.upper = {1.0};
    problem.seeds = {{1.0}};
    problem.perturbable = {0};
  } else {
    problem.fitness = [&](std::span<const double> x) {
      return dpp_user_term(backlog, eval.rate(x.first(n), x[n]), qos);
    };
    problem.lower.assign(n + 1, -1.0);
    problem.upper.assign(n + 1, 1.0);
    problem.lower[n] = 0.0;
    std::vector<double> ones = all_ones(n);
    std::vector<double> mrt = mrt_precoder(h);
    ones.push_back(0.7);
    mrt.push_back(0.7);
    std::vector<double> full = all_ones(n + 1);
    problem.seeds = {ones, mrt, full};
    problem.perturbable.resize(n);
    for (std::size_t i = 0; i < n; ++i) problem.perturbable[i] = i;
  }

  PsoResult res = pso_minimize(problem, config);
  const double alpha = n == 1 ? 1.0 : res.best_position[n];
  std::vector<double> w(res.best_position.begin(), res.best_position.begin() + static_cast<std::ptrdiff_t>(n));
  out.rate = eval.rate(w, alpha);
  out.params.alpha = alpha;
  out.params.w = std::move(w);
  out.params.nullspace = eval.nullspace();
  out.dpp_value = res.best_fitness;
  out.trace = std::move(res.trace);
  return out;
}

}  // namespace seccell
