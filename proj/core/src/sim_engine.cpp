#include "seccell/sim_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

#include "seccell/effective_rate.hpp"
#include "seccell/lyapunov.hpp"
#include "seccell/random.hpp"
#include "seccell/secrecy.hpp"

namespace seccell {
namespace {

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

bool uses_an(Algorithm a) {
  return a == Algorithm::MaxRateAn || a == Algorithm::ProportionalFairAn;
}

bool uses_pf(Algorithm a) {
  return a == Algorithm::ProportionalFair || a == Algorithm::ProportionalFairAn;
}

// Runs fn(j) for every user, striding users across worker threads.
template <class Fn>
void for_each_user(std::size_t count, std::size_t threads, Fn&& fn) {
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t j = 0; j < count; ++j) fn(j);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t j = w; j < count; j += threads) fn(j);
    });
  }
}

}  // namespace

Algorithm parse_algorithm(std::string_view tag) {
  if (tag == "dpp") return Algorithm::Dpp;
  if (tag == "mr") return Algorithm::MaxRate;
  if (tag == "pf") return Algorithm::ProportionalFair;
  if (tag == "mr-an") return Algorithm::MaxRateAn;
  if (tag == "pf-an") return Algorithm::ProportionalFairAn;
  throw std::invalid_argument("unknown algorithm '" + std::string(tag) +
                              "' (expected dpp, mr, pf, mr-an or pf-an)");
}

std::string_view algorithm_name(Algorithm algo) {
  switch (algo) {
    case Algorithm::Dpp: return "dpp";
    case Algorithm::MaxRate: return "mr";
    case Algorithm::ProportionalFair: return "pf";
    case Algorithm::MaxRateAn: return "mr-an";
    case Algorithm::ProportionalFairAn: return "pf-an";
  }
  return "?";
}

void SimConfig::validate() const {
  pso.validate();
  if (!(pf_window >= 1.0)) throw std::invalid_argument("scheduler.pf_window_slots must be >= 1");
  if (!(an_alpha >= 0.0 && an_alpha <= 1.0)) {
    throw std::invalid_argument("scheduler.an_alpha must be in [0, 1]");
  }
  if (!(epsilon_grid.quantile > 0.0 && epsilon_grid.quantile <= 1.0)) {
    throw std::invalid_argument("epsilon.quantile must be in (0, 1]");
  }
  if (!(epsilon_grid.spacing > 0.0)) throw std::invalid_argument("epsilon.grid_spacing_m must be positive");
  if (epsilon && !(*epsilon >= 0.0)) throw std::invalid_argument("epsilon.value must be >= 0");
  if (threads == 0) throw std::invalid_argument("run.threads must be >= 1");
}

PreparedScenario prepare(const Scenario& scenario, const SimConfig& config) {
  scenario.validate();
  config.validate();
  if (scenario.num_users() < 2) {
    throw std::invalid_argument("need >= 2 users: every secrecy rate needs an eavesdropper");
  }
  PreparedScenario p;
  p.scenario = scenario;
  p.gains = compute_gains(scenario);
  p.epsilon = config.epsilon ? *config.epsilon : epsilon_threshold(scenario, config.epsilon_grid);
  p.capable = capable_ap_sets(p.gains, p.epsilon);
  p.graph = build_ig(p.capable);
  for (std::size_t j = 0; j < p.capable.size(); ++j) {
    if (p.capable[j].empty()) p.isolated.push_back(j);
  }
  return p;
}

RunResult run(const PreparedScenario& prepared, Algorithm algo, std::size_t horizon,
              std::uint64_t seed, const SimConfig& config) {
  config.validate();
  if (horizon < 1) throw std::invalid_argument("run.slots must be >= 1");
  const Scenario& sc = prepared.scenario;
  const std::size_t ku = sc.num_users();
  const std::size_t ka = sc.num_aps();
  const double amp = sc.phys.peak_amplitude();
  const double noise = sc.phys.noise_variance();
  const double bw = sc.phys.bandwidth_hz;

  Rng channel_rng(derive_seed(seed, {kStreamChannel}));
  VirtualQueueState queues(ku);
  std::vector<EsrAccumulator> esr;
  esr.reserve(ku);
  for (const auto& q : sc.qos) esr.emplace_back(q.theta);
  std::vector<double> avg_rate(ku, 0.0);  // PF memory
  std::vector<std::size_t> times_scheduled(ku, 0);

  std::vector<IntraCellSolution> solutions(ku);
  std::vector<double> weights(ku, 0.0);
  std::vector<double> mr(ku, 0.0);
  std::vector<double> rates(ku, 0.0);
  std::vector<double> alphas(ku, 0.0);

  RunResult result;
  if (config.record_slots) result.records.reserve(horizon);

  for (std::size_t t = 0; t < horizon; ++t) {
    const ChannelState ch =
        sample_slot_channel(prepared.gains, prepared.capable, sc.unblocked_probability, t, channel_rng);

    Schedule schedule;
    if (algo == Algorithm::Dpp) {
      for_each_user(ku, config.threads, [&](std::size_t j) {
        PsoConfig pc = config.pso;
        pc.seed = derive_seed(seed, {kStreamPso, t, j});
        solutions[j] = solve_intra_cell(j, ch, queues.F[j], sc.qos[j], amp, noise, pc);
        weights[j] = solutions[j].dpp_value;
      });
      schedule = greedy_min_weight_is(prepared.graph, weights, prepared.capable, ka);
      for (std::size_t j = 0; j < ku; ++j) {
        const bool on = schedule.is_scheduled[j] != 0;
        rates[j] = on ? solutions[j].rate : 0.0;
        alphas[j] = solutions[j].schedulable ? solutions[j].params.alpha : 0.0;
      }
    } else {
      for (std::size_t j = 0; j < ku; ++j) mr[j] = mr_rate(ch.h[j], amp, noise);
      if (t == 0) avg_rate = mr;
      const auto mode = uses_pf(algo) ? BaselineMode::ProportionalFair : BaselineMode::MaxRate;
      schedule = baseline_schedule(mode, prepared.graph, mr, avg_rate, prepared.capable, ka);
      // Every baseline keeps the fixed data share; only the AN variants
      // spend the remainder on jamming.
      for (std::size_t j = 0; j < ku; ++j) {
        const std::size_t n = ch.h[j].size();
        alphas[j] = n == 0 ? 0.0 : (n == 1 ? 1.0 : config.an_alpha);
        rates[j] = 0.0;
        if (schedule.is_scheduled[j]) {
          const CellEvaluator eval(j, ch, amp, noise);
          rates[j] = eval.rate(all_ones(n), alphas[j], uses_an(algo));
        }
      }
      for (std::size_t j = 0; j < ku; ++j) {
        avg_rate[j] = pf_priority_update(avg_rate[j], mr[j], schedule.is_scheduled[j] != 0,
                                         config.pf_window);
      }
    }

    SlotRecord rec;
    if (config.record_slots) {
      rec.t = t;
      rec.scheduled = schedule.is_scheduled;
      rec.alpha = alphas;
      rec.rate_nats = rates;
      rec.rate_bps.resize(ku);
      rec.dpp_weight.resize(ku);
      for (std::size_t j = 0; j < ku; ++j) {
        rec.rate_bps[j] = rate_to_bits_per_second(rates[j], bw);
        rec.dpp_weight[j] = dpp_user_term(queues.F[j], rates[j], sc.qos[j]);
      }
    }

    update_queues(queues, rates, sc.qos);
    for (std::size_t j = 0; j < ku; ++j) {
      esr[j].add(rates[j]);
      times_scheduled[j] += schedule.is_scheduled[j];
    }

    if (config.record_slots) {
      rec.F = queues.F;
      rec.esr_running_bps.resize(ku);
      for (std::size_t j = 0; j < ku; ++j) {
        rec.esr_running_bps[j] = rate_to_bits_per_second(esr[j].value(), bw);
      }
      result.records.push_back(std::move(rec));
    }
  }

  RunSummary& s = result.summary;
  s.algorithm = algo;
  s.seed = seed;
  s.slots = horizon;
  s.users = ku;
  const double T = static_cast<double>(horizon);
  for (std::size_t j = 0; j < ku; ++j) {
    s.esr_bps.push_back(rate_to_bits_per_second(esr[j].value(), bw));
    s.mean_rate_bps.push_back(rate_to_bits_per_second(esr[j].mean_rate(), bw));
    s.schedule_fraction.push_back(static_cast<double>(times_scheduled[j]) / T);
    s.normalized_backlog.push_back(queues.F[j] / T);
  }
  return result;
}

RunResult run(const Scenario& scenario, Algorithm algo, std::size_t horizon, std::uint64_t seed,
              const SimConfig& config) {
  return run(prepare(scenario, config), algo, horizon, seed, config);
}

double RunSummary::mean_esr_bps() const { return mean_of(esr_bps); }
double RunSummary::mean_rate() const { return mean_of(mean_rate_bps); }
double RunSummary::mean_schedule_fraction() const { return mean_of(schedule_fraction); }
double RunSummary::max_normalized_backlog() const {
  double m = 0.0;
  for (double x : normalized_backlog) m = std::max(m, x);
  return m;
}

Scenario ScenarioTemplate::build(std::uint64_t layout_seed) const {
  LayoutSpec spec = layout;
  spec.layout_seed = layout_seed;
  if (user_positions) spec.num_users = user_positions->size();
  Scenario s = make_grid_scenario(spec, phys, unblocked_probability, wall_grid);
  if (ap_positions) s.ap_positions = *ap_positions;
  if (user_positions) s.user_positions = *user_positions;
  if (qos) s.qos = *qos;
  return s;
}

SweepAxis parse_sweep_axis(std::string_view name) {
  if (name == "theta") return SweepAxis::Theta;
  if (name == "fov") return SweepAxis::Fov;
  if (name == "user_count") return SweepAxis::UserCount;
  if (name == "beta") return SweepAxis::Beta;
  if (name == "be") return SweepAxis::EffectiveBandwidth;
  if (name == "alpha_fixed") return SweepAxis::AlphaFixed;
  throw std::invalid_argument("unknown sweep axis '" + std::string(name) +
                              "' (expected theta, fov, user_count, beta, be or alpha_fixed)");
}

std::string_view sweep_axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::Theta: return "theta";
    case SweepAxis::Fov: return "fov";
    case SweepAxis::UserCount: return "user_count";
    case SweepAxis::Beta: return "beta";
    case SweepAxis::EffectiveBandwidth: return "be";
    case SweepAxis::AlphaFixed: return "alpha_fixed";
  }
  return "?";
}

void apply_axis(SweepAxis axis, double value, ScenarioTemplate& tmpl, SimConfig& config) {
  const double bw = tmpl.phys.bandwidth_hz;
  switch (axis) {
    case SweepAxis::Theta:
      if (!(value > 0.0)) throw std::invalid_argument("sweep theta values must be positive");
      tmpl.layout.theta_lo_per_bit = tmpl.layout.theta_hi_per_bit = value;
      if (tmpl.qos) {
        for (auto& q : *tmpl.qos) q = QoSProfile::from_bits(value, q.effective_bandwidth_bps(bw), bw);
      }
      break;
    case SweepAxis::Fov:
      if (!(value > 0.0 && value < 180.0)) throw std::invalid_argument("sweep fov values must be in (0, 180)");
      tmpl.phys.fov_half = deg_to_rad(value);
      break;
    case SweepAxis::UserCount:
      if (tmpl.user_positions) {
        throw std::invalid_argument("sweep user_count needs generated users, not users.positions");
      }
      if (!(value >= 2.0) || value != std::floor(value)) {
        throw std::invalid_argument("sweep user_count values must be integers >= 2");
      }
      tmpl.layout.num_users = static_cast<std::size_t>(value);
      tmpl.qos.reset();
      break;
    case SweepAxis::Beta:
      if (!(value >= 0.0 && value <= 1.0)) throw std::invalid_argument("sweep beta values must be in [0, 1]");
      tmpl.unblocked_probability = value;
      break;
    case SweepAxis::EffectiveBandwidth:
      if (!(value >= 0.0)) throw std::invalid_argument("sweep be values must be >= 0");
      tmpl.layout.be_lo_bps = tmpl.layout.be_hi_bps = value;
      if (tmpl.qos) {
        for (auto& q : *tmpl.qos) q = QoSProfile::from_bits(q.theta_per_bit(bw), value, bw);
      }
      break;
    case SweepAxis::AlphaFixed:
      if (!(value >= 0.0 && value <= 1.0)) throw std::invalid_argument("sweep alpha_fixed values must be in [0, 1]");
      config.an_alpha = value;
      break;
  }
}

std::uint64_t rep_seed(std::uint64_t base, std::size_t rep) {
  return rep == 0 ? base : derive_seed(base, {static_cast<std::uint64_t>(rep)});
}

std::vector<SweepRow> sweep(const ScenarioTemplate& tmpl, const SweepSpec& spec, Algorithm algo,
                            std::size_t horizon, std::uint64_t seed, const SimConfig& config,
                            const std::function<void(const SweepRow&, const RunResult&)>& on_run) {
  if (spec.values.empty()) throw std::invalid_argument("sweep needs at least one value");
  if (spec.reps < 1) throw std::invalid_argument("run.reps must be >= 1");
  std::vector<SweepRow> rows;
  rows.reserve(spec.values.size() * spec.reps);
  for (double value : spec.values) {
    ScenarioTemplate t = tmpl;
    SimConfig c = config;
    apply_axis(spec.axis, value, t, c);
    c.record_slots = config.record_slots && static_cast<bool>(on_run);
    for (std::size_t rep = 0; rep < spec.reps; ++rep) {
      SweepRow row;
      row.axis = spec.axis;
      row.value = value;
      row.rep = rep;
      row.layout_seed = rep_seed(tmpl.layout.layout_seed, rep);
      RunResult r = run(t.build(row.layout_seed), algo, horizon, rep_seed(seed, rep), c);
      row.summary = r.summary;
      if (on_run) on_run(row, r);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace seccell
