#include "seccell_cli/cli.hpp"

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "seccell/config.hpp"
#include "seccell/csv_output.hpp"
#include "seccell/sim_engine.hpp"

namespace seccell::cli {
namespace fs = std::filesystem;
namespace {

std::ofstream open_out(const fs::path& p) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  return f;
}

void print_run_line(std::ostream& out, const std::string& label, const RunSummary& s) {
  out << label << " algo=" << algorithm_name(s.algorithm) << " slots=" << s.slots
      << " users=" << s.users << " esr_bps=[";
  for (std::size_t j = 0; j < s.esr_bps.size(); ++j) {
    if (j) out << ' ';
    out << format_number(s.esr_bps[j]);
  }
  out << "] mean_esr_bps=" << format_number(s.mean_esr_bps())
      << " max_norm_backlog=" << format_number(s.max_normalized_backlog()) << '\n';
}

void warn_isolated(std::ostream& err, const PreparedScenario& p) {
  for (std::size_t j : p.isolated) {
    err << "warning: user " << j << " has no capable AP and is never scheduled\n";
  }
}

std::string run_dir_name(const SweepRow& row) {
  return std::string(sweep_axis_name(row.axis)) + "_" + format_number(row.value) + "_rep" +
         std::to_string(row.rep);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Secure-cell VLC network simulator"};
  app.set_version_flag("--version", "seccell 0.1.0");
  std::string config_path;
  std::optional<std::string> algo;
  std::optional<std::size_t> slots;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<std::string> sweep_arg;
  std::optional<std::size_t> reps;
  std::optional<std::size_t> threads;
  app.add_option("--config", config_path, "Scenario/run configuration (JSON)")->required();
  app.add_option("--algo", algo, "dpp | mr | pf | mr-an | pf-an");
  app.add_option("--slots", slots, "Horizon in slots");
  app.add_option("--seed", seed, "Base random seed");
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--sweep", sweep_arg, "AXIS=v1,v2,... (theta, fov, user_count, beta, be, alpha_fixed)");
  app.add_option("--reps", reps, "Repetitions per sweep value");
  app.add_option("--threads", threads, "Worker threads for per-user solves");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return 2;
  }

  RunConfig cfg;
  try {
    cfg = load_config_file(config_path);
    if (algo) {
      try {
        cfg.algorithm = parse_algorithm(*algo);
      } catch (const std::invalid_argument& e) {
        throw ConfigError("--algo", e.what());
      }
    }
    if (slots) cfg.slots = *slots;
    if (seed) cfg.seed = *seed;
    if (out_dir) cfg.out = *out_dir;
    if (threads) cfg.sim.threads = *threads;
    if (reps) cfg.reps = *reps;
    if (sweep_arg) cfg.sweep = parse_sweep_arg(*sweep_arg);
    if (cfg.sweep) cfg.sweep->reps = cfg.reps;
    validate_config(cfg);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  }

  try {
    const fs::path dir(cfg.out);
    fs::create_directories(dir);
    auto summary = open_out(dir / "summary.csv");
    write_summary_header(summary);

    if (!cfg.sweep) {
      const Scenario sc = cfg.scenario.build(cfg.scenario.layout.layout_seed);
      const PreparedScenario prepared = prepare(sc, cfg.sim);
      warn_isolated(err, prepared);
      {
        auto graph = open_out(dir / "graph.txt");
        write_edge_list(graph, prepared.graph, prepared.capable, prepared.epsilon);
      }
      const RunResult r = run(prepared, cfg.algorithm, cfg.slots, cfg.seed, cfg.sim);
      auto slots_csv = open_out(dir / "slots.csv");
      write_slots_csv(slots_csv, r.records);
      write_summary_row(summary, {cfg.scenario.layout.layout_seed, "", std::nullopt, 0}, r.summary);
      print_run_line(out, "run", r.summary);
    } else {
      sweep(cfg.scenario, *cfg.sweep, cfg.algorithm, cfg.slots, cfg.seed, cfg.sim,
            [&](const SweepRow& row, const RunResult& r) {
              const fs::path sub = dir / "runs" / run_dir_name(row);
              fs::create_directories(sub);
              auto slots_csv = open_out(sub / "slots.csv");
              write_slots_csv(slots_csv, r.records);
              write_summary_row(summary,
                                {row.layout_seed, std::string(sweep_axis_name(row.axis)), row.value, row.rep},
                                r.summary);
              print_run_line(out, run_dir_name(row), r.summary);
            });
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    // Scenario-level problems found while running (e.g. a sweep value).
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace seccell::cli
