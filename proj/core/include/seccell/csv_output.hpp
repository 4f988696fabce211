#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "seccell/scheduler.hpp"
#include "seccell/sim_engine.hpp"

namespace seccell {

/// Shortest round-trip-stable text for CSV cells ("%.12g").
std::string format_number(double v);

/// t,user,scheduled,alpha,rate_nats,rate_bps,dpp_weight,F,esr_running_bps
void write_slots_csv(std::ostream& os, const std::vector<SlotRecord>& records);

struct SummaryContext {
  std::uint64_t layout_seed = 0;
  std::string axis;             // empty for a plain run
  std::optional<double> value;  // sweep value, if any
  std::size_t rep = 0;
};

void write_summary_header(std::ostream& os);
void write_summary_row(std::ostream& os, const SummaryContext& ctx, const RunSummary& s);

/// Edge list of the interference graph: comment lines with counts and the
/// capable AP set of each user, then one "j k" line per edge with j < k.
void write_edge_list(std::ostream& os, const InterferenceGraph& graph,
                     const std::vector<ApSet>& capable, double epsilon);

}  // namespace seccell
