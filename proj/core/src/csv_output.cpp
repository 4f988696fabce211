#include "seccell/csv_output.hpp"

#include <cstdio>

namespace seccell {
namespace {

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ';';
    out += format_number(v[i]);
  }
  return out;
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);  // no "-0"
  return buf;
}

void write_slots_csv(std::ostream& os, const std::vector<SlotRecord>& records) {
  os << "t,user,scheduled,alpha,rate_nats,rate_bps,dpp_weight,F,esr_running_bps\n";
  for (const SlotRecord& r : records) {
    for (std::size_t j = 0; j < r.scheduled.size(); ++j) {
      os << r.t << ',' << j << ',' << int(r.scheduled[j]) << ',' << format_number(r.alpha[j]) << ','
         << format_number(r.rate_nats[j]) << ',' << format_number(r.rate_bps[j]) << ','
         << format_number(r.dpp_weight[j]) << ',' << format_number(r.F[j]) << ','
         << format_number(r.esr_running_bps[j]) << '\n';
    }
  }
}

void write_summary_header(std::ostream& os) {
  os << "algo,seed,layout_seed,axis,value,rep,slots,users,mean_esr_bps,mean_rate_bps,"
        "mean_sched_frac,max_norm_backlog,esr_bps,rate_bps,sched_frac,norm_backlog\n";
}

void write_summary_row(std::ostream& os, const SummaryContext& ctx, const RunSummary& s) {
  os << algorithm_name(s.algorithm) << ',' << s.seed << ',' << ctx.layout_seed << ',' << ctx.axis
     << ',' << (ctx.value ? format_number(*ctx.value) : std::string()) << ',' << ctx.rep << ','
     << s.slots << ',' << s.users << ',' << format_number(s.mean_esr_bps()) << ','
     << format_number(s.mean_rate()) << ',' << format_number(s.mean_schedule_fraction()) << ','
     << format_number(s.max_normalized_backlog()) << ',' << join(s.esr_bps) << ','
     << join(s.mean_rate_bps) << ',' << join(s.schedule_fraction) << ','
     << join(s.normalized_backlog) << '\n';
}

void write_edge_list(std::ostream& os, const InterferenceGraph& graph,
                     const std::vector<ApSet>& capable, double epsilon) {
  os << "# users " << graph.size() << " edges " << graph.num_edges() << " epsilon "
     << format_number(epsilon) << '\n';
  for (std::size_t j = 0; j < capable.size(); ++j) {
    os << "# omega " << j << ':';
    for (std::size_t i : capable[j]) os << ' ' << i;
    os << '\n';
  }
  for (std::size_t j = 0; j < graph.size(); ++j) {
    for (std::size_t k : graph.neighbors(j)) {
      if (k > j) os << j << ' ' << k << '\n';
    }
  }
}

}  // namespace seccell
