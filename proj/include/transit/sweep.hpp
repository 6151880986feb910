#pragma once

#include <optional>
#include <string>
#include <vector>

#include "transit/builder.hpp"
#include "transit/objectives.hpp"
#include "transit/welfare.hpp"

namespace transit {

// Per priority group: the unweighted mean utility over its pairs and the
// demand-weighted share of riders with positive utility. Groups with no
// demand report 100% served; groups with no pairs report 0 average utility.
struct GroupMetrics {
  std::vector<double> avg_utility;  // size k, group 1 first
  std::vector<double> pct_served;   // size k, in [0,100]
};

GroupMetrics group_metrics(const NetworkDesign& design, const PriorityProfile& groups,
                           const DemandProfile& demand);

struct SweepRow {
  double budget_fraction = 0.0;
  double budget = 0.0;
  double objective = 0.0;
  double gap = 0.0;
  GroupMetrics metrics;
  double wall_seconds = 0.0;  // manifest-only; never written to the CSV
};

struct SweepResult {
  int group_count = 0;
  double b_max = 0.0;
  std::vector<SweepRow> rows;
  bool aborted = false;  // solver failure leaves the rows gathered so far
  std::string abort_reason;
};

// Warm-started budget sweep: B = fraction * B_max per row, each solve seeded
// with the previous budget's design after a feasibility check.
SweepResult run_sweep(const DesignProblem& problem, const WelfareSpec& spec,
                      const std::vector<double>& fractions, const SolverConfig& config,
                      std::optional<double> b_max = std::nullopt);

// budget_fraction,budget,objective,gap,avg_u_g1..gk,pct_served_g1..gk
void emit_sweep_csv(const SweepResult& result, const std::string& path);
SweepResult parse_sweep_csv(const std::string& path);

// Per-group difference of average utilities (aware minus baseline) for two
// sweeps over the same fraction grid.
void emit_diff_csv(const SweepResult& aware, const SweepResult& baseline, const std::string& path);

// iteration,removed_pair,floor,objective,avg_u_remaining,avg_u_all
void emit_leximax_csv(const LeximaxTrace& trace, const std::vector<std::string>& node_labels,
                      const std::string& path);

void write_manifest(const std::string& path, const std::vector<std::pair<std::string, std::string>>& entries);

std::string format_double(double v);  // shortest round-trip decimal form

}  // namespace transit
