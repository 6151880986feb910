#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "transit/lp.hpp"

namespace transit {

enum class VarKind { kContinuous, kInteger };

struct MilpVariable {
  std::string name;
  double lb = 0.0;
  double ub = 0.0;
  VarKind kind = VarKind::kContinuous;
  int branch_priority = 0;  // higher branches first
};

struct MilpRow {
  std::string name;
  std::vector<std::pair<int, double>> terms;
  char sense = 'L';  // 'L' <=, 'E' ==, 'G' >=
  double rhs = 0.0;
};

// Solver-agnostic MILP: a variable registry, linear constraints, and a linear
// objective. The branch-and-bound engine below is one backend satisfying it.
class MilpModel {
 public:
  int add_variable(std::string name, double lb, double ub, VarKind kind, int branch_priority = 0);
  void add_constraint(std::string name, std::vector<std::pair<int, double>> terms, char sense,
                      double rhs);
  void set_objective(std::vector<std::pair<int, double>> terms, bool maximize);

  int num_variables() const { return static_cast<int>(vars_.size()); }
  int num_constraints() const { return static_cast<int>(rows_.size()); }
  const std::vector<MilpVariable>& variables() const { return vars_; }
  const std::vector<MilpRow>& rows() const { return rows_; }
  const std::vector<double>& objective() const { return obj_; }
  bool maximize() const { return maximize_; }

  double objective_value(const std::vector<double>& x) const;
  // Absolute-tolerance feasibility check (bounds, rows, integrality).
  bool is_feasible(const std::vector<double>& x, double tol, std::string* why = nullptr) const;

  // Textual dump in the LP file format, for debugging.
  void write_lp(std::ostream& os) const;

 private:
  std::vector<MilpVariable> vars_;
  std::vector<MilpRow> rows_;
  std::vector<double> obj_;
  bool maximize_ = true;
};

struct MilpOptions {
  double rel_gap = 1e-4;
  double time_limit_sec = 600.0;
  std::uint64_t seed = 0;  // recorded in manifests; the engine itself is deterministic
  int verbosity = 0;
  long max_nodes = 8'000'000;
};

struct MilpResult {
  std::vector<double> values;
  double objective = 0.0;
  double best_bound = 0.0;
  double rel_gap = 0.0;
  long nodes = 0;
  long lp_iterations = 0;
  double wall_seconds = 0.0;
  bool hit_time_limit = false;
};

// Optional primal heuristic: receives a node's LP-relaxation values and may
// return a full candidate assignment (verified by the engine before use).
using MilpHeuristic = std::function<std::optional<std::vector<double>>(const std::vector<double>&)>;

// Best-bound branch-and-bound over the simplex relaxation. Deterministic for a
// fixed model and options. Throws SolverError on infeasible models and on a
// time limit with no incumbent.
MilpResult solve_milp(const MilpModel& model, const MilpOptions& options,
                      const std::optional<std::vector<double>>& warm_start = std::nullopt,
                      const MilpHeuristic& heuristic = nullptr);

}  // namespace transit
