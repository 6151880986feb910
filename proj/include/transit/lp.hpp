#pragma once

#include <utility>
#include <vector>

namespace transit {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

struct LpConstraint {
  std::vector<std::pair<int, double>> terms;  // (column, coefficient), columns may repeat
  char sense = 'L';                           // 'L' <=, 'E' ==, 'G' >=
  double rhs = 0.0;
};

// minimize obj . x subject to rows, lb <= x <= ub (bounds may be +-infinity,
// but every variable needs at least one finite bound).
struct LinearProgram {
  int num_vars = 0;
  std::vector<double> lb;
  std::vector<double> ub;
  std::vector<double> obj;
  std::vector<LpConstraint> rows;
};

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> x;
  long iterations = 0;
};

// Two-phase primal simplex on the full dense tableau with bounded variables.
// Deterministic: Dantzig pricing with lowest-index tie-breaks and a Bland
// fallback after prolonged degeneracy. Buffers are reused across solves, so a
// solver instance is single-owner.
class SimplexSolver {
 public:
  LpSolution solve(const LinearProgram& lp);

 private:
  enum class Stat : unsigned char { kBasic, kAtLower, kAtUpper };

  double* row(int i) { return tableau_.data() + static_cast<size_t>(i) * static_cast<size_t>(width_); }
  double nonbasic_value(int j) const;
  void pivot(int r, int e, double entering_value);
  void apply_step(int e, double delta);
  int price(bool bland) const;
  void compute_reduced_costs();
  bool run_phase(long max_iters, long* iters);

  int m_ = 0;          // rows
  int n_ = 0;          // structural columns
  int width_ = 0;      // total columns incl. slacks and artificials
  int art_begin_ = 0;  // first artificial column
  std::vector<double> tableau_;
  std::vector<double> beta_;  // basic variable values per row
  std::vector<double> lb_, ub_, cost_, d_;
  std::vector<int> basis_;
  std::vector<Stat> stat_;
};

}  // namespace transit
