#include "transit/lp.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#include "transit/errors.hpp"

namespace transit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDualTol = 1e-9;    // reduced-cost optimality threshold
constexpr double kPivotTol = 1e-8;   // minimum acceptable pivot magnitude
constexpr double kZeroTol = 1e-11;   // treat tableau entries below this as zero
constexpr double kFeasTol = 1e-7;    // phase-1 residual accepted as feasible
constexpr long kDegenerateLimit = 2000;  // consecutive degenerate steps before Bland

}  // namespace

double SimplexSolver::nonbasic_value(int j) const {
  return stat_[static_cast<size_t>(j)] == Stat::kAtUpper ? ub_[static_cast<size_t>(j)]
                                                         : lb_[static_cast<size_t>(j)];
}

// Moves entering column e by delta, updating every basic value.
void SimplexSolver::apply_step(int e, double delta) {
  if (delta == 0.0) return;
  for (int i = 0; i < m_; ++i) {
    const double t = row(i)[e];
    if (t != 0.0) beta_[static_cast<size_t>(i)] -= delta * t;
  }
}

void SimplexSolver::pivot(int r, int e, double entering_value) {
  double* pr = row(r);
  const double piv = pr[e];
  const double inv = 1.0 / piv;
  for (int j = 0; j < width_; ++j) pr[j] *= inv;
  pr[e] = 1.0;

  for (int i = 0; i < m_; ++i) {
    if (i == r) continue;
    double* pi = row(i);
    const double f = pi[e];
    if (std::fabs(f) <= kZeroTol) {
      pi[e] = 0.0;
      continue;
    }
    for (int j = 0; j < width_; ++j) pi[j] -= f * pr[j];
    pi[e] = 0.0;
  }

  const double f = d_[static_cast<size_t>(e)];
  if (std::fabs(f) > 0.0) {
    for (int j = 0; j < width_; ++j) d_[static_cast<size_t>(j)] -= f * pr[j];
  }
  d_[static_cast<size_t>(e)] = 0.0;

  basis_[static_cast<size_t>(r)] = e;
  beta_[static_cast<size_t>(r)] = entering_value;
  stat_[static_cast<size_t>(e)] = Stat::kBasic;
}

// Most-negative-violation pricing; Bland mode picks the lowest eligible index.
int SimplexSolver::price(bool bland) const {
  int best = -1;
  double best_score = kDualTol;
  for (int j = 0; j < width_; ++j) {
    const Stat s = stat_[static_cast<size_t>(j)];
    if (s == Stat::kBasic) continue;
    if (ub_[static_cast<size_t>(j)] - lb_[static_cast<size_t>(j)] <= 0.0) continue;  // fixed
    const double dj = d_[static_cast<size_t>(j)];
    double score = 0.0;
    if (s == Stat::kAtLower && dj < -kDualTol) score = -dj;
    if (s == Stat::kAtUpper && dj > kDualTol) score = dj;
    if (score > best_score) {
      best = j;
      best_score = score;
      if (bland) break;
    }
  }
  return best;
}

void SimplexSolver::compute_reduced_costs() {
  d_ = cost_;
  for (int i = 0; i < m_; ++i) {
    const double cb = cost_[static_cast<size_t>(basis_[static_cast<size_t>(i)])];
    if (cb == 0.0) continue;
    const double* pi = row(i);
    for (int j = 0; j < width_; ++j) d_[static_cast<size_t>(j)] -= cb * pi[j];
  }
  for (int i = 0; i < m_; ++i) d_[static_cast<size_t>(basis_[static_cast<size_t>(i)])] = 0.0;
}

// Runs the current phase to optimality. Returns false on unboundedness.
bool SimplexSolver::run_phase(long max_iters, long* iters) {
  long degenerate_run = 0;
  bool bland = false;
  while (*iters < max_iters) {
    const int e = price(bland);
    if (e < 0) return true;  // optimal for this phase
    ++*iters;

    const double dir = stat_[static_cast<size_t>(e)] == Stat::kAtLower ? 1.0 : -1.0;
    double best_t = ub_[static_cast<size_t>(e)] - lb_[static_cast<size_t>(e)];  // bound flip
    int leave_row = -1;
    double leave_piv = 0.0;
    bool leave_at_lower = false;

    for (int i = 0; i < m_; ++i) {
      const double a = row(i)[e] * dir;
      if (std::fabs(a) <= kPivotTol) continue;
      const int b = basis_[static_cast<size_t>(i)];
      double t;
      bool at_lower;
      if (a > 0.0) {  // basic value decreases toward its lower bound
        const double lo = lb_[static_cast<size_t>(b)];
        if (lo == -kInf) continue;
        t = (beta_[static_cast<size_t>(i)] - lo) / a;
        at_lower = true;
      } else {  // basic value increases toward its upper bound
        const double hi = ub_[static_cast<size_t>(b)];
        if (hi == kInf) continue;
        t = (hi - beta_[static_cast<size_t>(i)]) / (-a);
        at_lower = false;
      }
      if (t < 0.0) t = 0.0;
      // Prefer strictly smaller ratios; break near-ties toward larger pivots.
      if (t < best_t - 1e-12 ||
          (leave_row >= 0 && t < best_t + 1e-12 && std::fabs(row(i)[e]) > std::fabs(leave_piv))) {
        best_t = std::min(best_t, t);
        leave_row = i;
        leave_piv = row(i)[e];
        leave_at_lower = at_lower;
      }
    }

    if (best_t == kInf) return false;  // unbounded direction

    degenerate_run = best_t <= 1e-12 ? degenerate_run + 1 : 0;
    bland = degenerate_run > kDegenerateLimit;

    const double delta = dir * best_t;
    if (leave_row < 0) {
      // Bound flip: the entering variable traverses to its other bound.
      apply_step(e, delta);
      stat_[static_cast<size_t>(e)] =
          stat_[static_cast<size_t>(e)] == Stat::kAtLower ? Stat::kAtUpper : Stat::kAtLower;
    } else {
      const double entering_value = nonbasic_value(e) + delta;
      apply_step(e, delta);
      const int leaving = basis_[static_cast<size_t>(leave_row)];
      stat_[static_cast<size_t>(leaving)] = leave_at_lower ? Stat::kAtLower : Stat::kAtUpper;
      pivot(leave_row, e, entering_value);
    }
  }
  return true;  // iteration cap; caller inspects
}

LpSolution SimplexSolver::solve(const LinearProgram& lp) {
  m_ = static_cast<int>(lp.rows.size());
  n_ = lp.num_vars;
  const int slack_begin = n_;
  art_begin_ = n_ + m_;
  width_ = n_ + 2 * m_;  // worst case: one slack and one artificial per row

  lb_.assign(static_cast<size_t>(width_), 0.0);
  ub_.assign(static_cast<size_t>(width_), 0.0);
  cost_.assign(static_cast<size_t>(width_), 0.0);
  stat_.assign(static_cast<size_t>(width_), Stat::kAtLower);
  basis_.assign(static_cast<size_t>(m_), -1);
  beta_.assign(static_cast<size_t>(m_), 0.0);
  tableau_.assign(static_cast<size_t>(m_) * static_cast<size_t>(width_), 0.0);

  for (int j = 0; j < n_; ++j) {
    lb_[static_cast<size_t>(j)] = lp.lb[static_cast<size_t>(j)];
    ub_[static_cast<size_t>(j)] = lp.ub[static_cast<size_t>(j)];
    if (lb_[static_cast<size_t>(j)] > ub_[static_cast<size_t>(j)])
      return {LpStatus::kInfeasible, 0.0, {}, 0};
    if (lb_[static_cast<size_t>(j)] == -kInf && ub_[static_cast<size_t>(j)] == kInf)
      throw SolverError("free variables are not supported");
    stat_[static_cast<size_t>(j)] =
        lb_[static_cast<size_t>(j)] != -kInf ? Stat::kAtLower : Stat::kAtUpper;
  }

  // Slack variable per row; its bounds encode the row sense.
  for (int i = 0; i < m_; ++i) {
    const int s = slack_begin + i;
    switch (lp.rows[static_cast<size_t>(i)].sense) {
      case 'L':
        lb_[static_cast<size_t>(s)] = 0.0;
        ub_[static_cast<size_t>(s)] = kInf;
        stat_[static_cast<size_t>(s)] = Stat::kAtLower;
        break;
      case 'G':
        lb_[static_cast<size_t>(s)] = -kInf;
        ub_[static_cast<size_t>(s)] = 0.0;
        stat_[static_cast<size_t>(s)] = Stat::kAtUpper;
        break;
      case 'E':
        lb_[static_cast<size_t>(s)] = 0.0;
        ub_[static_cast<size_t>(s)] = 0.0;
        stat_[static_cast<size_t>(s)] = Stat::kAtLower;
        break;
      default:
        throw SolverError("unknown row sense");
    }
    double* pi = row(i);
    for (const auto& [col, coef] : lp.rows[static_cast<size_t>(i)].terms) {
      if (col < 0 || col >= n_) throw SolverError("constraint references unknown column");
      pi[col] += coef;
    }
    pi[s] = 1.0;
  }

  // Initial basis: the slack where its bounds admit the residual, otherwise an
  // artificial carrying the violation.
  int art_count = 0;
  for (int i = 0; i < m_; ++i) {
    double* pi = row(i);
    double r = lp.rows[static_cast<size_t>(i)].rhs;
    for (int j = 0; j < n_; ++j) {
      if (pi[j] != 0.0) r -= pi[j] * nonbasic_value(j);
    }
    const int s = slack_begin + i;
    if (r >= lb_[static_cast<size_t>(s)] - 1e-12 && r <= ub_[static_cast<size_t>(s)] + 1e-12) {
      basis_[static_cast<size_t>(i)] = s;
      beta_[static_cast<size_t>(i)] = r;
      stat_[static_cast<size_t>(s)] = Stat::kBasic;
    } else {
      if (r < 0.0) {
        for (int j = 0; j < width_; ++j) pi[j] = -pi[j];
        r = -r;
      }
      const int a = art_begin_ + art_count++;
      pi[a] = 1.0;
      lb_[static_cast<size_t>(a)] = 0.0;
      ub_[static_cast<size_t>(a)] = kInf;
      cost_[static_cast<size_t>(a)] = 1.0;
      stat_[static_cast<size_t>(a)] = Stat::kBasic;
      basis_[static_cast<size_t>(i)] = a;
      beta_[static_cast<size_t>(i)] = r;
    }
  }

  LpSolution out;
  const long max_iters = 20000 + 200L * (m_ + n_);

  // Phase 1: minimize total artificial mass.
  if (art_count > 0) {
    compute_reduced_costs();
    if (!run_phase(max_iters, &out.iterations))
      throw SolverError("phase-1 subproblem reported unbounded");
    if (out.iterations >= max_iters) {
      out.status = LpStatus::kIterationLimit;
      return out;
    }
    double infeas = 0.0;
    for (int i = 0; i < m_; ++i)
      if (basis_[static_cast<size_t>(i)] >= art_begin_) infeas += beta_[static_cast<size_t>(i)];
    if (infeas > kFeasTol) {
      out.status = LpStatus::kInfeasible;
      return out;
    }
    // Drive leftover artificials out of the basis where a usable pivot exists;
    // rows without one are redundant and keep a pinned artificial.
    for (int i = 0; i < m_; ++i) {
      if (basis_[static_cast<size_t>(i)] < art_begin_) continue;
      const double* pi = row(i);
      int enter = -1;
      double best = kPivotTol;
      for (int j = 0; j < art_begin_; ++j) {
        if (stat_[static_cast<size_t>(j)] == Stat::kBasic) continue;
        if (std::fabs(pi[j]) > best) {
          best = std::fabs(pi[j]);
          enter = j;
        }
      }
      if (enter >= 0) {
        const int leaving = basis_[static_cast<size_t>(i)];
        stat_[static_cast<size_t>(leaving)] = Stat::kAtLower;
        pivot(i, enter, nonbasic_value(enter));
      }
    }
    for (int a = art_begin_; a < art_begin_ + art_count; ++a) {
      ub_[static_cast<size_t>(a)] = 0.0;
      cost_[static_cast<size_t>(a)] = 0.0;
    }
  }

  // Phase 2: the real objective.
  for (int j = 0; j < n_; ++j) cost_[static_cast<size_t>(j)] = lp.obj[static_cast<size_t>(j)];
  for (int i = 0; i < m_; ++i) cost_[static_cast<size_t>(slack_begin + i)] = 0.0;
  compute_reduced_costs();
  if (!run_phase(max_iters, &out.iterations)) {
    out.status = LpStatus::kUnbounded;
    return out;
  }
  if (out.iterations >= max_iters) {
    out.status = LpStatus::kIterationLimit;
    return out;
  }

  out.x.assign(static_cast<size_t>(n_), 0.0);
  for (int j = 0; j < n_; ++j)
    if (stat_[static_cast<size_t>(j)] != Stat::kBasic) out.x[static_cast<size_t>(j)] = nonbasic_value(j);
  for (int i = 0; i < m_; ++i) {
    const int b = basis_[static_cast<size_t>(i)];
    if (b < n_) out.x[static_cast<size_t>(b)] = beta_[static_cast<size_t>(i)];
  }
  out.objective = 0.0;
  for (int j = 0; j < n_; ++j) out.objective += lp.obj[static_cast<size_t>(j)] * out.x[static_cast<size_t>(j)];
  out.status = LpStatus::kOptimal;
  return out;
}

}  // namespace transit
