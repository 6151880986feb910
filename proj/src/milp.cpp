#include "transit/milp.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>

#include "transit/errors.hpp"

namespace transit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kIntTol = 1e-6;

std::string fmt_num(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

}  // namespace

int MilpModel::add_variable(std::string name, double lb, double ub, VarKind kind,
                            int branch_priority) {
  if (lb > ub) throw ValidationError("variable '" + name + "' has lb > ub");
  vars_.push_back(MilpVariable{std::move(name), lb, ub, kind, branch_priority});
  obj_.push_back(0.0);
  return static_cast<int>(vars_.size()) - 1;
}

void MilpModel::add_constraint(std::string name, std::vector<std::pair<int, double>> terms,
                               char sense, double rhs) {
  for (const auto& [col, coef] : terms) {
    (void)coef;
    if (col < 0 || col >= num_variables())
      throw ValidationError("constraint '" + name + "' references an unregistered variable");
  }
  if (sense != 'L' && sense != 'E' && sense != 'G')
    throw ValidationError("constraint '" + name + "' has unknown sense");
  rows_.push_back(MilpRow{std::move(name), std::move(terms), sense, rhs});
}

void MilpModel::set_objective(std::vector<std::pair<int, double>> terms, bool maximize) {
  std::fill(obj_.begin(), obj_.end(), 0.0);
  for (const auto& [col, coef] : terms) {
    if (col < 0 || col >= num_variables())
      throw ValidationError("objective references an unregistered variable");
    obj_[static_cast<size_t>(col)] += coef;
  }
  maximize_ = maximize;
}

double MilpModel::objective_value(const std::vector<double>& x) const {
  double v = 0.0;
  for (size_t j = 0; j < obj_.size(); ++j) v += obj_[j] * x[j];
  return v;
}

bool MilpModel::is_feasible(const std::vector<double>& x, double tol, std::string* why) const {
  if (x.size() != vars_.size()) {
    if (why) *why = "assignment size mismatch";
    return false;
  }
  for (size_t j = 0; j < vars_.size(); ++j) {
    const MilpVariable& v = vars_[j];
    if (x[j] < v.lb - tol || x[j] > v.ub + tol) {
      if (why) *why = "variable " + v.name + " violates its bounds";
      return false;
    }
    if (v.kind == VarKind::kInteger && std::fabs(x[j] - std::round(x[j])) > tol) {
      if (why) *why = "variable " + v.name + " is fractional";
      return false;
    }
  }
  for (const MilpRow& row : rows_) {
    double a = 0.0;
    for (const auto& [col, coef] : row.terms) a += coef * x[static_cast<size_t>(col)];
    const bool ok = row.sense == 'L'   ? a <= row.rhs + tol
                    : row.sense == 'G' ? a >= row.rhs - tol
                                       : std::fabs(a - row.rhs) <= tol;
    if (!ok) {
      if (why) *why = "constraint " + row.name + " violated (activity " + fmt_num(a) + ")";
      return false;
    }
  }
  return true;
}

void MilpModel::write_lp(std::ostream& os) const {
  os << (maximize_ ? "Maximize\n" : "Minimize\n") << " obj:";
  bool first = true;
  for (size_t j = 0; j < obj_.size(); ++j) {
    if (obj_[j] == 0.0) continue;
    os << (obj_[j] >= 0.0 && !first ? " + " : " ") << (obj_[j] < 0.0 ? "- " : "")
       << fmt_num(std::fabs(obj_[j])) << ' ' << vars_[j].name;
    first = false;
  }
  if (first) os << " 0 " << vars_.front().name;
  os << "\nSubject To\n";
  for (const MilpRow& row : rows_) {
    os << ' ' << row.name << ':';
    bool f = true;
    for (const auto& [col, coef] : row.terms) {
      if (coef == 0.0) continue;
      os << (coef >= 0.0 && !f ? " + " : " ") << (coef < 0.0 ? "- " : "")
         << fmt_num(std::fabs(coef)) << ' ' << vars_[static_cast<size_t>(col)].name;
      f = false;
    }
    if (f) os << " 0 " << vars_.front().name;
    os << (row.sense == 'L' ? " <= " : row.sense == 'G' ? " >= " : " = ") << fmt_num(row.rhs)
       << '\n';
  }
  os << "Bounds\n";
  for (const MilpVariable& v : vars_) {
    if (v.kind == VarKind::kInteger && v.lb == 0.0 && v.ub == 1.0) continue;
    os << ' ';
    if (v.lb == -kInf)
      os << "-inf";
    else
      os << fmt_num(v.lb);
    os << " <= " << v.name << " <= ";
    if (v.ub == kInf)
      os << "+inf";
    else
      os << fmt_num(v.ub);
    os << '\n';
  }
  os << "Binaries\n";
  int per_line = 0;
  for (const MilpVariable& v : vars_) {
    if (v.kind != VarKind::kInteger || v.lb != 0.0 || v.ub != 1.0) continue;
    os << ' ' << v.name;
    if (++per_line == 8) {
      os << '\n';
      per_line = 0;
    }
  }
  if (per_line != 0) os << '\n';
  os << "End\n";
}

namespace {

struct Node {
  int parent = -1;
  int var = -1;       // variable whose bound this node tightens
  double lb = 0.0;    // tightened bounds for `var`
  double ub = 0.0;
  double bound = 0.0;  // parent LP value: valid upper bound (in score space)
  int depth = 0;
};

struct HeapItem {
  double bound = 0.0;
  long id = 0;
};

struct HeapCmp {
  bool operator()(const HeapItem& a, const HeapItem& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    return a.id > b.id;  // older nodes first among equal bounds
  }
};

}  // namespace

MilpResult solve_milp(const MilpModel& model, const MilpOptions& options,
                      const std::optional<std::vector<double>>& warm_start,
                      const MilpHeuristic& heuristic) {
  if (options.rel_gap < 0.0) throw ValidationError("optimality gap must be >= 0");
  if (options.time_limit_sec <= 0.0) throw ValidationError("time limit must be > 0");
  const auto t0 = std::chrono::steady_clock::now();
  const double sign = model.maximize() ? 1.0 : -1.0;  // score = sign * objective, maximized

  LinearProgram lp;
  lp.num_vars = model.num_variables();
  lp.lb.resize(static_cast<size_t>(lp.num_vars));
  lp.ub.resize(static_cast<size_t>(lp.num_vars));
  lp.obj.resize(static_cast<size_t>(lp.num_vars));
  for (int j = 0; j < lp.num_vars; ++j)
    lp.obj[static_cast<size_t>(j)] = -sign * model.objective()[static_cast<size_t>(j)];
  lp.rows.reserve(model.rows().size());
  for (const MilpRow& row : model.rows())
    lp.rows.push_back(LpConstraint{row.terms, row.sense, row.rhs});

  std::vector<int> int_vars;
  for (int j = 0; j < model.num_variables(); ++j)
    if (model.variables()[static_cast<size_t>(j)].kind == VarKind::kInteger) int_vars.push_back(j);

  MilpResult result;
  bool have_incumbent = false;
  double inc_score = -kInf;
  std::vector<double> inc_values;

  auto accept_candidate = [&](std::vector<double> cand, double tol) {
    for (int j : int_vars) cand[static_cast<size_t>(j)] = std::round(cand[static_cast<size_t>(j)]);
    std::string why;
    if (!model.is_feasible(cand, tol, &why)) return false;
    const double score = sign * model.objective_value(cand);
    if (score > inc_score + 1e-12) {
      inc_score = score;
      inc_values = std::move(cand);
      have_incumbent = true;
      return true;
    }
    return false;
  };

  if (warm_start.has_value()) {
    std::string why;
    std::vector<double> start = *warm_start;
    for (int j : int_vars) start[static_cast<size_t>(j)] = std::round(start[static_cast<size_t>(j)]);
    if (!model.is_feasible(start, 1e-6, &why))
      throw SolverError("warm start rejected as infeasible: " + why);
    inc_score = sign * model.objective_value(start);
    inc_values = std::move(start);
    have_incumbent = true;
  }

  std::vector<Node> arena;
  arena.push_back(Node{-1, -1, 0.0, 0.0, kInf, 0});
  std::priority_queue<HeapItem, std::vector<HeapItem>, HeapCmp> heap;
  heap.push(HeapItem{kInf, 0});

  SimplexSolver simplex;
  double best_open_bound = -kInf;
  double max_pruned_bound = -kInf;  // bounds of subtrees cut off by the gap rule
  bool exhausted = true;

  auto prune_cut = [&]() {
    return have_incumbent ? inc_score + std::max(1e-9, options.rel_gap * std::fabs(inc_score))
                          : -kInf;
  };

  while (!heap.empty()) {
    if (result.nodes >= options.max_nodes) {
      exhausted = false;
      best_open_bound = heap.top().bound;
      break;
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (elapsed > options.time_limit_sec) {
      result.hit_time_limit = true;
      exhausted = false;
      best_open_bound = heap.top().bound;
      break;
    }

    const HeapItem item = heap.top();
    heap.pop();
    if (have_incumbent && item.bound <= prune_cut()) {
      // Best-first order: every remaining node is at least as bad.
      exhausted = false;
      best_open_bound = item.bound;
      break;
    }
    ++result.nodes;
    if (options.verbosity > 0 && result.nodes % 1000 == 0)
      std::fprintf(stderr, "node %ld bound %.9g incumbent %.9g open %zu\n", result.nodes,
                   sign * item.bound, have_incumbent ? sign * inc_score : 0.0, heap.size());

    // Reconstruct this node's bounds from the ancestor chain.
    for (int j = 0; j < lp.num_vars; ++j) {
      lp.lb[static_cast<size_t>(j)] = model.variables()[static_cast<size_t>(j)].lb;
      lp.ub[static_cast<size_t>(j)] = model.variables()[static_cast<size_t>(j)].ub;
    }
    bool bounds_ok = true;
    for (int id = static_cast<int>(item.id); id > 0; id = arena[static_cast<size_t>(id)].parent) {
      const Node& nd = arena[static_cast<size_t>(id)];
      auto& lo = lp.lb[static_cast<size_t>(nd.var)];
      auto& hi = lp.ub[static_cast<size_t>(nd.var)];
      lo = std::max(lo, nd.lb);
      hi = std::min(hi, nd.ub);
      if (lo > hi) bounds_ok = false;
    }
    if (!bounds_ok) continue;

    LpSolution rel = simplex.solve(lp);
    result.lp_iterations += rel.iterations;
    if (rel.status == LpStatus::kInfeasible) continue;
    if (rel.status == LpStatus::kUnbounded)
      throw SolverError("LP relaxation is unbounded; the model is missing bounds");
    if (rel.status == LpStatus::kIterationLimit)
      throw SolverError("simplex iteration limit reached");

    const double node_bound = -rel.objective;
    if (have_incumbent && node_bound <= prune_cut()) {
      max_pruned_bound = std::max(max_pruned_bound, node_bound);
      continue;
    }

    int branch_var = -1;
    double branch_frac = 0.0;
    int branch_prio = std::numeric_limits<int>::min();
    for (int j : int_vars) {
      const double v = rel.x[static_cast<size_t>(j)];
      const double frac = std::fabs(v - std::round(v));
      if (frac <= kIntTol) continue;
      const int prio = model.variables()[static_cast<size_t>(j)].branch_priority;
      if (branch_var < 0 || prio > branch_prio || (prio == branch_prio && frac > branch_frac)) {
        branch_var = j;
        branch_frac = frac;
        branch_prio = prio;
      }
    }

    if (branch_var < 0) {
      // Integral relaxation: the LP solution closes this subtree.
      if (accept_candidate(rel.x, 1e-5)) continue;
      if (have_incumbent && node_bound <= inc_score + 1e-9) {
        max_pruned_bound = std::max(max_pruned_bound, node_bound);
        continue;
      }
      // Rounding noise got the candidate rejected; branch to force exact
      // integrality instead of silently discarding the subtree.
      for (int j : int_vars) {
        if (lp.lb[static_cast<size_t>(j)] >= lp.ub[static_cast<size_t>(j)]) continue;
        const double frac = std::fabs(rel.x[static_cast<size_t>(j)] -
                                      std::round(rel.x[static_cast<size_t>(j)]));
        if (branch_var < 0 || frac > branch_frac) {
          branch_var = j;
          branch_frac = frac;
        }
      }
      if (branch_var < 0)
        throw SolverError("integral relaxation solution failed feasibility verification");
    }

    if (heuristic) {
      if (auto cand = heuristic(rel.x)) accept_candidate(std::move(*cand), 1e-6);
      if (have_incumbent && node_bound <= prune_cut()) {
        max_pruned_bound = std::max(max_pruned_bound, node_bound);
        continue;
      }
    }

    const int depth = arena[static_cast<size_t>(item.id)].depth + 1;
    auto push_child = [&](double lo, double hi) {
      const int id = static_cast<int>(arena.size());
      arena.push_back(Node{static_cast<int>(item.id), branch_var, lo, hi, node_bound, depth});
      heap.push(HeapItem{node_bound, id});
    };
    const double v = rel.x[static_cast<size_t>(branch_var)];
    if (std::fabs(v - std::round(v)) > kIntTol) {
      const double fl = std::floor(v);
      push_child(-kInf, fl);
      push_child(fl + 1.0, kInf);
    } else {
      // Forcing a numerically-integral variable to exactness: pin the rounded
      // value in one child and exclude it on either side in the others.
      const double r = std::round(v);
      push_child(r, r);
      push_child(-kInf, r - 1.0);
      push_child(r + 1.0, kInf);
    }
  }

  if (!have_incumbent) {
    if (result.hit_time_limit) throw SolverError("time limit exceeded with no incumbent");
    if (result.nodes >= options.max_nodes) throw SolverError("node limit exceeded with no incumbent");
    throw SolverError("model is infeasible");
  }

  double final_bound = std::max(inc_score, max_pruned_bound);
  if (!exhausted) final_bound = std::max(final_bound, best_open_bound);
  result.values = inc_values;
  result.objective = sign * inc_score;
  result.best_bound = sign * final_bound;
  const double abs_gap = std::max(0.0, final_bound - inc_score);
  result.rel_gap = abs_gap <= 1e-9 ? 0.0 : abs_gap / std::max(1e-9, std::fabs(inc_score));
  result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace transit
