#include "transit/sweep.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "transit/errors.hpp"

namespace transit {

namespace {

constexpr double kServedTol = 1e-6;

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // byte-stable line endings everywhere
  if (!out) throw ValidationError("cannot write " + path);
  return out;
}

double parse_field(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ValidationError("bad numeric field '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, sep)) out.push_back(field);
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw ValidationError("double formatting failed");
  return std::string(buf, end);
}

GroupMetrics group_metrics(const NetworkDesign& design, const PriorityProfile& groups,
                           const DemandProfile& demand) {
  const int k = groups.group_count();
  std::vector<double> util_sum(static_cast<size_t>(k), 0.0);
  std::vector<long> pair_count(static_cast<size_t>(k), 0);
  std::vector<double> served_demand(static_cast<size_t>(k), 0.0);
  std::vector<double> total_demand(static_cast<size_t>(k), 0.0);

  for (size_t i = 0; i < design.utilities.pairs.size(); ++i) {
    const OdPair& od = design.utilities.pairs[i];
    const size_t g = static_cast<size_t>(groups.group(od)) - 1;
    const double u = design.utilities.values[i];
    util_sum[g] += u;
    ++pair_count[g];
    const double b = static_cast<double>(demand.count(od));
    total_demand[g] += b;
    if (u > kServedTol) served_demand[g] += b;
  }

  GroupMetrics m;
  for (int g = 0; g < k; ++g) {
    m.avg_utility.push_back(pair_count[static_cast<size_t>(g)] > 0
                                ? util_sum[static_cast<size_t>(g)] /
                                      static_cast<double>(pair_count[static_cast<size_t>(g)])
                                : 0.0);
    m.pct_served.push_back(total_demand[static_cast<size_t>(g)] > 0.0
                               ? 100.0 * served_demand[static_cast<size_t>(g)] /
                                     total_demand[static_cast<size_t>(g)]
                               : 100.0);
  }
  return m;
}

SweepResult run_sweep(const DesignProblem& problem, const WelfareSpec& spec,
                      const std::vector<double>& fractions, const SolverConfig& config,
                      std::optional<double> b_max) {
  for (size_t i = 0; i < fractions.size(); ++i) {
    if (fractions[i] <= 0.0 || fractions[i] > 1.0)
      throw ValidationError("budget fractions must lie in (0,1]");
    if (i > 0 && fractions[i] <= fractions[i - 1])
      throw ValidationError("budget fractions must be strictly increasing");
  }

  SweepResult result;
  result.group_count = problem.priority().group_count();
  result.b_max = b_max.has_value() ? *b_max : min_cost_full_service(problem, config);

  std::optional<NetworkDesign> warm;
  for (double fraction : fractions) {
    const DesignProblem at_budget = problem.with_budget(fraction * result.b_max);
    WelfareSpec row_spec = spec;
    if (row_spec.has_floor_term() && row_spec.active_pairs.empty())
      row_spec.active_pairs = at_budget.pairs();
    NetworkDesign design;
    try {
      const DesignModel model = build_model(at_budget, row_spec);
      design = solve_design(model, config, warm);
    } catch (const SolverError& e) {
      result.aborted = true;
      result.abort_reason = e.what();
      return result;
    }

    SweepRow row;
    row.budget_fraction = fraction;
    row.budget = at_budget.budget();
    row.objective = design.objective;
    row.gap = design.gap;
    row.metrics = group_metrics(design, problem.priority(), problem.demand());
    row.wall_seconds = design.wall_seconds;
    result.rows.push_back(std::move(row));
    warm = std::move(design);
  }
  return result;
}

void emit_sweep_csv(const SweepResult& result, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "budget_fraction,budget,objective,gap";
  for (int g = 1; g <= result.group_count; ++g) out << ",avg_u_g" << g;
  for (int g = 1; g <= result.group_count; ++g) out << ",pct_served_g" << g;
  out << "\n";
  for (const SweepRow& row : result.rows) {
    out << format_double(row.budget_fraction) << ',' << format_double(row.budget) << ','
        << format_double(row.objective) << ',' << format_double(row.gap);
    for (double v : row.metrics.avg_utility) out << ',' << format_double(v);
    for (double v : row.metrics.pct_served) out << ',' << format_double(v);
    out << "\n";
  }
}

SweepResult parse_sweep_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw ValidationError(path + ": missing header");
  const auto header = split(line, ',');
  if (header.size() < 4 || (header.size() - 4) % 2 != 0)
    throw ValidationError(path + ": malformed sweep header");

  SweepResult result;
  result.group_count = static_cast<int>((header.size() - 4) / 2);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != header.size()) throw ValidationError(path + ": ragged row");
    SweepRow row;
    row.budget_fraction = parse_field(f[0]);
    row.budget = parse_field(f[1]);
    row.objective = parse_field(f[2]);
    row.gap = parse_field(f[3]);
    for (int g = 0; g < result.group_count; ++g)
      row.metrics.avg_utility.push_back(parse_field(f[static_cast<size_t>(4 + g)]));
    for (int g = 0; g < result.group_count; ++g)
      row.metrics.pct_served.push_back(
          parse_field(f[static_cast<size_t>(4 + result.group_count + g)]));
    result.rows.push_back(std::move(row));
  }
  return result;
}

void emit_diff_csv(const SweepResult& aware, const SweepResult& baseline,
                   const std::string& path) {
  if (aware.rows.size() != baseline.rows.size() || aware.group_count != baseline.group_count)
    throw ValidationError("difference series needs sweeps over the same grid and groups");
  std::ofstream out = open_out(path);
  out << "budget_fraction,budget";
  for (int g = 1; g <= aware.group_count; ++g) out << ",diff_avg_u_g" << g;
  out << "\n";
  for (size_t i = 0; i < aware.rows.size(); ++i) {
    out << format_double(aware.rows[i].budget_fraction) << ','
        << format_double(aware.rows[i].budget);
    for (int g = 0; g < aware.group_count; ++g)
      out << ',' << format_double(aware.rows[i].metrics.avg_utility[static_cast<size_t>(g)] -
                                  baseline.rows[i].metrics.avg_utility[static_cast<size_t>(g)]);
    out << "\n";
  }
}

void emit_leximax_csv(const LeximaxTrace& trace, const std::vector<std::string>& node_labels,
                      const std::string& path) {
  std::ofstream out = open_out(path);
  out << "iteration,removed_pair,floor,objective,avg_u_remaining,avg_u_all\n";
  for (const LeximaxIteration& it : trace.iterations) {
    out << it.iteration << ','
        << node_labels[static_cast<size_t>(it.removed.origin)] << "->"
        << node_labels[static_cast<size_t>(it.removed.dest)] << ','
        << format_double(it.floor_value) << ',' << format_double(it.objective) << ','
        << format_double(it.avg_utility_remaining) << ',' << format_double(it.avg_utility_all)
        << "\n";
  }
}

void write_manifest(const std::string& path,
                    const std::vector<std::pair<std::string, std::string>>& entries) {
  std::ofstream out = open_out(path);
  for (const auto& [key, value] : entries) out << key << " = " << value << "\n";
}

}  // namespace transit
