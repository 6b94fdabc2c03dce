#include "rankrls/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>

#include "rankrls/solver.hpp"
#include "rankrls/testmat.hpp"
#include "rankrls/textio.hpp"

namespace rankrls {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

volatile double g_sink = 0.0;

template <class T>
double time_solve(const Matrix<double>& a, const Vector<double>& y, const SolverOptions& options) {
  if constexpr (std::is_same_v<T, double>) {
    const auto start = Clock::now();
    const auto result = solve_batch<double>(a, y, options);
    const double elapsed = seconds_since(start);
    g_sink = g_sink + result.x.front();
    return elapsed;
  } else {
    const auto ar = convert<Rational>(a, [](double v) { return Rational::from_double(v); });
    Vector<Rational> yr;
    for (double v : y) yr.push_back(Rational::from_double(v));
    const auto start = Clock::now();
    const auto result = solve_batch<Rational>(ar, yr, options);
    const double elapsed = seconds_since(start);
    g_sink = g_sink + result.x.front().to_double();
    return elapsed;
  }
}

std::vector<double> time_solve_cell(const BenchPlan& plan, const BenchCell& cell) {
  const Matrix<double> a = random_standardized(cell.n, cell.m, cell.r, plan.seed);
  const Matrix<double> ycol = random_standardized(cell.n, 1, 1, splitmix64(plan.seed));
  const Vector<double> y(ycol.data().begin(), ycol.data().end());
  std::vector<double> out;
  if (plan.scalar == ScalarKind::float64) {
    SolverOptions options = default_options<double>();
    options.variant = plan.variant;
    time_solve<double>(a, y, options);
    for (std::size_t rep = 0; rep < plan.repetitions; ++rep) out.push_back(time_solve<double>(a, y, options));
  } else {
    SolverOptions options = default_options<Rational>();
    options.variant = plan.variant;
    time_solve<Rational>(a, y, options);
    for (std::size_t rep = 0; rep < plan.repetitions; ++rep) out.push_back(time_solve<Rational>(a, y, options));
  }
  return out;
}

// Ingest a rank-r prefix, then time dependent-branch updates only.
std::vector<double> time_update_cell(const BenchPlan& plan, const BenchCell& cell,
                                     std::vector<std::string>& warnings) {
  if (plan.scalar != ScalarKind::float64) throw ConfigError("update-cost timing supports f64 scalars only");
  Rng rng(plan.seed, 2);
  const Matrix<double> basis_rows = gaussian(cell.r, cell.m, rng);
  SolverOptions options = default_options<double>();
  options.variant = plan.variant;
  Solver<double> solver(cell.m, options);
  for (std::size_t i = 0; i < cell.r; ++i) solver.update(basis_rows.row(i), rng.normal());

  const std::size_t batches = plan.repetitions + 1;
  const std::size_t total = batches * plan.updates_per_rep;
  Matrix<double> pool(total, cell.m);
  Vector<double> targets(total);
  for (std::size_t k = 0; k < total; ++k) {
    for (std::size_t i = 0; i < cell.r; ++i) axpy<double>(rng.normal(), basis_rows.row(i), pool.row(k));
    targets[k] = rng.normal();
  }

  std::vector<double> out;
  std::size_t independent = 0;
  for (std::size_t b = 0; b < batches; ++b) {
    const auto start = Clock::now();
    for (std::size_t k = b * plan.updates_per_rep; k < (b + 1) * plan.updates_per_rep; ++k) {
      const auto report = solver.update(pool.row(k), targets[k]);
      if (report.branch != Branch::dependent) ++independent;
    }
    const double per_update = seconds_since(start) / static_cast<double>(plan.updates_per_rep);
    if (b > 0) out.push_back(per_update);  // first batch is the warmup
  }
  if (independent) {
    warnings.push_back("update-cost r=" + std::to_string(cell.r) + ": " + std::to_string(independent) +
                       " timed updates were classified independent");
  }
  return out;
}

}  // namespace

Experiment parse_experiment(std::string_view text) {
  if (text == "square") return Experiment::square;
  if (text == "rect-fixed-n") return Experiment::rect_fixed_n;
  if (text == "rank-fixed-r") return Experiment::rank_fixed_r;
  if (text == "update-cost") return Experiment::update_cost;
  throw ConfigError("unknown experiment '" + std::string(text) + "'");
}

const char* experiment_name(Experiment e) {
  switch (e) {
    case Experiment::square: return "square";
    case Experiment::rect_fixed_n: return "rect-fixed-n";
    case Experiment::rank_fixed_r: return "rank-fixed-r";
    case Experiment::update_cost: return "update-cost";
  }
  return "?";
}

std::vector<BenchCell> make_grid(Experiment e, std::span<const std::size_t> sweep, std::size_t fixed) {
  std::vector<BenchCell> grid;
  for (std::size_t s : sweep) {
    switch (e) {
      case Experiment::square: grid.push_back({s, s, s}); break;
      case Experiment::rect_fixed_n: grid.push_back({fixed, s, fixed}); break;
      case Experiment::rank_fixed_r: grid.push_back({s, s, fixed}); break;
      case Experiment::update_cost: grid.push_back({0, fixed, s}); break;
    }
  }
  return grid;
}

BenchPlan default_plan(Experiment e) {
  BenchPlan plan;
  plan.experiment = e;
  switch (e) {
    case Experiment::square: {
      const std::size_t sweep[] = {64, 128, 256, 512};
      plan.grid = make_grid(e, sweep, 0);
      break;
    }
    case Experiment::rect_fixed_n: {
      const std::size_t sweep[] = {1000, 2000, 4000, 8000};
      plan.grid = make_grid(e, sweep, 100);
      break;
    }
    case Experiment::rank_fixed_r: {
      const std::size_t sweep[] = {256, 512, 1024, 2048};
      plan.grid = make_grid(e, sweep, 20);
      break;
    }
    case Experiment::update_cost: {
      const std::size_t sweep[] = {50, 100, 200, 400};
      plan.grid = make_grid(e, sweep, 2000);
      break;
    }
  }
  return plan;
}

std::size_t swept_value(Experiment e, const BenchCell& cell) {
  switch (e) {
    case Experiment::square: return cell.n;
    case Experiment::rect_fixed_n: return cell.m;
    case Experiment::rank_fixed_r: return cell.n;
    case Experiment::update_cost: return cell.r;
  }
  return 0;
}

void validate_plan(const BenchPlan& plan) {
  if (plan.repetitions < 3) throw ConfigError("benchmarks need at least 3 repetitions");
  if (plan.grid.size() < 2) throw ConfigError("benchmarks need at least 2 grid points");
  for (std::size_t i = 1; i < plan.grid.size(); ++i) {
    if (swept_value(plan.experiment, plan.grid[i]) <= swept_value(plan.experiment, plan.grid[i - 1])) {
      throw ConfigError("benchmark grid must strictly increase along the swept parameter");
    }
  }
  for (const auto& c : plan.grid) {
    if (c.m == 0 || c.r == 0 || (plan.experiment != Experiment::update_cost && c.n == 0)) {
      throw ConfigError("benchmark sizes must be positive");
    }
    if (c.r > c.m || (plan.experiment != Experiment::update_cost && c.r > c.n)) {
      throw ConfigError("benchmark rank exceeds the matrix dimensions");
    }
  }
  if (plan.experiment == Experiment::update_cost && plan.updates_per_rep == 0) {
    throw ConfigError("updates per repetition must be positive");
  }
}

FitResult fit_power_law(std::span<const double> sizes, std::span<const double> times) {
  if (sizes.size() != times.size() || sizes.size() < 2) throw ConfigError("power-law fit needs >= 2 paired points");
  const double k = static_cast<double>(sizes.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (!(sizes[i] > 0) || !(times[i] > 0)) throw ConfigError("power-law fit needs positive data");
    sx += std::log(sizes[i]);
    sy += std::log(times[i]);
  }
  const double mx = sx / k;
  const double my = sy / k;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const double dx = std::log(sizes[i]) - mx;
    const double dy = std::log(times[i]) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0) throw ConfigError("power-law fit needs distinct sizes");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double r2 = 1.0;
  if (syy > 0) {
    double sse = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      const double e = std::log(times[i]) - (intercept + slope * std::log(sizes[i]));
      sse += e * e;
    }
    r2 = std::clamp(1.0 - sse / syy, 0.0, 1.0);
  }
  return {slope, std::exp(intercept), r2};
}

double median(std::vector<double> values) {
  if (values.empty()) throw ConfigError("median of an empty sample");
  std::sort(values.begin(), values.end());
  const std::size_t h = values.size() / 2;
  return values.size() % 2 ? values[h] : 0.5 * (values[h - 1] + values[h]);
}

BenchOutcome run_bench(const BenchPlan& plan) {
  validate_plan(plan);
  BenchOutcome out{plan.experiment, {}, {}, {}, {}, 0, {}};
  for (const auto& cell : plan.grid) {
    const auto times = plan.experiment == Experiment::update_cost ? time_update_cell(plan, cell, out.warnings)
                                                                   : time_solve_cell(plan, cell);
    for (std::size_t rep = 0; rep < times.size(); ++rep) out.samples.push_back({cell, rep, times[rep]});
    const double med = median(times);
    if (med < 1e-3) {
      out.warnings.push_back(std::string(experiment_name(plan.experiment)) + " cell n=" + std::to_string(cell.n) +
                             " m=" + std::to_string(cell.m) + " r=" + std::to_string(cell.r) +
                             ": median below 1 ms, timer resolution may dominate");
    }
    out.swept.push_back(static_cast<double>(swept_value(plan.experiment, cell)));
    out.medians.push_back(med);
  }
  const std::size_t k = out.swept.size();
  out.fit_points = std::max((k + 1) / 2, std::min<std::size_t>(k, 3));
  const std::size_t first = k - out.fit_points;
  out.fit = fit_power_law(std::span(out.swept).subspan(first), std::span(out.medians).subspan(first));
  return out;
}

void write_bench_csv_header(std::ostream& out) { out << "experiment,n,m,r,rep,seconds\n"; }

void write_bench_csv(std::ostream& out, const BenchOutcome& outcome) {
  for (const auto& s : outcome.samples) {
    out << experiment_name(outcome.experiment) << ',' << s.cell.n << ',' << s.cell.m << ',' << s.cell.r << ','
        << s.rep << ',' << format_csv_double(s.seconds) << '\n';
  }
}

}  // namespace rankrls
