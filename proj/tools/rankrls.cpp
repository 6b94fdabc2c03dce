// rankrls: solve, gen, bench and stability subcommands.
//
// Exit codes: 0 success, 2 bad input (parse, dimensions, configuration),
// 1 anything else.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "rankrls/bench.hpp"
#include "rankrls/pinv.hpp"
#include "rankrls/solver.hpp"
#include "rankrls/stability.hpp"
#include "rankrls/testmat.hpp"
#include "rankrls/textio.hpp"

namespace {

using namespace rankrls;

struct Global {
  std::string scalar = "f64";
  std::optional<std::string> variant;
  std::optional<std::string> eps;
  std::uint64_t seed = 0;
  std::string csv;
  std::string out;
  double rcond = -1.0;
  bool parallel = false;
};

ScalarKind scalar_kind(const std::string& s) {
  if (s == "f64") return ScalarKind::float64;
  if (s == "rational") return ScalarKind::rational;
  throw ConfigError("unknown scalar kind '" + s + "' (expected f64 or rational)");
}

// Writes to `path`, or stdout when it is empty.
template <class F>
void with_output(const std::string& path, F&& write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  write(out);
}

struct SolveArgs {
  std::string matrix;
  std::string rhs;
  std::string pinv;
  std::string cov;
};

template <class T>
int run_solve(const Global& g, const SolveArgs& args) {
  const Matrix<T> a = read_matrix_file<T>(args.matrix);
  const Vector<T> y = read_vector_file<T>(args.rhs);
  if (y.size() != a.rows()) {
    throw DimensionError("rhs has " + std::to_string(y.size()) + " entries but the matrix has " +
                         std::to_string(a.rows()) + " rows");
  }
  if (a.cols() == 0) throw DimensionError("matrix has no columns");
  SolverOptions options = default_options<T>();
  if (g.variant) options.variant = parse_variant(*g.variant);
  if (g.eps) options.eps = EpsPolicy::parse(*g.eps);

  Solver<T> solver(a.cols(), options);
  if (!args.pinv.empty()) solver.track_pseudoinverse();
  if (!args.cov.empty()) solver.track_covariance();
  for (std::size_t i = 0; i < a.rows(); ++i) solver.update(a.row(i), y[i]);

  with_output(g.out, [&](std::ostream& out) { write_vector<T>(out, solver.solution()); });
  if (!args.pinv.empty()) write_matrix_file(args.pinv, solver.pseudoinverse()->pinv());
  if (!args.cov.empty()) write_matrix_file(args.cov, solver.covariance()->covariance());
  std::cerr << "rank " << solver.rank() << '\n';
  return 0;
}

struct GenArgs {
  std::string family;
  std::size_t n = 0;
  std::optional<std::size_t> m;
  std::optional<std::size_t> r;
  double c = 0.2;
  unsigned power = 4;
};

int run_gen(const Global& g, const GenArgs& args) {
  MatrixSpec spec;
  spec.family = parse_family(args.family);
  spec.n = args.n;
  spec.m = args.m.value_or(args.n);
  spec.r = args.r.value_or(std::min(spec.n, spec.m));
  spec.c = args.c;
  spec.seed = g.seed;
  spec.power = args.power;
  if (spec.n == 0) throw ConfigError("--n must be positive");
  if (spec.family == Family::pascal && scalar_kind(g.scalar) == ScalarKind::rational) {
    const auto p = pascal<Rational>(spec.n);
    with_output(g.out, [&](std::ostream& out) { write_matrix(out, p); });
    return 0;
  }
  const Matrix<double> a = generate(spec);
  with_output(g.out, [&](std::ostream& out) { write_matrix(out, a); });
  return 0;
}

struct BenchArgs {
  std::string experiment;
  std::vector<std::size_t> sizes;
  std::optional<std::size_t> fixed;
  std::size_t reps = 5;
  std::size_t updates = 64;
};

int run_bench_cmd(const Global& g, const BenchArgs& args) {
  const Experiment e = parse_experiment(args.experiment);
  BenchPlan plan = default_plan(e);
  if (!args.sizes.empty() || args.fixed) {
    std::vector<std::size_t> sweep = args.sizes;
    if (sweep.empty()) {
      for (const auto& cell : plan.grid) sweep.push_back(swept_value(e, cell));
    }
    std::size_t fixed = 0;
    if (args.fixed) {
      fixed = *args.fixed;
    } else if (e == Experiment::rect_fixed_n) {
      fixed = plan.grid.front().n;
    } else if (e == Experiment::rank_fixed_r) {
      fixed = plan.grid.front().r;
    } else if (e == Experiment::update_cost) {
      fixed = plan.grid.front().m;
    }
    plan.grid = make_grid(e, sweep, fixed);
  }
  plan.repetitions = args.reps;
  plan.updates_per_rep = args.updates;
  plan.seed = g.seed;
  plan.scalar = scalar_kind(g.scalar);
  if (g.variant) plan.variant = parse_variant(*g.variant);
  if (g.eps) throw ConfigError("bench uses the default threshold; --eps is not accepted");
  validate_plan(plan);

  const BenchOutcome outcome = run_bench(plan);
  for (const auto& w : outcome.warnings) std::cerr << "warning: " << w << '\n';
  if (!g.csv.empty()) {
    with_output(g.csv, [&](std::ostream& out) {
      write_bench_csv_header(out);
      write_bench_csv(out, outcome);
    });
  }
  with_output(g.out, [&](std::ostream& out) {
    out << "experiment " << experiment_name(e) << '\n';
    for (std::size_t i = 0; i < outcome.swept.size(); ++i) {
      out << "  size " << outcome.swept[i] << "  median " << format_csv_double(outcome.medians[i]) << " s\n";
    }
    out << "fit over last " << outcome.fit_points << " points: exponent " << outcome.fit.exponent
        << ", prefactor " << outcome.fit.prefactor << ", r^2 " << outcome.fit.r_squared << '\n';
  });
  return 0;
}

struct StabilityArgs {
  std::string family;
  std::vector<std::size_t> sizes;
  std::vector<double> c_values;
  unsigned power = 4;
};

int run_stability_cmd(const Global& g, const StabilityArgs& args) {
  StabilityPlan plan = default_stability_plan(parse_family(args.family));
  if (!args.sizes.empty()) plan.sizes = args.sizes;
  if (!args.c_values.empty()) plan.c_values = args.c_values;
  if (g.variant) plan.variants = {parse_variant(*g.variant)};
  plan.scalar = scalar_kind(g.scalar);
  if (plan.scalar == ScalarKind::rational && !g.variant) {
    plan.variants = {Variant::general, Variant::orthogonal};
  }
  if (g.eps) plan.eps = *g.eps;
  plan.rcond = g.rcond;
  plan.seed = g.seed;
  plan.power = args.power;
  plan.parallel = g.parallel;

  const auto rows = run_stability(plan);
  const std::string& path = g.csv.empty() ? g.out : g.csv;
  with_output(path, [&](std::ostream& out) {
    write_stability_csv_header(out);
    write_stability_csv(out, rows);
  });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recursive minimum-norm least squares over a maintained rank factorization"};
  app.require_subcommand(1);
  app.fallthrough();

  Global g;
  app.add_option("--scalar", g.scalar, "Scalar kind")->check(CLI::IsMember({"f64", "rational"}));
  app.add_option("--variant", g.variant, "Basis variant")
      ->check(CLI::IsMember({"general", "orthogonal", "orthonormal"}));
  app.add_option("--eps", g.eps, "Dependency threshold: a number, auto or exact");
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--csv", g.csv, "CSV output path");
  app.add_option("--out", g.out, "Output path (default stdout)");
  app.add_option("--rcond", g.rcond, "SVD truncation for reference pseudoinverses");
  app.add_flag("--parallel", g.parallel, "Run independent stability rows on threads");

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Solve A x = y in the minimum-norm least-squares sense");
  solve->add_option("matrix", solve_args.matrix, "Matrix file")->required();
  solve->add_option("rhs", solve_args.rhs, "Right-hand side file (n x 1 or 1 x n)")->required();
  solve->add_option("--pinv", solve_args.pinv, "Write A+ to this path");
  solve->add_option("--cov", solve_args.cov, "Write (A^T A)+ to this path");

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Generate a test matrix");
  gen->add_option("family", gen_args.family, "pascal | kahan | random | usv | ill")->required();
  gen->add_option("--n", gen_args.n, "Rows (order for square families)")->required();
  gen->add_option("--m", gen_args.m, "Columns (random family)");
  gen->add_option("--r", gen_args.r, "Rank (random family)");
  gen->add_option("--c", gen_args.c, "Kahan parameter in (0, 1)");
  gen->add_option("--power", gen_args.power, "Exponent for the ill family");

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Time solve-from-scratch or per-update cost and fit an exponent");
  bench->add_option("experiment", bench_args.experiment, "square | rect-fixed-n | rank-fixed-r | update-cost")
      ->required();
  bench->add_option("--sizes", bench_args.sizes, "Values of the swept parameter")->delimiter(',');
  bench->add_option("--fixed", bench_args.fixed, "Value of the fixed parameter");
  bench->add_option("--reps", bench_args.reps, "Timed repetitions per cell");
  bench->add_option("--updates", bench_args.updates, "Dependent updates per repetition (update-cost)");

  StabilityArgs stab_args;
  auto* stability = app.add_subcommand("stability", "Stability table for a matrix family");
  stability->add_option("family", stab_args.family, "pascal | kahan | random | usv | ill")->required();
  stability->add_option("--sizes", stab_args.sizes, "Matrix orders")->delimiter(',');
  stability->add_option("--c", stab_args.c_values, "Kahan parameters")->delimiter(',');
  stability->add_option("--power", stab_args.power, "Exponent for the ill family");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*solve) {
      return scalar_kind(g.scalar) == ScalarKind::rational ? run_solve<Rational>(g, solve_args)
                                                           : run_solve<double>(g, solve_args);
    }
    if (*gen) return run_gen(g, gen_args);
    if (*bench) return run_bench_cmd(g, bench_args);
    if (*stability) return run_stability_cmd(g, stab_args);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
