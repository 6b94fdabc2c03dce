#include <doctest.h>

#include <cmath>
#include <sstream>

#include "rankrls/bench.hpp"
#include "rankrls/solver.hpp"

using namespace rankrls;

TEST_CASE("power-law fit is exact on synthetic data") {
  const std::vector<double> sizes{1, 2, 4}, times{1, 4, 16};
  const FitResult f = fit_power_law(sizes, times);
  CHECK(f.exponent == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(f.prefactor == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(f.r_squared == doctest::Approx(1.0));

  const std::vector<double> s2{10, 20, 40, 80}, t2{3e-3, 3e-3 * 8, 3e-3 * 64, 3e-3 * 512};
  CHECK(fit_power_law(s2, t2).exponent == doctest::Approx(3.0));
  const std::vector<double> noisy{1.0, 2.3, 3.7, 8.1};
  const FitResult fn = fit_power_law(s2, noisy);
  CHECK(fn.r_squared >= 0.0);
  CHECK(fn.r_squared <= 1.0);
  CHECK_THROWS_AS(fit_power_law(std::vector<double>{1}, std::vector<double>{1}), ConfigError);
  CHECK_THROWS_AS(fit_power_law(std::vector<double>{1, 2}, std::vector<double>{1, 0}), ConfigError);
}

TEST_CASE("median") {
  CHECK(median({3, 1, 2}) == 2);
  CHECK(median({4, 1, 2, 3}) == 2.5);
  CHECK_THROWS_AS(median({}), ConfigError);
}

TEST_CASE("plan validation") {
  BenchPlan p = default_plan(Experiment::rank_fixed_r);
  CHECK(p.grid.size() == 4);
  CHECK(p.grid.front().r == 20);
  CHECK(p.grid.back().n == 2048);
  CHECK_NOTHROW(validate_plan(p));
  p.repetitions = 2;
  CHECK_THROWS_AS(validate_plan(p), ConfigError);
  p.repetitions = 3;
  std::swap(p.grid[0], p.grid[1]);
  CHECK_THROWS_AS(validate_plan(p), ConfigError);
  const std::size_t bad[] = {8, 16};
  BenchPlan q;
  q.experiment = Experiment::rank_fixed_r;
  q.grid = make_grid(Experiment::rank_fixed_r, bad, 10);
  CHECK_THROWS_AS(validate_plan(q), ConfigError);
  CHECK(parse_experiment("update-cost") == Experiment::update_cost);
  CHECK_THROWS_AS(parse_experiment("cubic"), ConfigError);
}

TEST_CASE("tiny bench run produces samples, warnings and csv") {
  BenchPlan p;
  p.experiment = Experiment::square;
  const std::size_t sweep[] = {4, 8, 16};
  p.grid = make_grid(Experiment::square, sweep, 0);
  p.repetitions = 3;
  const BenchOutcome o = run_bench(p);
  CHECK(o.samples.size() == 9);
  CHECK(o.medians.size() == 3);
  CHECK(o.fit_points == 3);
  CHECK_FALSE(o.warnings.empty());
  std::stringstream csv;
  write_bench_csv_header(csv);
  write_bench_csv(csv, o);
  std::string line;
  std::getline(csv, line);
  CHECK(line == "experiment,n,m,r,rep,seconds");
  std::getline(csv, line);
  CHECK(line.rfind("square,4,4,4,0,", 0) == 0);

  BenchPlan u;
  u.experiment = Experiment::update_cost;
  const std::size_t ranks[] = {2, 4, 8};
  u.grid = make_grid(Experiment::update_cost, ranks, 30);
  u.repetitions = 3;
  u.updates_per_rep = 4;
  const BenchOutcome uo = run_bench(u);
  CHECK(uo.samples.size() == 9);
  for (const auto& w : uo.warnings) CHECK(w.find("independent") == std::string::npos);

  u.scalar = ScalarKind::rational;
  CHECK_THROWS_AS(run_bench(u), ConfigError);
}
