#pragma once

// Timing harness for the scaling experiments and the power-law fitter.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rankrls/scalar.hpp"
#include "rankrls/update_step.hpp"

namespace rankrls {

enum class Experiment {
  square,        // r = n = m, sweep n
  rect_fixed_n,  // r = n fixed, sweep m
  rank_fixed_r,  // r fixed, n = m swept
  update_cost,   // m fixed, time dependent updates, sweep r
};

Experiment parse_experiment(std::string_view text);
const char* experiment_name(Experiment e);

struct BenchCell {
  std::size_t n;
  std::size_t m;
  std::size_t r;
};

struct BenchPlan {
  Experiment experiment = Experiment::square;
  std::vector<BenchCell> grid;
  std::size_t repetitions = 5;
  Variant variant = Variant::general;
  ScalarKind scalar = ScalarKind::float64;
  std::uint64_t seed = 0;
  // update_cost only: dependent updates timed per repetition.
  std::size_t updates_per_rep = 64;
};

// Grids used when none is given: the desk-scale sizes of the scaling checks.
BenchPlan default_plan(Experiment e);
// Builds a grid along the experiment's swept axis with the others fixed.
std::vector<BenchCell> make_grid(Experiment e, std::span<const std::size_t> sweep, std::size_t fixed);

// Throws ConfigError unless the grid strictly increases along the swept axis
// and repetitions >= 3.
void validate_plan(const BenchPlan& plan);
std::size_t swept_value(Experiment e, const BenchCell& cell);

struct FitResult {
  double exponent;
  double prefactor;
  double r_squared;
};

// Least squares on (log size, log time): time ~ prefactor * size^exponent.
FitResult fit_power_law(std::span<const double> sizes, std::span<const double> times);

struct BenchSample {
  BenchCell cell;
  std::size_t rep;
  double seconds;
};

struct BenchOutcome {
  Experiment experiment;
  std::vector<BenchSample> samples;
  std::vector<double> swept;
  std::vector<double> medians;
  FitResult fit;
  std::size_t fit_points;
  std::vector<std::string> warnings;
};

// Runs every cell sequentially: one discarded warmup, then `repetitions`
// timed runs. The fit uses the largest half of the grid (at least three
// points when the grid has them).
BenchOutcome run_bench(const BenchPlan& plan);

double median(std::vector<double> values);

// CSV columns: experiment,n,m,r,rep,seconds
void write_bench_csv_header(std::ostream& out);
void write_bench_csv(std::ostream& out, const BenchOutcome& outcome);

}  // namespace rankrls
