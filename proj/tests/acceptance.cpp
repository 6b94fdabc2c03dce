// Acceptance suite: one PASS/FAIL line per criterion.
//
// Usage: acceptance [criterion numbers...]   (default: all)
// Exit status is nonzero when any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rankrls/bench.hpp"
#include "rankrls/metrics.hpp"
#include "rankrls/pinv.hpp"
#include "rankrls/solver.hpp"
#include "rankrls/testmat.hpp"

using namespace rankrls;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

Vector<double> column(const Matrix<double>& a) { return Vector<double>(a.data().begin(), a.data().end()); }

SolverOptions variant_options(Variant v) {
  SolverOptions o;
  o.variant = v;
  return o;
}

// 1. float solve_batch vs SVD oracle, rational general vs exact elimination.
Outcome oracle_equivalence() {
  std::mt19937_64 g(20240601);
  double worst = 0.0;
  std::size_t exact_fail = 0, rank_fail = 0;
  std::set<std::size_t> ranks;
  for (int i = 0; i < 200; ++i) {
    const std::size_t r = std::size_t(i) % 41;
    const std::size_t lo = std::max<std::size_t>(r, 1);
    std::uniform_int_distribution<std::size_t> dim(lo, 40);
    const std::size_t n = dim(g), m = dim(g);
    ranks.insert(r);

    const Matrix<double> a = r == 0 ? Matrix<double>(n, m) : random_standardized(n, m, r, g());
    const Vector<double> y = column(random_standardized(n, 1, 1, g()));
    const Vector<double> ref = oracle_min_norm_lstsq(a, y, 1e-10);
    for (Variant v : {Variant::general, Variant::orthogonal, Variant::orthonormal}) {
      const auto got = solve_batch<double>(a, y, variant_options(v));
      if (got.rank != r) ++rank_fail;
      worst = std::max(worst, r == 0 ? max_abs(got.x) : oracle::rel_err(got.x, ref));
    }

    const Matrix<Rational> aq = r == 0 ? Matrix<Rational>(n, m) : oracle::integer_rank_matrix(n, m, r, g);
    Vector<Rational> yq;
    for (std::size_t k = 0; k < n; ++k) yq.push_back(Rational(int(g() % 21) - 10));
    const auto exact = solve_batch<Rational>(aq, yq, default_options<Rational>());
    if (exact.x != oracle::min_norm_solution(aq, yq) || exact.rank != oracle::rank(aq)) ++exact_fail;
  }
  const bool pass = worst <= 1e-8 && exact_fail == 0 && rank_fail == 0 && ranks.size() == 41;
  return {pass, "200 cases, ranks 0..40; max rel err " + fmt(worst) + " (limit 1e-8); rank mismatches " +
                    std::to_string(rank_fail) + "; rational mismatches " + std::to_string(exact_fail)};
}

// 2. Penrose residuals of the streamed pseudoinverse.
Outcome penrose_suite() {
  std::mt19937_64 g(77);
  double worst = 0.0;
  std::size_t exact_fail = 0;
  for (int i = 0; i < 100; ++i) {
    std::uniform_int_distribution<std::size_t> dim(1, 12);
    const std::size_t n = dim(g), m = dim(g);
    const std::size_t r = std::uniform_int_distribution<std::size_t>(0, std::min(n, m))(g);
    const Matrix<double> a = r == 0 ? Matrix<double>(n, m) : random_standardized(n, m, r, g());
    for (Variant v : {Variant::general, Variant::orthogonal, Variant::orthonormal}) {
      const Matrix<double> x = pinv_from_scratch(a, variant_options(v));
      for (double res : penrose_residuals(a, x)) worst = std::max(worst, res);
    }
    const Matrix<Rational> aq = r == 0 ? Matrix<Rational>(n, m) : oracle::integer_rank_matrix(n, m, r, g);
    const Matrix<Rational> xq = pinv_from_scratch(aq);
    const Matrix<Rational> ax = matmul(aq, xq), xa = matmul(xq, aq);
    const bool ok = matmul(ax, aq) == aq && matmul(xa, xq) == xq && transpose(ax) == ax && transpose(xa) == xa;
    if (!ok) ++exact_fail;
  }
  return {worst <= 1e-9 && exact_fail == 0, "100 matrices up to 12x12; max float residual " + fmt(worst) +
                                                " (limit 1e-9); rational nonzero residuals " +
                                                std::to_string(exact_fail)};
}

// 3. Exact Pascal inverse in rational mode.
Outcome pascal_exact() {
  std::string detail;
  bool pass = true;
  for (std::size_t n : {4, 6, 8, 10}) {
    const bool ok = pinv_from_scratch(pascal<Rational>(n)) == pascal_inverse(n) &&
                    pascal_inverse(n) == oracle::inverse(pascal<Rational>(n));
    pass = pass && ok;
    detail += "n=" + std::to_string(n) + (ok ? " exact; " : " MISMATCH; ");
  }
  return {pass, detail};
}

// 4. Pascal condition numbers.
Outcome pascal_cond() {
  const std::pair<std::size_t, double> table[] = {{4, 6.92e2}, {6, 1.11e5}, {8, 2.06e7}, {10, 4.16e9}};
  bool pass = true;
  std::string detail;
  for (const auto& [n, expected] : table) {
    const double k = cond2(pascal<double>(n));
    const double rel = std::abs(k - expected) / expected;
    pass = pass && rel <= 0.01;
    detail += "n=" + std::to_string(n) + " " + fmt(k) + " (" + fmt(100 * rel) + "% off); ";
  }
  return {pass, detail};
}

Outcome scaling(Experiment e, double lo, double hi) {
  const BenchOutcome o = run_bench(default_plan(e));
  std::string detail;
  for (std::size_t i = 0; i < o.swept.size(); ++i) {
    detail += fmt(o.swept[i]) + ":" + fmt(o.medians[i]) + "s ";
  }
  detail += "| exponent " + fmt(o.fit.exponent) + " over last " + std::to_string(o.fit_points) + " points (band [" +
            fmt(lo) + ", " + fmt(hi) + "]), r^2 " + fmt(o.fit.r_squared);
  for (const auto& w : o.warnings) detail += " | warning: " + w;
  return {o.fit.exponent >= lo && o.fit.exponent <= hi, detail};
}

// 8. Stability bands.
Outcome stability_bands() {
  const Matrix<double> p = pascal<double>(10);
  const Matrix<double> p_ref = oracle::to_double(pascal_inverse(10));
  const Matrix<double> p_algo = pinv_from_scratch(p);
  const double res_p = residual_error(p_algo, p);
  const double e_p = stability_factor(p_algo, p_ref, p);

  const Matrix<double> k = kahan(100, 0.2);
  SolverOptions o;
  o.eps = EpsPolicy::fixed(1e-8);
  Solver<double> s(100, o);
  s.track_pseudoinverse();
  for (std::size_t i = 0; i < k.rows(); ++i) s.update(k.row(i), 0.0);
  const double res_k = residual_error(s.pseudoinverse()->pinv(), k);

  const bool ok_res_p = res_p >= 1e-11 && res_p <= 1e-7;
  const bool ok_e_p = e_p >= 1e5 && e_p <= 1e7;
  const bool ok_k = res_k <= 1e-14;
  return {ok_res_p && ok_e_p && ok_k,
          std::string("pascal(10) res ") + fmt(res_p) + (ok_res_p ? " ok" : " OUT") + " [1e-11, 1e-7]; pascal(10) e " +
              fmt(e_p) + (ok_e_p ? " ok" : " OUT") + " [1e5, 1e7]; kahan(100, 0.2) eps 1e-8 res " + fmt(res_k) +
              (ok_k ? " ok" : " OUT") + " (<= 1e-14), detected rank " + std::to_string(s.rank())};
}

// 9. Variant agreement and the covariance tracker.
Outcome variant_agreement() {
  std::mt19937_64 g(909);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 100)(g);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(1, 50)(g);
    const std::size_t r = std::uniform_int_distribution<std::size_t>(1, std::min(n, m))(g);
    const Matrix<double> a = random_standardized(n, m, r, g());
    const Vector<double> y = column(random_standardized(n, 1, 1, g()));
    const auto x0 = solve_batch<double>(a, y, variant_options(Variant::general)).x;
    const auto x1 = solve_batch<double>(a, y, variant_options(Variant::orthogonal)).x;
    const auto x2 = solve_batch<double>(a, y, variant_options(Variant::orthonormal)).x;
    worst = std::max({worst, oracle::rel_err(x0, x1), oracle::rel_err(x0, x2), oracle::rel_err(x1, x2)});
  }

  double cov_worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 20)(g);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(1, 20)(g);
    const std::size_t r = std::uniform_int_distribution<std::size_t>(1, std::min(n, m))(g);
    const Matrix<double> a = random_standardized(n, m, r, g());
    for (Variant v : {Variant::general, Variant::orthogonal, Variant::orthonormal}) {
      Solver<double> s(m, variant_options(v));
      s.track_pseudoinverse();
      s.track_covariance();
      for (std::size_t k = 0; k < n; ++k) {
        s.update(a.row(k), 0.0);
        const Matrix<double> x = s.pseudoinverse()->pinv();
        const Matrix<double> ref = matmul(x, transpose(x));
        const double err = max_abs(s.covariance()->covariance() - ref) / std::max(1.0, max_abs(ref));
        cov_worst = std::max(cov_worst, err);
      }
    }
  }
  return {worst <= 1e-8 && cov_worst <= 1e-9, "50 streams up to 100x50: max pairwise rel diff " + fmt(worst) +
                                                  " (limit 1e-8); covariance max rel err over every step " +
                                                  fmt(cov_worst) + " (limit 1e-9)"};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "oracle equivalence", oracle_equivalence},
      {2, "Penrose suite", penrose_suite},
      {3, "exact Pascal inverse", pascal_exact},
      {4, "Pascal condition numbers", pascal_cond},
      {5, "rank-exploiting scaling (r = 20)", [] { return scaling(Experiment::rank_fixed_r, 1.6, 2.4); }},
      {6, "full-rank square scaling", [] { return scaling(Experiment::square, 2.5, 3.5); }},
      {7, "per-update cost vs rank", [] { return scaling(Experiment::update_cost, 0.7, 1.3); }},
      {8, "stability bands", stability_bands},
      {9, "variant agreement and covariance", variant_agreement},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : all) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("criterion %d %s: %s (%.1fs) %s\n", c.id, o.pass ? "PASS" : "FAIL", c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
