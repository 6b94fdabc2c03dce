#include "rankrls/stability.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <ostream>
#include <thread>

#include "rankrls/metrics.hpp"
#include "rankrls/pinv.hpp"
#include "rankrls/textio.hpp"

namespace rankrls {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

struct Job {
  std::size_t n;
  std::optional<double> c;
  Variant variant;
};

struct Problem {
  Matrix<double> a;
  std::optional<Matrix<double>> ref;
  std::optional<Matrix<Rational>> a_exact;    // pascal only
  std::optional<Matrix<Rational>> ref_exact;  // pascal only
};

// Exact pseudoinverse of the float matrix as given (every double is a
// rational), rounded once at the end.
Matrix<double> exact_reference(const Matrix<double>& a) {
  const auto q = convert<Rational>(a, [](double v) { return Rational::from_double(v); });
  return convert<double>(pinv_from_scratch(q), [](const Rational& v) { return v.to_double(); });
}

Problem build_problem(const StabilityPlan& plan, const Job& job) {
  Problem p;
  switch (plan.family) {
    case Family::pascal:
      p.a = pascal<double>(job.n);
      p.a_exact = pascal<Rational>(job.n);
      p.ref_exact = pascal_inverse(job.n);
      p.ref = convert<double>(*p.ref_exact, [](const Rational& v) { return v.to_double(); });
      break;
    case Family::kahan:
      p.a = kahan(job.n, *job.c);
      p.ref = kahan_inverse(job.n, *job.c);
      break;
    case Family::random_standardized:
      p.a = random_standardized(3 * job.n, job.n, job.n, plan.seed);
      p.ref = plan.rcond < 0 ? exact_reference(p.a) : pinv_svd(p.a, plan.rcond);
      break;
    case Family::random_usv: {
      UsvMatrix usv = random_usv(job.n, plan.seed);
      p.a = std::move(usv.a);
      p.ref = std::move(usv.pinv);
      break;
    }
    case Family::ill_conditioned_power: {
      PowerMatrix pm = ill_conditioned_power(job.n, plan.seed, plan.power);
      p.a = std::move(pm.a);
      p.ref = plan.rcond < 0 ? exact_reference(p.a) : pinv_svd(p.a, plan.rcond);
      break;
    }
  }
  return p;
}

EpsPolicy float_eps(const StabilityPlan& plan) {
  if (!plan.eps.empty()) return EpsPolicy::parse(plan.eps);
  if (plan.family == Family::kahan || plan.family == Family::random_usv) return EpsPolicy::fixed(1e-8);
  return EpsPolicy::automatic();
}

StabilityRow run_job(const StabilityPlan& plan, const Job& job) {
  StabilityRow row;
  row.family = plan.family;
  row.c = job.c;
  row.variant = job.variant;
  row.scalar = plan.scalar;
  row.e = row.res = kNan;
  row.penrose.fill(kNan);
  row.cond2 = kNan;

  Problem p;
  try {
    p = build_problem(plan, job);
  } catch (const ConvergenceError& e) {
    row.reference_available = false;
    row.note = e.what();
    return row;
  }
  row.n = p.a.rows();
  row.m = p.a.cols();
  try {
    row.cond2 = cond2(p.a);
  } catch (const std::exception& e) {
    row.note = std::string("cond2: ") + e.what();
  }

  Matrix<double> algo;
  if (plan.scalar == ScalarKind::float64) {
    SolverOptions options;
    options.variant = job.variant;
    options.eps = float_eps(plan);
    algo = pinv_from_scratch<double>(p.a, options);
  } else {
    if (job.variant == Variant::orthonormal) {
      row.reference_available = false;
      row.note = "orthonormal variant needs square roots";
      return row;
    }
    SolverOptions options = default_options<Rational>();
    options.variant = job.variant;
    if (!plan.eps.empty()) options.eps = EpsPolicy::parse(plan.eps);
    const Matrix<Rational> a_exact =
        p.a_exact ? *p.a_exact : convert<Rational>(p.a, [](double v) { return Rational::from_double(v); });
    const Matrix<Rational> exact = pinv_from_scratch<Rational>(a_exact, options);
    if (p.ref_exact) row.exact = (exact == *p.ref_exact);
    algo = convert<double>(exact, [](const Rational& v) { return v.to_double(); });
  }

  try {
    row.res = residual_error(algo, p.a);
    row.penrose = penrose_residuals(p.a, algo);
    if (!p.ref || !std::isfinite(row.cond2)) {
      row.reference_available = false;
      if (row.note.empty()) row.note = "reference unavailable";
    } else {
      row.e = stability_factor(algo, *p.ref, p.a);
    }
  } catch (const std::exception& e) {
    row.reference_available = false;
    row.note = e.what();
  }
  return row;
}

std::string csv_optional(const std::optional<double>& v) { return v ? format_csv_double(*v) : ""; }

}  // namespace

StabilityPlan default_stability_plan(Family family) {
  StabilityPlan plan;
  plan.family = family;
  switch (family) {
    case Family::pascal: plan.sizes = {4, 6, 8, 10}; break;
    case Family::random_standardized: plan.sizes = {4, 6, 8, 10}; break;
    case Family::ill_conditioned_power: plan.sizes = {6, 8, 10, 12}; break;
    case Family::random_usv: plan.sizes = {10, 15, 20}; break;
    case Family::kahan:
      plan.sizes = {100};
      plan.c_values = {0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40};
      break;
  }
  return plan;
}

std::vector<StabilityRow> run_stability(const StabilityPlan& plan) {
  if (plan.sizes.empty()) throw ConfigError("stability plan has no sizes");
  if (plan.variants.empty()) throw ConfigError("stability plan has no variants");
  if (plan.family == Family::kahan && plan.c_values.empty()) throw ConfigError("kahan stability plan has no c values");
  for (std::size_t n : plan.sizes) {
    if (n == 0) throw ConfigError("stability sizes must be positive");
  }

  std::vector<Job> jobs;
  for (std::size_t n : plan.sizes) {
    if (plan.family == Family::kahan) {
      for (double c : plan.c_values) {
        for (Variant v : plan.variants) jobs.push_back({n, c, v});
      }
    } else {
      for (Variant v : plan.variants) jobs.push_back({n, std::nullopt, v});
    }
  }

  std::vector<std::optional<StabilityRow>> rows(jobs.size());
  if (!plan.parallel) {
    for (std::size_t i = 0; i < jobs.size(); ++i) rows[i] = run_job(plan, jobs[i]);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(jobs.size());
    const std::size_t workers =
        std::min<std::size_t>(jobs.size(), std::max(1u, std::thread::hardware_concurrency()));
    {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
          for (std::size_t i = next++; i < jobs.size(); i = next++) {
            try {
              rows[i] = run_job(plan, jobs[i]);
            } catch (...) {
              errors[i] = std::current_exception();
            }
          }
        });
      }
    }
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  std::vector<StabilityRow> out;
  out.reserve(rows.size());
  for (auto& r : rows) out.push_back(std::move(*r));
  return out;
}

void write_stability_csv_header(std::ostream& out) {
  out << "family,n,m,c,variant,scalar,cond2,e,res,penrose1,penrose2,penrose3,penrose4,exact,reference,note\n";
}

void write_stability_csv(std::ostream& out, const std::vector<StabilityRow>& rows) {
  for (const auto& r : rows) {
    out << family_name(r.family) << ',' << r.n << ',' << r.m << ',' << csv_optional(r.c) << ','
        << variant_name(r.variant) << ',' << (r.scalar == ScalarKind::float64 ? "f64" : "rational") << ','
        << format_csv_double(r.cond2) << ',' << format_csv_double(r.e) << ',' << format_csv_double(r.res);
    for (double v : r.penrose) out << ',' << format_csv_double(v);
    out << ',' << (r.exact ? (*r.exact ? "true" : "false") : "") << ','
        << (r.reference_available ? "yes" : "no") << ',';
    std::string note = r.note;
    for (char& ch : note) {
      if (ch == ',' || ch == '\n' || ch == '"') ch = ';';
    }
    out << note << '\n';
  }
}

}  // namespace rankrls
