#pragma once

// Stability tables: per (family, size, variant) condition number, stability
// factor, residual error and Penrose residuals of the streamed pseudoinverse.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rankrls/scalar.hpp"
#include "rankrls/testmat.hpp"
#include "rankrls/update_step.hpp"

namespace rankrls {

struct StabilityPlan {
  Family family = Family::pascal;
  // Matrix order n; for Kahan every c in `c_values` is run at each n.
  std::vector<std::size_t> sizes;
  std::vector<double> c_values;
  std::vector<Variant> variants{Variant::general, Variant::orthogonal, Variant::orthonormal};
  ScalarKind scalar = ScalarKind::float64;
  // Solver threshold ("auto", "exact" or a number). Empty selects the
  // family default: 1e-8 for Kahan and U S V^T, auto otherwise.
  std::string eps;
  // Random and ill families: < 0 uses the exact pseudoinverse of the
  // rationalized input as reference, >= 0 an SVD truncated at this rcond.
  double rcond = -1.0;
  std::uint64_t seed = 0;
  unsigned power = 4;
  bool parallel = false;
};

// Family defaults: pascal 4..10 step 2, random 4..10, ill 6..12, usv 10..20
// step 5, kahan n = 100 with c = 0.10 .. 0.40 step 0.05.
StabilityPlan default_stability_plan(Family family);

struct StabilityRow {
  Family family = Family::pascal;
  std::size_t n = 0;  // rows of A
  std::size_t m = 0;  // cols of A
  std::optional<double> c;
  Variant variant = Variant::general;
  ScalarKind scalar = ScalarKind::float64;
  double cond2 = 0.0;
  double e = 0.0;    // nan without a reference
  double res = 0.0;
  std::array<double, 4> penrose{};
  // Rational Pascal rows only: A+ equals the exact inverse entrywise.
  std::optional<bool> exact;
  bool reference_available = true;
  std::string note;
};

std::vector<StabilityRow> run_stability(const StabilityPlan& plan);

// family,n,m,c,variant,scalar,cond2,e,res,penrose1..4,exact,reference,note
void write_stability_csv_header(std::ostream& out);
void write_stability_csv(std::ostream& out, const std::vector<StabilityRow>& rows);

}  // namespace rankrls
