#include "rankrls/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace rankrls {

namespace {

constexpr double kJacobiTolerance = 1e-14;
constexpr int kMaxSweeps = 60;

double default_rcond(const Matrix<double>& a, double rcond) {
  if (rcond >= 0.0) return rcond;
  return std::numeric_limits<double>::epsilon() * static_cast<double>(std::max(a.rows(), a.cols()));
}

// One-sided Jacobi on a tall (or square) matrix.
SvdResult svd_tall(const Matrix<double>& a) {
  const std::size_t n = a.rows();
  const std::size_t m = a.cols();
  Matrix<double> w = transpose(a);  // row j holds column j of A
  Matrix<double> vt = Matrix<double>::identity(m);

  // Columns below this squared norm are numerically zero; rotating them
  // against each other only pushes them into the subnormal range.
  double frob_sq = 0.0;
  for (double v : a.data()) frob_sq += v * v;
  const double eps = std::numeric_limits<double>::epsilon();
  const double negligible = frob_sq * eps * eps * eps * eps;

  int sweep = 0;
  double worst = 0.0;
  for (; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    worst = 0.0;
    for (std::size_t p = 0; p + 1 < m; ++p) {
      for (std::size_t q = p + 1; q < m; ++q) {
        auto wp = w.row(p);
        auto wq = w.row(q);
        const double alpha = dot<double>(wp, wp);
        const double beta = dot<double>(wq, wq);
        const double gamma = dot<double>(wp, wq);
        if (gamma == 0.0 || alpha <= negligible || beta <= negligible) continue;
        const double scale = std::sqrt(alpha) * std::sqrt(beta);
        const double rel = std::abs(gamma) / scale;
        worst = std::max(worst, rel);
        if (rel <= kJacobiTolerance) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < n; ++i) {
          const double x = wp[i];
          wp[i] = c * x - s * wq[i];
          wq[i] = s * x + c * wq[i];
        }
        auto vp = vt.row(p);
        auto vq = vt.row(q);
        for (std::size_t i = 0; i < m; ++i) {
          const double x = vp[i];
          vp[i] = c * x - s * vq[i];
          vq[i] = s * x + c * vq[i];
        }
      }
    }
    if (!rotated) break;
  }
  if (sweep == kMaxSweeps) {
    throw ConvergenceError("Jacobi SVD did not converge after " + std::to_string(kMaxSweeps) +
                           " sweeps on a " + std::to_string(n) + "x" + std::to_string(m) +
                           " matrix (largest relative off-diagonal " + std::to_string(worst) + ")");
  }

  Vector<double> norms(m);
  for (std::size_t j = 0; j < m; ++j) norms[j] = std::sqrt(dot<double>(w.row(j), w.row(j)));
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

  SvdResult out{Matrix<double>(n, m), Vector<double>(m), Matrix<double>(m, m)};
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t j = order[k];
    out.sigma[k] = norms[j];
    for (std::size_t i = 0; i < n; ++i) out.u(i, k) = norms[j] > 0.0 ? w(j, i) / norms[j] : 0.0;
    for (std::size_t i = 0; i < m; ++i) out.v(i, k) = vt(j, i);
  }
  return out;
}

}  // namespace

SvdResult svd_small(const Matrix<double>& a) {
  if (a.rows() >= a.cols()) return svd_tall(a);
  SvdResult t = svd_tall(transpose(a));
  return {std::move(t.v), std::move(t.sigma), std::move(t.u)};
}

double two_norm(const Matrix<double>& a) {
  if (a.empty()) return 0.0;
  return svd_small(a).sigma.front();
}

double cond2(const Matrix<double>& a) {
  if (a.empty()) throw DimensionError("cond2 of an empty matrix");
  const auto sigma = svd_small(a).sigma;
  if (sigma.front() == 0.0) throw DimensionError("cond2 of the zero matrix");
  if (sigma.back() == 0.0) return std::numeric_limits<double>::infinity();
  return sigma.front() / sigma.back();
}

double stability_factor(const Matrix<double>& pinv_algo, const Matrix<double>& pinv_ref,
                        const Matrix<double>& a, double machine_eps) {
  const double ref_norm = two_norm(pinv_ref);
  if (ref_norm == 0.0) throw DimensionError("stability factor needs a nonzero reference pseudoinverse");
  return two_norm(pinv_algo - pinv_ref) / (machine_eps * ref_norm * cond2(a));
}

double residual_error(const Matrix<double>& pinv_algo, const Matrix<double>& a) {
  const double pinv_norm = two_norm(pinv_algo);
  if (pinv_norm == 0.0) throw DimensionError("residual error of a zero pseudoinverse");
  const bool wide = a.rows() < a.cols();
  Matrix<double> prod = wide ? matmul(a, pinv_algo) : matmul(pinv_algo, a);
  for (std::size_t i = 0; i < prod.rows(); ++i) prod(i, i) -= 1.0;
  return two_norm(prod) / (two_norm(a) * pinv_norm);
}

std::array<double, 4> penrose_residuals(const Matrix<double>& a, const Matrix<double>& pinv) {
  if (a.rows() != pinv.cols() || a.cols() != pinv.rows()) {
    throw DimensionError("penrose_residuals: pseudoinverse shape does not match");
  }
  const double na = two_norm(a);
  const double nx = two_norm(pinv);
  const auto norm_by = [](double v, double d) { return d > 0.0 ? v / d : v; };
  const Matrix<double> ax = matmul(a, pinv);
  const Matrix<double> xa = matmul(pinv, a);
  return {
      norm_by(two_norm(matmul(ax, a) - a), na),
      norm_by(two_norm(matmul(xa, pinv) - pinv), nx),
      norm_by(two_norm(transpose(ax) - ax), na),
      norm_by(two_norm(transpose(xa) - xa), nx),
  };
}

Vector<double> oracle_min_norm_lstsq(const Matrix<double>& a, std::span<const double> y, double rcond) {
  if (a.rows() != y.size()) throw DimensionError("oracle_min_norm_lstsq: dimension mismatch");
  const SvdResult svd = svd_small(a);
  const double cutoff = default_rcond(a, rcond) * (svd.sigma.empty() ? 0.0 : svd.sigma.front());
  Vector<double> x(a.cols(), 0.0);
  for (std::size_t k = 0; k < svd.sigma.size(); ++k) {
    const double s = svd.sigma[k];
    if (s <= cutoff || s == 0.0) continue;
    double uty = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) uty += svd.u(i, k) * y[i];
    const double coef = uty / s;
    for (std::size_t j = 0; j < a.cols(); ++j) x[j] += coef * svd.v(j, k);
  }
  return x;
}

Matrix<double> pinv_svd(const Matrix<double>& a, double rcond) {
  const SvdResult svd = svd_small(a);
  const double cutoff = default_rcond(a, rcond) * (svd.sigma.empty() ? 0.0 : svd.sigma.front());
  Matrix<double> out(a.cols(), a.rows());
  for (std::size_t k = 0; k < svd.sigma.size(); ++k) {
    const double s = svd.sigma[k];
    if (s <= cutoff || s == 0.0) continue;
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const double vi = svd.v(i, k) / s;
      for (std::size_t j = 0; j < a.rows(); ++j) out(i, j) += vi * svd.u(j, k);
    }
  }
  return out;
}

}  // namespace rankrls
