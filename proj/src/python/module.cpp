// Python bindings. Float matrices cross as numpy arrays; rational values
// cross as fractions.Fraction (any value whose str() parses works as input).

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "rankrls/bench.hpp"
#include "rankrls/metrics.hpp"
#include "rankrls/pinv.hpp"
#include "rankrls/solver.hpp"
#include "rankrls/testmat.hpp"
#include "rankrls/textio.hpp"

namespace py = pybind11;
using namespace rankrls;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Matrix<double> to_matrix(const Array& a) {
  if (a.ndim() != 2) throw DimensionError("expected a 2-d array");
  const auto rows = static_cast<std::size_t>(a.shape(0));
  const auto cols = static_cast<std::size_t>(a.shape(1));
  return Matrix<double>(rows, cols, std::vector<double>(a.data(), a.data() + rows * cols));
}

Vector<double> to_vector(const Array& a) {
  if (a.ndim() != 1) throw DimensionError("expected a 1-d array");
  return Vector<double>(a.data(), a.data() + a.shape(0));
}

py::array_t<double> from_matrix(const Matrix<double>& m) {
  py::array_t<double> out({m.rows(), m.cols()});
  std::copy(m.data().begin(), m.data().end(), out.mutable_data());
  return out;
}

py::array_t<double> from_vector(std::span<const double> v) {
  py::array_t<double> out(v.size());
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::object fraction_type() { return py::module_::import("fractions").attr("Fraction"); }

Rational to_rational(const py::handle& h) { return parse_scalar<Rational>(py::str(h).cast<std::string>()); }

py::object from_rational(const Rational& q) { return fraction_type()(q.str()); }

py::list from_rational_vector(std::span<const Rational> v) {
  py::list out;
  for (const auto& q : v) out.append(from_rational(q));
  return out;
}

py::list from_rational_matrix(const Matrix<Rational>& m) {
  py::list out;
  for (std::size_t i = 0; i < m.rows(); ++i) out.append(from_rational_vector(m.row(i)));
  return out;
}

Vector<Rational> to_rational_vector(const py::iterable& it) {
  Vector<Rational> v;
  for (const auto& h : it) v.push_back(to_rational(h));
  return v;
}

Matrix<Rational> to_rational_matrix(const py::iterable& rows) {
  std::vector<Vector<Rational>> parsed;
  for (const auto& r : rows) parsed.push_back(to_rational_vector(py::reinterpret_borrow<py::iterable>(r)));
  const std::size_t cols = parsed.empty() ? 0 : parsed.front().size();
  Matrix<Rational> m(parsed.size(), cols);
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    if (parsed[i].size() != cols) throw DimensionError("ragged rows");
    std::copy(parsed[i].begin(), parsed[i].end(), m.row(i).begin());
  }
  return m;
}

SolverOptions float_options(const std::string& variant, const std::string& eps) {
  SolverOptions o;
  o.variant = parse_variant(variant);
  o.eps = EpsPolicy::parse(eps);
  return o;
}

SolverOptions rational_options(const std::string& variant) {
  SolverOptions o = default_options<Rational>();
  o.variant = parse_variant(variant);
  return o;
}

template <class T>
py::dict report_dict(const UpdateReport<T>& r) {
  py::dict d;
  d["dependent"] = r.branch == Branch::dependent;
  d["rank"] = r.new_rank;
  if constexpr (std::is_same_v<T, double>) {
    d["gain"] = from_vector(r.kalman_gain);
    d["residual"] = r.predicted_residual;
  } else {
    d["gain"] = from_rational_vector(r.kalman_gain);
    d["residual"] = from_rational(r.predicted_residual);
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Recursive minimum-norm least squares over a maintained rank factorization";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ScalarError>(m, "ScalarError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

  py::class_<Solver<double>>(m, "Solver")
      .def(py::init([](std::size_t cols, const std::string& variant, const std::string& eps) {
             return Solver<double>(cols, float_options(variant, eps));
           }),
           py::arg("cols"), py::arg("variant") = "general", py::arg("eps") = "auto")
      .def(
          "update",
          [](Solver<double>& s, const Array& g, double y) {
            const Vector<double> row = to_vector(g);
            return report_dict(s.update(row, y));
          },
          py::arg("g"), py::arg("y"))
      .def("track_pseudoinverse", &Solver<double>::track_pseudoinverse)
      .def("track_covariance", &Solver<double>::track_covariance)
      .def_property_readonly("solution", [](const Solver<double>& s) { return from_vector(s.solution()); })
      .def_property_readonly("rank", &Solver<double>::rank)
      .def_property_readonly("observations", &Solver<double>::observations)
      .def_property_readonly("cols", &Solver<double>::cols)
      .def_property_readonly("eps", &Solver<double>::current_eps)
      .def_property_readonly("basis", [](const Solver<double>& s) { return from_matrix(s.basis()); })
      .def_property_readonly("dual_basis", [](const Solver<double>& s) { return from_matrix(s.dual_basis()); })
      .def_property_readonly("inverse_gram", [](const Solver<double>& s) { return from_matrix(s.inverse_gram()); })
      .def_property_readonly("pseudoinverse",
                             [](const Solver<double>& s) -> py::object {
                               if (!s.pseudoinverse()) return py::none();
                               return from_matrix(s.pseudoinverse()->pinv());
                             })
      .def_property_readonly("covariance", [](const Solver<double>& s) -> py::object {
        if (!s.covariance()) return py::none();
        return from_matrix(s.covariance()->covariance());
      });

  py::class_<Solver<Rational>>(m, "RationalSolver")
      .def(py::init([](std::size_t cols, const std::string& variant) {
             return Solver<Rational>(cols, rational_options(variant));
           }),
           py::arg("cols"), py::arg("variant") = "general")
      .def(
          "update",
          [](Solver<Rational>& s, const py::iterable& g, const py::handle& y) {
            const Vector<Rational> row = to_rational_vector(g);
            return report_dict(s.update(row, to_rational(y)));
          },
          py::arg("g"), py::arg("y"))
      .def("track_pseudoinverse", &Solver<Rational>::track_pseudoinverse)
      .def("track_covariance", &Solver<Rational>::track_covariance)
      .def_property_readonly("solution", [](const Solver<Rational>& s) { return from_rational_vector(s.solution()); })
      .def_property_readonly("rank", &Solver<Rational>::rank)
      .def_property_readonly("observations", &Solver<Rational>::observations)
      .def_property_readonly("cols", &Solver<Rational>::cols)
      .def_property_readonly("pseudoinverse",
                             [](const Solver<Rational>& s) -> py::object {
                               if (!s.pseudoinverse()) return py::none();
                               return from_rational_matrix(s.pseudoinverse()->pinv());
                             })
      .def_property_readonly("covariance", [](const Solver<Rational>& s) -> py::object {
        if (!s.covariance()) return py::none();
        return from_rational_matrix(s.covariance()->covariance());
      });

  m.def(
      "solve_batch",
      [](const Array& a, const Array& y, const std::string& variant, const std::string& eps) {
        const auto r = solve_batch<double>(to_matrix(a), to_vector(y), float_options(variant, eps));
        return py::make_tuple(from_vector(r.x), r.rank);
      },
      py::arg("a"), py::arg("y"), py::arg("variant") = "general", py::arg("eps") = "auto",
      "Minimum-norm least-squares solution; returns (x, rank).");
  m.def(
      "solve_batch_exact",
      [](const py::iterable& a, const py::iterable& y, const std::string& variant) {
        const Vector<Rational> yq = to_rational_vector(y);
        const auto r = solve_batch<Rational>(to_rational_matrix(a), yq, rational_options(variant));
        return py::make_tuple(from_rational_vector(r.x), r.rank);
      },
      py::arg("a"), py::arg("y"), py::arg("variant") = "general");
  m.def(
      "pinv",
      [](const Array& a, const std::string& variant, const std::string& eps) {
        return from_matrix(pinv_from_scratch(to_matrix(a), float_options(variant, eps)));
      },
      py::arg("a"), py::arg("variant") = "general", py::arg("eps") = "auto");
  m.def(
      "pinv_exact",
      [](const py::iterable& a, const std::string& variant) {
        return from_rational_matrix(pinv_from_scratch(to_rational_matrix(a), rational_options(variant)));
      },
      py::arg("a"), py::arg("variant") = "general");

  m.def("pascal", [](std::size_t n) { return from_matrix(pascal<double>(n)); }, py::arg("n"));
  m.def("pascal_inverse", [](std::size_t n) { return from_rational_matrix(pascal_inverse(n)); }, py::arg("n"));
  m.def("kahan", [](std::size_t n, double c) { return from_matrix(kahan(n, c)); }, py::arg("n"), py::arg("c"));
  m.def(
      "random_standardized",
      [](std::size_t n, std::size_t cols, std::size_t r, std::uint64_t seed) {
        return from_matrix(random_standardized(n, cols, r, seed));
      },
      py::arg("n"), py::arg("m"), py::arg("r"), py::arg("seed") = 0);
  m.def(
      "random_usv",
      [](std::size_t n, std::uint64_t seed) {
        const UsvMatrix u = random_usv(n, seed);
        return py::make_tuple(from_matrix(u.a), from_matrix(u.pinv));
      },
      py::arg("n"), py::arg("seed") = 0, "Returns (A, A+).");
  m.def(
      "ill_conditioned_power",
      [](std::size_t n, std::uint64_t seed, unsigned power) {
        const PowerMatrix p = ill_conditioned_power(n, seed, power);
        return py::make_tuple(from_matrix(p.a), from_matrix(p.base));
      },
      py::arg("n"), py::arg("seed") = 0, py::arg("power") = 4, "Returns (B^power, B).");

  m.def("cond2", [](const Array& a) { return cond2(to_matrix(a)); }, py::arg("a"));
  m.def(
      "stability_factor",
      [](const Array& algo, const Array& ref, const Array& a) {
        return stability_factor(to_matrix(algo), to_matrix(ref), to_matrix(a));
      },
      py::arg("pinv_algo"), py::arg("pinv_ref"), py::arg("a"));
  m.def(
      "residual_error", [](const Array& algo, const Array& a) { return residual_error(to_matrix(algo), to_matrix(a)); },
      py::arg("pinv_algo"), py::arg("a"));
  m.def(
      "penrose_residuals",
      [](const Array& a, const Array& x) { return penrose_residuals(to_matrix(a), to_matrix(x)); }, py::arg("a"),
      py::arg("pinv"));
  m.def(
      "oracle_min_norm_lstsq",
      [](const Array& a, const Array& y, double rcond) {
        return from_vector(oracle_min_norm_lstsq(to_matrix(a), to_vector(y), rcond));
      },
      py::arg("a"), py::arg("y"), py::arg("rcond") = -1.0);
  m.def(
      "fit_power_law",
      [](const std::vector<double>& sizes, const std::vector<double>& times) {
        const FitResult f = fit_power_law(sizes, times);
        return py::make_tuple(f.exponent, f.prefactor, f.r_squared);
      },
      py::arg("sizes"), py::arg("times"), "Least-squares fit of log t = log c + k log n; returns (k, c, r^2).");
}
