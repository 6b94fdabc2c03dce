#include "rankrls/textio.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace rankrls {

template <class T>
Matrix<T> read_matrix(std::istream& in) {
  long long n = -1;
  long long m = -1;
  if (!(in >> n >> m) || n < 0 || m < 0) throw ParseError("expected a header line 'n m'");
  Matrix<T> a(static_cast<std::size_t>(n), static_cast<std::size_t>(m));
  std::string token;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (!(in >> token)) {
        throw ParseError("matrix ended early at row " + std::to_string(i + 1) + ", column " + std::to_string(j + 1));
      }
      try {
        a(i, j) = parse_scalar<T>(token);
      } catch (const ScalarError& e) {
        throw ParseError("row " + std::to_string(i + 1) + ": " + e.what());
      }
    }
  }
  if (in >> token) throw ParseError("trailing data after the last matrix row: '" + token + "'");
  return a;
}

template <class T>
Matrix<T> read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  try {
    return read_matrix<T>(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

template <class T>
Vector<T> read_vector_file(const std::filesystem::path& path) {
  const Matrix<T> a = read_matrix_file<T>(path);
  if (a.cols() != 1 && a.rows() != 1) {
    throw ParseError(path.string() + ": expected a single row or column, got " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()));
  }
  const auto d = a.data();
  return Vector<T>(d.begin(), d.end());
}

template <class T>
void write_matrix(std::ostream& out, const Matrix<T>& a) {
  out << a.rows() << ' ' << a.cols() << '\n';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j) out << ' ';
      out << format_scalar(a(i, j));
    }
    out << '\n';
  }
}

template <class T>
void write_matrix_file(const std::filesystem::path& path, const Matrix<T>& a) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path.string() + "'");
  write_matrix(out, a);
}

template <class T>
void write_vector(std::ostream& out, std::span<const T> v) {
  write_matrix(out, Matrix<T>(1, v.size(), Vector<T>(v.begin(), v.end())));
}

std::string format_csv_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

template Matrix<double> read_matrix<double>(std::istream&);
template Matrix<Rational> read_matrix<Rational>(std::istream&);
template Matrix<double> read_matrix_file<double>(const std::filesystem::path&);
template Matrix<Rational> read_matrix_file<Rational>(const std::filesystem::path&);
template Vector<double> read_vector_file<double>(const std::filesystem::path&);
template Vector<Rational> read_vector_file<Rational>(const std::filesystem::path&);
template void write_matrix<double>(std::ostream&, const Matrix<double>&);
template void write_matrix<Rational>(std::ostream&, const Matrix<Rational>&);
template void write_matrix_file<double>(const std::filesystem::path&, const Matrix<double>&);
template void write_matrix_file<Rational>(const std::filesystem::path&, const Matrix<Rational>&);
template void write_vector<double>(std::ostream&, std::span<const double>);
template void write_vector<Rational>(std::ostream&, std::span<const Rational>);

}  // namespace rankrls
