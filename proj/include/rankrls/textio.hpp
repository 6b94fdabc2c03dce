#pragma once

// Matrix text format: a header line "n m", then n lines of m
// whitespace-separated scalars (decimal or "p/q").

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "rankrls/matrix.hpp"
#include "rankrls/scalar.hpp"

namespace rankrls {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class T>
Matrix<T> read_matrix(std::istream& in);
template <class T>
Matrix<T> read_matrix_file(const std::filesystem::path& path);

// Accepts an n x 1 or 1 x n matrix.
template <class T>
Vector<T> read_vector_file(const std::filesystem::path& path);

template <class T>
void write_matrix(std::ostream& out, const Matrix<T>& a);
template <class T>
void write_matrix_file(const std::filesystem::path& path, const Matrix<T>& a);

// Written as a 1 x m matrix.
template <class T>
void write_vector(std::ostream& out, std::span<const T> v);

// 17 significant digits, as used by the CSV outputs.
std::string format_csv_double(double v);

}  // namespace rankrls
