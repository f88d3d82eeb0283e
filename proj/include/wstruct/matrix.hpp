#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "wstruct/scalar.hpp"

namespace wstruct {

/// Dense row-major matrix over a Field. Value type; all operations are pure.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Field f, std::size_t rows, std::size_t cols);

  static Matrix zero(Field f, std::size_t rows, std::size_t cols) { return Matrix(f, rows, cols); }
  static Matrix identity(Field f, std::size_t n);
  /// Builds from integer entries (row-major).
  static Matrix from_ints(Field f, const std::vector<std::vector<long>>& rows);

  Field field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  bool is_zero() const;
  Matrix transpose() const;
  Matrix column(std::size_t j) const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
  /// [a b]
  static Matrix hcat(const Matrix& a, const Matrix& b);
  /// [a; b]
  static Matrix vcat(const Matrix& a, const Matrix& b);

  Matrix operator-() const;
  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(const Scalar& s);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const Scalar& s) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  Field field_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> data_;
};

/// Reduced row echelon form together with its pivot columns.
struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

/// Gauss-Jordan elimination; pivots are chosen as the first nonzero entry of
/// each column in row order, so the output is deterministic.
Echelon row_reduce(const Matrix& m);

std::size_t rank(const Matrix& m);

/// Columns form a basis of {x : m x = 0}; one basis vector per free column,
/// with a 1 in that column and zeros in the other free columns.
Matrix kernel_basis(const Matrix& m);

/// Some x with a x = b, or nullopt when the system is inconsistent. The
/// returned solution has zeros in all free variables. Throws
/// std::invalid_argument when a.rows() != b.rows().
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);

/// Indices of a maximal set of linearly independent columns, greedy from the left.
std::vector<std::size_t> independent_columns(const Matrix& m);

}  // namespace wstruct
