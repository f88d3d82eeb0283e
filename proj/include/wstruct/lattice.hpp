#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace wstruct {

using IntVector = std::vector<mpz_class>;

/// Dense integer matrix with arbitrary-precision entries.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);
  static IntMatrix from_ints(const std::vector<std::vector<long>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const mpz_class& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  mpz_class& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  IntVector row(std::size_t i) const;
  std::vector<IntVector> row_list() const;
  IntMatrix transpose() const;
  bool is_zero() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += k * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const mpz_class& k);
  /// col[dst] += k * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const mpz_class& k);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<mpz_class> data_;
};

/// Exact determinant by fraction-free elimination (square matrices only).
mpz_class determinant(const IntMatrix& m);

struct SmithForm {
  IntMatrix u, d, v;  ///< u * m * v == d
};

/// Smith normal form: D diagonal with nonnegative entries, each dividing the next.
SmithForm snf(const IntMatrix& m);

struct HermiteForm {
  IntMatrix h;                 ///< same shape as the input, zero rows at the bottom
  IntMatrix u;                 ///< unimodular, u * m == h
  std::vector<std::size_t> pivots;  ///< pivot column of each nonzero row
};

/// Row Hermite normal form. Each nonzero row's leading entry (its pivot) is
/// positive and strictly right of the previous row's pivot; entries above a
/// pivot lie in [0, pivot).
HermiteForm hnf(const IntMatrix& m);

/// Subgroup of Z^n, stored by its canonical Hermite basis.
class IntLattice {
 public:
  explicit IntLattice(std::size_t ambient_rank = 0) : n_(ambient_rank) {}

  static IntLattice from_generators(std::size_t ambient_rank, const std::vector<IntVector>& gens);
  static IntLattice full(std::size_t ambient_rank);

  std::size_t ambient_rank() const { return n_; }
  std::size_t rank() const { return basis_.size(); }
  const std::vector<IntVector>& basis() const { return basis_; }
  bool is_zero() const { return basis_.empty(); }

  /// Throws std::invalid_argument on a length mismatch.
  bool contains(const IntVector& v) const;
  bool contains(const IntLattice& other) const;

  /// Multiplies every vector by k (k > 0).
  IntLattice scaled(const mpz_class& k) const;

  friend bool operator==(const IntLattice& a, const IntLattice& b) {
    return a.n_ == b.n_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const IntLattice& a, const IntLattice& b) { return !(a == b); }

  std::string to_string() const;

 private:
  std::size_t n_;
  std::vector<IntVector> basis_;
};

/// Smallest lattice containing both. Throws std::invalid_argument on ambient mismatch.
IntLattice lattice_sum(const IntLattice& a, const IntLattice& b);
/// Vectors in both, via the integer left kernel of the stacked bases.
IntLattice lattice_intersect(const IntLattice& a, const IntLattice& b);
bool lattice_contains(const IntLattice& l, const IntVector& v);

/// Rows forming a basis of {x integer : x * m == 0}.
std::vector<IntVector> integer_left_kernel(const IntMatrix& m);

IntVector make_int_vector(const std::vector<long>& v);

}  // namespace wstruct
