#include "wstruct/lattice.hpp"

#include <sstream>
#include <stdexcept>

namespace wstruct {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::from_ints(const std::vector<std::vector<long>>& rows) {
  const std::size_t nc = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), nc);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != nc) throw std::invalid_argument("ragged integer matrix");
    for (std::size_t j = 0; j < nc; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

std::vector<IntVector> IntMatrix::row_list() const {
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool IntMatrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("integer matrix product shape mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const mpz_class& k) {
  if (k == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += k * (*this)(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const mpz_class& k) {
  if (k == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += k * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
}

void IntMatrix::negate_col(std::size_t c) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
}

mpz_class determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  // Bareiss elimination.
  IntMatrix a = m;
  mpz_class sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && a(r, k) == 0) ++r;
      if (r == n) return 0;
      a.swap_rows(k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

SmithForm snf(const IntMatrix& m) {
  SmithForm s{IntMatrix::identity(m.rows()), m, IntMatrix::identity(m.cols())};
  IntMatrix& d = s.d;
  const std::size_t nr = m.rows(), nc = m.cols();
  for (std::size_t t = 0; t < std::min(nr, nc); ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      bool found = false;
      std::size_t pi = t, pj = t;
      for (std::size_t i = t; i < nr; ++i)
        for (std::size_t j = t; j < nc; ++j)
          if (d(i, j) != 0 && (!found || abs(d(i, j)) < abs(d(pi, pj)))) {
            found = true;
            pi = i;
            pj = j;
          }
      if (!found) return s;
      d.swap_rows(t, pi);
      s.u.swap_rows(t, pi);
      d.swap_cols(t, pj);
      s.v.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < nr; ++i) {
        if (d(i, t) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), d(i, t).get_mpz_t(), d(t, t).get_mpz_t());
        d.add_row_multiple(i, t, -q);
        s.u.add_row_multiple(i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < nc; ++j) {
        if (d(t, j) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), d(t, j).get_mpz_t(), d(t, t).get_mpz_t());
        d.add_col_multiple(j, t, -q);
        s.v.add_col_multiple(j, t, -q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: fold any offending row into the pivot row and retry.
      bool divides = true;
      for (std::size_t i = t + 1; i < nr && divides; ++i)
        for (std::size_t j = t + 1; j < nc; ++j)
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
            d.add_row_multiple(t, i, 1);
            s.u.add_row_multiple(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      s.u.negate_row(t);
    }
  }
  return s;
}

HermiteForm hnf(const IntMatrix& m) {
  HermiteForm f{m, IntMatrix::identity(m.rows()), {}};
  IntMatrix& h = f.h;
  std::size_t row = 0;
  for (std::size_t col = 0; col < h.cols() && row < h.rows(); ++col) {
    // Euclid on the column below `row` until one nonzero entry remains.
    while (true) {
      std::size_t best = h.rows();
      for (std::size_t i = row; i < h.rows(); ++i)
        if (h(i, col) != 0 && (best == h.rows() || abs(h(i, col)) < abs(h(best, col)))) best = i;
      if (best == h.rows()) break;
      h.swap_rows(row, best);
      f.u.swap_rows(row, best);
      bool done = true;
      for (std::size_t i = row + 1; i < h.rows(); ++i) {
        if (h(i, col) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), h(i, col).get_mpz_t(), h(row, col).get_mpz_t());
        h.add_row_multiple(i, row, -q);
        f.u.add_row_multiple(i, row, -q);
        if (h(i, col) != 0) done = false;
      }
      if (done) break;
    }
    if (h(row, col) == 0) continue;
    if (h(row, col) < 0) {
      h.negate_row(row);
      f.u.negate_row(row);
    }
    for (std::size_t i = 0; i < row; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, col).get_mpz_t(), h(row, col).get_mpz_t());
      h.add_row_multiple(i, row, -q);
      f.u.add_row_multiple(i, row, -q);
    }
    f.pivots.push_back(col);
    ++row;
  }
  return f;
}

IntLattice IntLattice::from_generators(std::size_t ambient_rank, const std::vector<IntVector>& gens) {
  IntLattice l(ambient_rank);
  if (gens.empty()) return l;
  const HermiteForm f = hnf(IntMatrix::from_rows(gens, ambient_rank));
  for (std::size_t r = 0; r < f.pivots.size(); ++r) l.basis_.push_back(f.h.row(r));
  return l;
}

IntLattice IntLattice::full(std::size_t ambient_rank) {
  std::vector<IntVector> gens;
  for (std::size_t i = 0; i < ambient_rank; ++i) {
    IntVector e(ambient_rank, 0);
    e[i] = 1;
    gens.push_back(e);
  }
  return from_generators(ambient_rank, gens);
}

bool IntLattice::contains(const IntVector& v) const {
  if (v.size() != n_)
    throw std::invalid_argument("vector of length " + std::to_string(v.size()) +
                                " tested against lattice in Z^" + std::to_string(n_));
  IntVector w = v;
  for (const auto& b : basis_) {
    std::size_t c = 0;
    while (b[c] == 0) ++c;
    if (!mpz_divisible_p(w[c].get_mpz_t(), b[c].get_mpz_t())) return false;
    const mpz_class q = w[c] / b[c];
    for (std::size_t j = c; j < n_; ++j) w[j] -= q * b[j];
  }
  for (const auto& x : w)
    if (x != 0) return false;
  return true;
}

bool IntLattice::contains(const IntLattice& other) const {
  for (const auto& b : other.basis_)
    if (!contains(b)) return false;
  return true;
}

IntLattice IntLattice::scaled(const mpz_class& k) const {
  if (k <= 0) throw std::invalid_argument("lattice scale factor must be positive");
  std::vector<IntVector> gens = basis_;
  for (auto& g : gens)
    for (auto& x : g) x *= k;
  return from_generators(n_, gens);
}

std::string IntLattice::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    os << (i ? ", " : "") << "(";
    for (std::size_t j = 0; j < n_; ++j) os << (j ? "," : "") << basis_[i][j].get_str();
    os << ")";
  }
  os << "]";
  return os.str();
}

namespace {
void check_ambient(const IntLattice& a, const IntLattice& b) {
  if (a.ambient_rank() != b.ambient_rank())
    throw std::invalid_argument("lattice ambient mismatch: Z^" + std::to_string(a.ambient_rank()) +
                                " vs Z^" + std::to_string(b.ambient_rank()));
}
}  // namespace

IntLattice lattice_sum(const IntLattice& a, const IntLattice& b) {
  check_ambient(a, b);
  std::vector<IntVector> gens = a.basis();
  gens.insert(gens.end(), b.basis().begin(), b.basis().end());
  return IntLattice::from_generators(a.ambient_rank(), gens);
}

std::vector<IntVector> integer_left_kernel(const IntMatrix& m) {
  const HermiteForm f = hnf(m);
  std::vector<IntVector> out;
  for (std::size_t r = f.pivots.size(); r < m.rows(); ++r) out.push_back(f.u.row(r));
  return out;
}

IntLattice lattice_intersect(const IntLattice& a, const IntLattice& b) {
  check_ambient(a, b);
  const std::size_t n = a.ambient_rank();
  if (a.is_zero() || b.is_zero()) return IntLattice(n);
  // x*A = y*B  <=>  (x, y) * [A; -B] = 0; the intersection is spanned by x*A.
  std::vector<IntVector> stacked = a.basis();
  for (auto row : b.basis()) {
    for (auto& x : row) x = -x;
    stacked.push_back(row);
  }
  const auto kernel = integer_left_kernel(IntMatrix::from_rows(stacked, n));
  std::vector<IntVector> gens;
  for (const auto& k : kernel) {
    IntVector v(n, 0);
    for (std::size_t i = 0; i < a.rank(); ++i)
      for (std::size_t j = 0; j < n; ++j) v[j] += k[i] * a.basis()[i][j];
    gens.push_back(v);
  }
  return IntLattice::from_generators(n, gens);
}

bool lattice_contains(const IntLattice& l, const IntVector& v) { return l.contains(v); }

IntVector make_int_vector(const std::vector<long>& v) {
  IntVector out;
  for (long x : v) out.emplace_back(x);
  return out;
}

}  // namespace wstruct
