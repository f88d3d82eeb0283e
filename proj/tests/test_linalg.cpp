#include <gtest/gtest.h>

#include <random>

#include "wstruct/lattice.hpp"
#include "wstruct/matrix.hpp"

using namespace wstruct;

namespace {

const Field Q = Field::rationals();

IntLattice lat(std::size_t n, const std::vector<std::vector<long>>& gens) {
  std::vector<IntVector> g;
  for (const auto& v : gens) g.push_back(make_int_vector(v));
  return IntLattice::from_generators(n, g);
}

// Membership by enumerating small integer combinations of the generators.
bool brute_member(const std::vector<std::vector<long>>& gens, const std::vector<long>& v, long bound) {
  if (gens.empty()) {
    for (long x : v)
      if (x != 0) return false;
    return true;
  }
  std::vector<long> c(gens.size(), -bound);
  while (true) {
    bool ok = true;
    for (std::size_t j = 0; j < v.size() && ok; ++j) {
      long s = 0;
      for (std::size_t i = 0; i < gens.size(); ++i) s += c[i] * gens[i][j];
      ok = s == v[j];
    }
    if (ok) return true;
    std::size_t k = 0;
    while (k < c.size() && c[k] == bound) c[k++] = -bound;
    if (k == c.size()) return false;
    ++c[k];
  }
}

}  // namespace

TEST(Scalar, FieldArithmetic) {
  const Field f = Field::prime(7);
  EXPECT_EQ(Scalar(f, -1L).residue(), 6);
  EXPECT_EQ((Scalar(f, 3L) * Scalar(f, 5L)).residue(), 1);
  EXPECT_EQ(Scalar(f, 3L).inverse().residue(), 5);
  EXPECT_EQ(Scalar::parse(Q, "-6/4").to_string(), "-3/2");
  EXPECT_THROW(Scalar(f, 0L).inverse(), std::domain_error);
  EXPECT_THROW(Field::prime(15), std::invalid_argument);
  EXPECT_THROW(Scalar(Q, 1L) + Scalar(f, 1L), std::invalid_argument);
  EXPECT_EQ(Field::parse("fp:32003"), Field::prime(32003));
  EXPECT_THROW(Field::parse("fp:x"), std::invalid_argument);
}

TEST(Matrix, RankExamples) {
  EXPECT_EQ(rank(Matrix::identity(Q, 2)), 2u);
  EXPECT_EQ(rank(Matrix::zero(Q, 3, 4)), 0u);
  EXPECT_EQ(rank(Matrix::from_ints(Q, {{1, 2}, {2, 4}})), 1u);
}

TEST(Matrix, RankMatchesMinorOracleOn2x2) {
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b)
      for (int c = -2; c <= 2; ++c)
        for (int d = -2; d <= 2; ++d) {
          const std::size_t expect = (a * d - b * c) != 0 ? 2 : (a || b || c || d) ? 1 : 0;
          EXPECT_EQ(rank(Matrix::from_ints(Q, {{a, b}, {c, d}})), expect);
        }
}

TEST(Matrix, KernelExamples) {
  EXPECT_EQ(kernel_basis(Matrix::identity(Q, 3)).cols(), 0u);
  EXPECT_EQ(kernel_basis(Matrix::zero(Q, 2, 2)).cols(), 2u);
  const Matrix m = Matrix::from_ints(Q, {{1, 1}});
  const Matrix k = kernel_basis(m);
  ASSERT_EQ(k.cols(), 1u);
  EXPECT_TRUE((m * k).is_zero());
  EXPECT_EQ(k(0, 0), -k(1, 0));
}

TEST(Matrix, RankNullityOnRandomMatrices) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 5;
    std::vector<std::vector<long>> rows(r, std::vector<long>(c));
    for (auto& row : rows)
      for (auto& x : row) x = static_cast<long>(rng() % 5) - 2;
    for (const Field f : {Q, Field::prime(3)}) {
      const Matrix m = Matrix::from_ints(f, rows);
      const Matrix k = kernel_basis(m);
      EXPECT_EQ(rank(m) + k.cols(), c);
      EXPECT_TRUE((m * k).is_zero());
      EXPECT_EQ(rank(k), k.cols());
    }
  }
}

TEST(Matrix, SolveExamples) {
  const Matrix b = Matrix::from_ints(Q, {{1, 2}, {3, 4}});
  EXPECT_EQ(solve(Matrix::identity(Q, 2), b).value(), b);
  EXPECT_FALSE(solve(Matrix::zero(Q, 2, 2), b).has_value());
  const auto x = solve(Matrix::from_ints(Q, {{2}}), Matrix::from_ints(Q, {{1}}));
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)(0, 0).to_string(), "1/2");
  EXPECT_THROW(solve(Matrix::identity(Q, 2), Matrix::identity(Q, 3)), std::invalid_argument);
}

TEST(Snf, Examples) {
  EXPECT_EQ(snf(IntMatrix::identity(2)).d, IntMatrix::identity(2));
  const IntMatrix m = IntMatrix::from_ints({{2, 4}, {6, 8}});
  const SmithForm s = snf(m);
  EXPECT_EQ(s.d, IntMatrix::from_ints({{2, 0}, {0, 4}}));
  EXPECT_EQ(s.u * m * s.v, s.d);
  EXPECT_EQ(abs(determinant(s.u)), 1);
  EXPECT_EQ(abs(determinant(s.v)), 1);
  EXPECT_TRUE(snf(IntMatrix(2, 3)).d.is_zero());
}

TEST(Snf, RectangularRandom) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 300; ++t) {
    const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<long>(rng() % 11) - 5;
    const SmithForm s = snf(m);
    EXPECT_EQ(s.u * m * s.v, s.d);
    EXPECT_EQ(abs(determinant(s.u)), 1);
    EXPECT_EQ(abs(determinant(s.v)), 1);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (i != j) EXPECT_EQ(s.d(i, j), 0);
    for (std::size_t i = 0; i + 1 < std::min(r, c); ++i) {
      EXPECT_GE(s.d(i, i), 0);
      if (s.d(i, i) == 0)
        EXPECT_EQ(s.d(i + 1, i + 1), 0);
      else
        EXPECT_TRUE(mpz_divisible_p(s.d(i + 1, i + 1).get_mpz_t(), s.d(i, i).get_mpz_t()));
    }
  }
}

TEST(Hnf, CanonicalRegardlessOfGeneratorOrder) {
  const IntLattice a = lat(3, {{2, 4, 1}, {0, 3, 3}, {4, 1, 0}});
  const IntLattice b = lat(3, {{4, 1, 0}, {2, 4, 1}, {0, 3, 3}, {6, 5, 1}});
  EXPECT_EQ(a, b);
  for (std::size_t r = 0; r < a.rank(); ++r) {
    std::size_t c = 0;
    while (a.basis()[r][c] == 0) ++c;
    EXPECT_GT(a.basis()[r][c], 0);
    for (std::size_t above = 0; above < r; ++above) {
      EXPECT_GE(a.basis()[above][c], 0);
      EXPECT_LT(a.basis()[above][c], a.basis()[r][c]);
    }
  }
}

TEST(Hnf, TransformIsUnimodular) {
  const IntMatrix m = IntMatrix::from_ints({{3, 1}, {6, 2}, {1, 7}});
  const HermiteForm h = hnf(m);
  EXPECT_EQ(h.u * m, h.h);
  EXPECT_EQ(abs(determinant(h.u)), 1);
}

TEST(Lattice, SumExamples) {
  const IntLattice l = lat(2, {{1, 2}, {0, 5}});
  EXPECT_EQ(lattice_sum(l, l), l);
  EXPECT_EQ(lattice_sum(l, IntLattice(2)), l);
  const IntLattice s = lattice_sum(lat(2, {{2, 0}}), lat(2, {{0, 3}}));
  EXPECT_EQ(s, lat(2, {{2, 0}, {0, 3}}));
  for (long x = -6; x <= 6; ++x)
    for (long y = -6; y <= 6; ++y)
      EXPECT_EQ(s.contains(make_int_vector({x, y})), x % 2 == 0 && y % 3 == 0);
  EXPECT_THROW(lattice_sum(l, IntLattice(3)), std::invalid_argument);
}

TEST(Lattice, IntersectExamples) {
  const IntLattice l = lat(2, {{1, 2}, {0, 5}});
  EXPECT_EQ(lattice_intersect(l, l), l);
  EXPECT_EQ(lattice_intersect(l, IntLattice::full(2)), l);
  const IntLattice a = lat(2, {{2, 0}, {0, 1}}), b = lat(2, {{1, 0}, {0, 3}});
  const IntLattice i = lattice_intersect(a, b);
  for (long x = -12; x <= 12; ++x)
    for (long y = -12; y <= 12; ++y) {
      const IntVector v = make_int_vector({x, y});
      EXPECT_EQ(i.contains(v), a.contains(v) && b.contains(v));
    }
  EXPECT_EQ(i, lat(2, {{2, 0}, {0, 3}}));
}

TEST(Lattice, ContainsExamples) {
  const IntLattice l = lat(2, {{2, 0}, {0, 1}});
  EXPECT_TRUE(l.contains(make_int_vector({0, 0})));
  EXPECT_FALSE(l.contains(make_int_vector({1, 0})));
  EXPECT_TRUE(lat(2, {{2, 0}, {0, 3}}).contains(make_int_vector({4, 3})));
  EXPECT_THROW(l.contains(make_int_vector({1, 0, 0})), std::invalid_argument);
}

TEST(Lattice, MembershipMatchesEnumeration) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 60; ++t) {
    std::vector<std::vector<long>> gens(1 + rng() % 2, std::vector<long>(2));
    for (auto& g : gens)
      for (auto& x : g) x = static_cast<long>(rng() % 7) - 3;
    const IntLattice l = lat(2, gens);
    for (long x = -4; x <= 4; ++x)
      for (long y = -4; y <= 4; ++y)
        EXPECT_EQ(l.contains(make_int_vector({x, y})), brute_member(gens, {x, y}, 40)) << l.to_string();
  }
}

TEST(Lattice, AlgebraicLaws) {
  std::mt19937_64 rng(9);
  auto random_lattice = [&] {
    std::vector<std::vector<long>> g(rng() % 3, std::vector<long>(3));
    for (auto& v : g)
      for (auto& x : v) x = static_cast<long>(rng() % 9) - 4;
    return lat(3, g);
  };
  for (int t = 0; t < 100; ++t) {
    const IntLattice a = random_lattice(), b = random_lattice(), c = random_lattice();
    EXPECT_EQ(lattice_sum(a, b), lattice_sum(b, a));
    EXPECT_EQ(lattice_intersect(a, b), lattice_intersect(b, a));
    EXPECT_EQ(lattice_sum(lattice_sum(a, b), c), lattice_sum(a, lattice_sum(b, c)));
    EXPECT_EQ(lattice_intersect(lattice_intersect(a, b), c), lattice_intersect(a, lattice_intersect(b, c)));
    const IntLattice s = lattice_sum(a, b), i = lattice_intersect(a, b);
    EXPECT_TRUE(a.contains(i));
    EXPECT_TRUE(s.contains(a));
    EXPECT_TRUE(s.contains(b));
  }
}
