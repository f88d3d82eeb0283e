#include <gtest/gtest.h>

#include "wstruct/complex.hpp"
#include "wstruct/random.hpp"

using namespace wstruct;

namespace {

const CategoryPtr kVect = BaseCategory::vect();
const CategoryPtr kA3 = linear_quiver_category(3);

BaseObject k(int n) { return BaseObject(kVect, {n}); }

// [k^a --d--> k^b] in degrees (lo, lo + 1).
Complex two_term(const BaseMorphism& d, int lo) {
  return Complex::make(d.source().category(), lo, {d.source(), d.target()}, {d});
}

BaseMorphism vect_matrix(int rows, int cols, const std::vector<long>& entries) {
  std::vector<Scalar> c;
  for (long e : entries) c.emplace_back(kVect->field(), e);
  return BaseMorphism::from_coordinates(k(cols), k(rows), c);
}

// Cohomology dimensions over a field: dim ker d^i - rank d^{i-1}.
std::vector<long> cohomology(const Complex& m, int lo, int hi) {
  std::vector<long> out;
  auto rk = [&](int i) -> long {
    const BaseMorphism d = m.diff(i);
    Matrix a(kVect->field(), d.target().size(), d.source().size());
    for (std::size_t r = 0; r < a.rows(); ++r)
      for (std::size_t c = 0; c < a.cols(); ++c) a(r, c) = d.trivial_part(r, c);
    return static_cast<long>(rank(a));
  };
  for (int i = lo; i <= hi; ++i) out.push_back(static_cast<long>(m.term(i).size()) - rk(i) - rk(i - 1));
  return out;
}

std::vector<long> dims(const Complex& m, int lo, int hi) {
  std::vector<long> out;
  for (int i = lo; i <= hi; ++i) out.push_back(static_cast<long>(m.term(i).size()));
  return out;
}

Complex random_small(const CategoryPtr& c, Rng& rng, int lo = -1, int hi = 1) {
  RandomComplexOptions opt;
  opt.min_degree = lo;
  opt.max_degree = hi;
  opt.max_mult = c->backend() == Backend::Vect ? 3 : 1;
  return random_complex(c, rng, opt);
}

Complex recheck(const Complex& m) {
  std::vector<BaseObject> t;
  std::vector<BaseMorphism> d;
  for (int i = m.lo(); i <= m.hi(); ++i) {
    t.push_back(m.term(i));
    if (i < m.hi()) d.push_back(m.diff(i));
  }
  return Complex::make(m.category(), m.lo(), t, d, true);
}

}  // namespace

TEST(Complex, RejectsNonComplex) {
  const BaseMorphism one = vect_matrix(1, 1, {1});
  EXPECT_THROW(Complex::make(kVect, 0, {k(1), k(1), k(1)}, {one, one}), std::invalid_argument);
  EXPECT_THROW(Complex::make(kVect, 0, {k(1), k(2)}, {one}), std::invalid_argument);
}

TEST(Shift, Examples) {
  Rng rng(1);
  const Complex m = random_small(kVect, rng);
  EXPECT_EQ(shift(m, 0), m);
  EXPECT_TRUE(shift(Complex(kVect), 5).is_zero());
  const Complex s = shift(Complex::stalk(k(1), 0), 1);
  EXPECT_EQ(s.lo(), -1);
  EXPECT_EQ(s.hi(), -1);
  for (int t = 0; t < 20; ++t) {
    const Complex x = random_small(kA3, rng);
    EXPECT_EQ(shift(shift(x, 3), -3), x);
    EXPECT_NO_THROW(recheck(shift(x, 1)));
  }
}

TEST(Cone, IdentityIsContractible) {
  Rng rng(2);
  for (const auto& c : {kVect, kA3}) {
    const Complex m = random_small(c, rng);
    const Triangle t = cone(ChainMap::identity(m));
    EXPECT_TRUE(is_contractible(t.cone));
    EXPECT_TRUE(is_chain_map(t.incl));
    EXPECT_TRUE(is_chain_map(t.proj));
  }
}

TEST(Cone, ZeroMapSplits) {
  Rng rng(3);
  for (int t = 0; t < 10; ++t) {
    const Complex m = random_small(kA3, rng), n = random_small(kA3, rng);
    const Triangle tr = cone(ChainMap::zero(m, n));
    EXPECT_EQ(tr.cone, direct_sum(n, shift(m, 1)).sum);
  }
}

TEST(Cone, VectRankCokernelKernel) {
  // rank-r map k^a -> k^b in degree 0: minimal cone has k^{b-r} in degree 0, k^{a-r} in degree -1.
  const BaseMorphism f = vect_matrix(3, 2, {1, 0, 0, 0, 0, 0});
  ChainMap cm(Complex::stalk(k(2), 0), Complex::stalk(k(3), 0));
  cm.set_component(0, f);
  const Complex mm = minimal_complex(cone(cm).cone);
  EXPECT_EQ(mm.term(0).size(), 2u);
  EXPECT_EQ(mm.term(-1).size(), 1u);
  EXPECT_EQ(cohomology(cone(cm).cone, -1, 0), (std::vector<long>{1, 2}));
}

TEST(Cone, DifferentialSquaresToZeroOnRandomMaps) {
  Rng rng(4);
  for (const auto& c : {kVect, kA3})
    for (int t = 0; t < 15; ++t) {
      const Complex m = random_small(c, rng), n = random_small(c, rng);
      const ChainMap f = random_chain_map(m, n, rng);
      ASSERT_TRUE(is_chain_map(f));
      EXPECT_NO_THROW(recheck(cone(f).cone));
      EXPECT_TRUE(is_chain_map(cone(f).incl));
      EXPECT_TRUE(is_chain_map(cone(f).proj));
    }
}

TEST(Cone, RotationIsHomotopyEquivalentToShift) {
  Rng rng(5);
  for (const auto& c : {kVect, kA3})
    for (int t = 0; t < 15; ++t) {
      const Complex m = random_small(c, rng), n = random_small(c, rng);
      const Triangle tr = cone(random_chain_map(m, n, rng));
      const auto phi = map_from_cone(tr.incl, tr.proj);
      ASSERT_TRUE(phi.has_value());
      EXPECT_TRUE(is_chain_map(*phi));
      EXPECT_TRUE(is_homotopy_equiv(*phi));
      EXPECT_TRUE(is_isomorphic(cone(tr.incl).cone, shift(m, 1)));
    }
}

TEST(Cone, ShiftIsoIsAChainIsomorphism) {
  Rng rng(6);
  for (int t = 0; t < 10; ++t) {
    const Complex m = random_small(kA3, rng), n = random_small(kA3, rng);
    const ChainMap f = random_chain_map(m, n, rng);
    for (int s : {-1, 1, 2}) {
      const ChainMap theta = cone_shift_iso(f, s);
      EXPECT_TRUE(is_chain_map(theta));
      EXPECT_TRUE(is_homotopy_equiv(theta));
    }
  }
}

TEST(MinimalModel, Examples) {
  const Complex stalk = Complex::stalk(k(2), 0);
  const MinimalModel mm = minimal_model(stalk);
  EXPECT_EQ(mm.minimal, stalk);
  EXPECT_EQ(mm.to_minimal, ChainMap::identity(stalk));
  EXPECT_TRUE(minimal_model(two_term(vect_matrix(1, 1, {1}), 0)).minimal.is_zero());
  const Complex m = two_term(vect_matrix(2, 2, {1, 2, 2, 4}), 0);
  const Complex r = minimal_model(m).minimal;
  EXPECT_EQ(dims(r, 0, 1), (std::vector<long>{1, 1}));
  EXPECT_TRUE(is_minimal(r));
  EXPECT_EQ(cohomology(m, 0, 1), (std::vector<long>{1, 1}));
}

TEST(MinimalModel, ComparisonMapsOnRandomComplexes) {
  Rng rng(7);
  for (const auto& c : {kVect, kA3})
    for (int t = 0; t < 20; ++t) {
      RandomComplexOptions opt;
      opt.min_degree = -2;
      opt.max_degree = 1;
      opt.max_mult = 2;
      const Complex m = random_complex(c, rng, opt);
      const MinimalModel mm = minimal_model(m);
      EXPECT_TRUE(is_minimal(mm.minimal));
      EXPECT_EQ(mm.minimal, minimal_complex(m));
      EXPECT_TRUE(is_chain_map(mm.to_minimal));
      EXPECT_TRUE(is_chain_map(mm.from_minimal));
      EXPECT_EQ(compose(mm.to_minimal, mm.from_minimal), ChainMap::identity(mm.minimal));
      EXPECT_TRUE(homotopic(compose(mm.from_minimal, mm.to_minimal), ChainMap::identity(m)));
      EXPECT_TRUE(is_homotopy_equiv(mm.to_minimal));
      EXPECT_EQ(minimal_complex(mm.minimal), mm.minimal);
      if (c == kVect) EXPECT_EQ(cohomology(m, -2, 1), dims(mm.minimal, -2, 1));
    }
}

TEST(HomSpace, Examples) {
  const Complex s0 = Complex::stalk(k(1), 0), s1 = Complex::stalk(k(1), 1);
  EXPECT_EQ(hom_space(s0, s0).dimension, 1u);
  EXPECT_EQ(hom_space(s0, s1).dimension, 0u);
  EXPECT_EQ(hom_space(Complex::stalk(k(2), 0), Complex::stalk(k(3), 0)).dimension, 6u);
  Rng rng(8);
  for (int t = 0; t < 10; ++t) {
    const Complex m = minimal_complex(random_small(kA3, rng));
    if (m.is_zero()) continue;
    const HomSpace h = hom_space(m, m);
    EXPECT_GE(h.dimension, 1u);
    EXPECT_EQ(h.basis.size(), h.dimension);
    for (const auto& b : h.basis) EXPECT_TRUE(is_chain_map(b));
  }
}

TEST(HomSpace, HomotopyInvariance) {
  Rng rng(9);
  for (const auto& c : {kVect, kA3})
    for (int t = 0; t < 20; ++t) {
      const Complex m = random_small(c, rng), n = random_small(c, rng);
      const std::size_t d = hom_dim(m, n);
      EXPECT_EQ(hom_space(m, n).dimension, d);
      EXPECT_EQ(hom_dim(minimal_complex(m), n), d);
      EXPECT_EQ(hom_dim(m, minimal_complex(n)), d);
    }
}

TEST(HomSpace, VanishingBoundForDisjointSupports) {
  Rng rng(10);
  for (int t = 0; t < 20; ++t) {
    const Complex m = random_small(kA3, rng), n = random_small(kA3, rng);
    if (m.is_zero() || n.is_zero()) continue;
    const int gap = m.hi() - n.lo() + 1;  // shift so that n[-gap] starts above m
    EXPECT_EQ(hom_dim(m, shift(n, -gap)), 0u);
  }
}

TEST(HomSpace, NullhomotopySolvesEquation) {
  Rng rng(11);
  for (int t = 0; t < 15; ++t) {
    const Complex m = random_small(kA3, rng), n = random_small(kA3, rng);
    // d h + h d is always a nullhomotopic chain map.
    std::vector<Scalar> coords(graded_dimension(m, n, -1));
    for (auto& x : coords) x = Scalar(kA3->field(), rng.uniform(-2, 2));
    const GradedMap h = graded_from_coordinates(m, n, -1, coords);
    const ChainMap f = commutator(h);
    ASSERT_TRUE(is_chain_map(f));
    const auto h2 = nullhomotopy(f);
    ASSERT_TRUE(h2.has_value());
    EXPECT_EQ(commutator(*h2), f);
  }
}

TEST(HomotopyEquiv, Examples) {
  Rng rng(12);
  const Complex m = minimal_complex(random_small(kA3, rng));
  EXPECT_TRUE(is_homotopy_equiv(ChainMap::identity(m)));
  const Complex s = Complex::stalk(BaseObject::indecomposable(kA3, 0), 0);
  EXPECT_FALSE(is_homotopy_equiv(ChainMap::zero(s, s)));
}

TEST(Solvers, SectionAndRetractionOfSplitMaps) {
  Rng rng(13);
  for (int t = 0; t < 10; ++t) {
    const Complex a = random_small(kA3, rng), b = random_small(kA3, rng);
    const DirectSum ds = direct_sum(a, b);
    const auto s = find_section(ds.pr1);
    ASSERT_TRUE(s.has_value());
    EXPECT_TRUE(homotopic(compose(ds.pr1, *s), ChainMap::identity(a)));
    const auto r = find_retraction(ds.in2);
    ASSERT_TRUE(r.has_value());
    EXPECT_TRUE(homotopic(compose(*r, ds.in2), ChainMap::identity(b)));
  }
  const Complex s = Complex::stalk(BaseObject::indecomposable(kA3, 0), 0);
  EXPECT_FALSE(find_section(ChainMap::zero(s, s)).has_value());
}

TEST(Summands, Examples) {
  const Complex p1 = Complex::stalk(BaseObject::indecomposable(kA3, 0), 0);
  EXPECT_EQ(summand_decompose(p1).size(), 1u);
  const Complex two = direct_sum(p1, p1).sum;
  const auto parts = summand_decompose(two);
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_TRUE(is_isomorphic(parts[0], p1));
  EXPECT_TRUE(is_isomorphic(parts[1], p1));
  // Vect: one stalk per unit of dimension per degree.
  const Complex v = Complex::make(kVect, -1, {k(2), k(0), k(3)}, {vect_matrix(0, 2, {}), vect_matrix(3, 0, {})});
  EXPECT_EQ(summand_decompose(v).size(), 5u);
}

TEST(Summands, IndecomposableTwoTermComplex) {
  // P3 -> P1 along the length-two path: a projective resolution of a module, indecomposable.
  const Quiver& q = kA3->quiver();
  const BaseObject p1 = BaseObject::indecomposable(kA3, 0), p3 = BaseObject::indecomposable(kA3, 2);
  BaseMorphism d(p3, p1);
  d.coef(0, 0, q.paths_between(0, 2)[0]) = Scalar::one(kA3->field());
  const Complex m = two_term(d, 0);
  EXPECT_EQ(summand_decompose(m).size(), 1u);
  const Complex mm = direct_sum(m, direct_sum(m, Complex::stalk(p1, 1)).sum).sum;
  EXPECT_EQ(summand_decompose(mm).size(), 3u);
}

TEST(Summands, KrullSchmidtOnRandomSums) {
  Rng rng(14);
  for (int t = 0; t < 15; ++t) {
    const Complex m = random_small(kA3, rng), n = random_small(kA3, rng);
    const auto dm = summand_decompose(m), dn = summand_decompose(n);
    auto both = dm;
    both.insert(both.end(), dn.begin(), dn.end());
    const auto ds = summand_decompose(direct_sum(m, n).sum);
    EXPECT_TRUE(same_summands(ds, both));
    for (const auto& s : ds) EXPECT_EQ(summand_decompose(s).size(), 1u);
    EXPECT_TRUE(is_isomorphic(direct_sum_all(kA3, ds), m.is_zero() && n.is_zero() ? Complex(kA3) : direct_sum(m, n).sum));
  }
}

TEST(Retract, Examples) {
  Rng rng(15);
  const Complex m = random_small(kA3, rng), n = random_small(kA3, rng);
  EXPECT_TRUE(is_retract_tri(m, direct_sum(m, n).sum));
  EXPECT_TRUE(is_retract_tri(Complex(kA3), m));
  const Complex p = Complex::stalk(BaseObject::indecomposable(kA3, 1), 0);
  EXPECT_FALSE(is_retract_tri(shift(p, 1), p));
  EXPECT_FALSE(is_retract_tri(Complex::stalk(BaseObject(kA3, {0, 2, 0}), 0), p));
}

TEST(Dualize, Examples) {
  EXPECT_TRUE(dualize(Complex(kVect)).is_zero());
  const Complex d = dualize(Complex::stalk(k(1), 3));
  EXPECT_EQ(d.lo(), -3);
  const Complex m = Complex::make(kVect, 0, {k(2), k(5)}, {BaseMorphism::zero(k(2), k(5))});
  const Complex dm = dualize(m);
  EXPECT_EQ(dims(dm, -1, 0), (std::vector<long>{5, 2}));
  Rng rng(16);
  for (int t = 0; t < 10; ++t) {
    const Complex x = random_small(kVect, rng);
    EXPECT_NO_THROW(recheck(dualize(x)));
    EXPECT_TRUE(is_isomorphic(dualize(dualize(x)), x));
  }
  EXPECT_THROW(dualize(Complex::stalk(BaseObject::indecomposable(kA3, 0), 0)), std::invalid_argument);
}

TEST(Summands, NonSplitEndomorphismFieldIsLocal) {
  // Kronecker quiver over F_11: P_y^2 -> P_x^2 given by a*I + b*C, with C the companion
  // matrix of t^2 + 1 (irreducible mod 11), has endomorphism algebra F_121: indecomposable.
  const Field f3 = Field::prime(11);
  const auto kr = BaseCategory::quiver(Quiver::make({"x", "y"}, {{0, 1}, {0, 1}}), f3);
  const Quiver& q = kr->quiver();
  const int a = q.paths_between(0, 1)[0], b = q.paths_between(0, 1)[1];
  const BaseObject px(kr, {2, 0}), py(kr, {0, 2});
  BaseMorphism d(py, px);
  // entries: d = a * I + b * C with C = [[0, -1], [1, 0]]
  d.coef(0, 0, a) = Scalar::one(f3);
  d.coef(1, 1, a) = Scalar::one(f3);
  d.coef(0, 1, b) = Scalar(f3, -1L);
  d.coef(1, 0, b) = Scalar::one(f3);
  const Complex m = two_term(d, 0);
  EXPECT_EQ(summand_decompose(m).size(), 1u);
  EXPECT_EQ(summand_decompose(direct_sum(m, m).sum).size(), 2u);
}

// Flipping the sign of the A-part of the cone differential must be caught.
TEST(Mutation, FlippedConeSignIsDetected) {
  Rng rng(91);
  int caught = 0, nontrivial = 0;
  for (int t = 0; t < 20; ++t) {
    const Complex a = random_complex(kVect, rng), b = random_complex(kVect, rng);
    const ChainMap f = random_chain_map(a, b, rng);
    const Triangle tr = cone(f);
    const Complex& c = tr.cone;
    // With d_A = 0 the flipped sign is just another valid convention.
    if (GradedMap::differential(a).is_zero()) continue;
    ++nontrivial;
    std::vector<BaseObject> terms;
    std::vector<BaseMorphism> diffs;
    for (int i = c.lo(); i <= c.hi(); ++i) {
      terms.push_back(c.term(i));
      if (i == c.hi()) continue;
      BaseMorphism d = c.diff(i);
      const auto rows = cone_a_indices(f, i + 1), cols = cone_a_indices(f, i);
      if (!rows.empty() && !cols.empty()) d.place(rows, cols, -d.submorphism(rows, cols));
      diffs.push_back(d);
    }
    try {
      const Complex bad = Complex::make(kVect, c.lo(), terms, diffs);
      // d^2 = 0 can survive; the triangle maps cannot both stay chain maps.
      GradedMap incl(b, bad), proj(bad, shift(a, 1));
      for (int i = bad.lo(); i <= bad.hi(); ++i) {
        incl.set_component(i, tr.incl.component(i));
        proj.set_component(i, tr.proj.component(i));
      }
      if (!is_chain_map(incl) || !is_chain_map(proj)) ++caught;
    } catch (const std::invalid_argument&) {
      ++caught;
    }
  }
  EXPECT_GT(nontrivial, 0);
  EXPECT_EQ(caught, nontrivial);
}
