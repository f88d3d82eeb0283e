#include <gtest/gtest.h>

#include "wstruct/random.hpp"
#include "wstruct/weight.hpp"

using namespace wstruct;

namespace {

const CategoryPtr kVect = BaseCategory::vect();
const CategoryPtr kA3 = linear_quiver_category(3);

BaseObject k(int n) { return BaseObject(kVect, {n}); }

Complex stalk(const CategoryPtr& c, int v, int degree) {
  std::vector<int> m(c->vertex_count(), 0);
  m[v] = 1;
  return Complex::stalk(BaseObject(c, m), degree);
}

std::vector<Complex> degree_zero_generators(const CategoryPtr& c) {
  std::vector<Complex> g;
  for (int v = 0; v < static_cast<int>(c->vertex_count()); ++v) g.push_back(stalk(c, v, 0));
  return g;
}

Complex random_small(const CategoryPtr& c, Rng& rng, int lo = -1, int hi = 1) {
  RandomComplexOptions opt;
  opt.min_degree = lo;
  opt.max_degree = hi;
  opt.max_mult = c->backend() == Backend::Vect ? 2 : 1;
  return random_complex(c, rng, opt);
}

// Over a field the minimal model is the cohomology, so its support is read off ranks.
std::optional<std::pair<int, int>> cohomology_support(const Complex& m) {
  auto rk = [&](int i) -> long {
    const BaseMorphism d = m.diff(i);
    Matrix a(m.field(), d.target().size(), d.source().size());
    for (std::size_t r = 0; r < a.rows(); ++r)
      for (std::size_t c = 0; c < a.cols(); ++c) a(r, c) = d.trivial_part(r, c);
    return static_cast<long>(rank(a));
  };
  std::optional<std::pair<int, int>> out;
  for (int i = m.lo(); i <= m.hi(); ++i) {
    if (static_cast<long>(m.term(i).size()) - rk(i) - rk(i - 1) == 0) continue;
    if (!out) out = std::make_pair(i, i);
    out->second = i;
  }
  return out;
}

Complex contractible_vect(int lo) {
  const BaseMorphism id = BaseMorphism::identity(k(1));
  return Complex::make(kVect, lo, {k(1), k(1)}, {id});
}

}  // namespace

TEST(StupidMembership, Examples) {
  const Complex zero(kVect);
  EXPECT_TRUE(stupid_membership(zero, Side::Le));
  EXPECT_TRUE(stupid_membership(zero, Side::Ge));
  const Complex one = Complex::stalk(k(1), 0);
  EXPECT_TRUE(stupid_membership(one, Side::Le));
  EXPECT_TRUE(stupid_membership(one, Side::Ge));
  const Complex junk = contractible_vect(-3);
  EXPECT_TRUE(stupid_membership(junk, Side::Le));
  EXPECT_TRUE(stupid_membership(junk, Side::Ge));
  // Degree 5 means weight -5.
  const WeightSpec w = WeightSpec::stupid(kVect);
  const Complex five = Complex::stalk(k(1), 5);
  EXPECT_TRUE(w.member(five, Side::Le, -5));
  EXPECT_FALSE(w.member(five, Side::Le, -6));
  EXPECT_TRUE(w.member(five, Side::Ge, -5));
  EXPECT_FALSE(w.member(five, Side::Ge, -4));
}

TEST(StupidMembership, AgreesWithCohomologyOnVect) {
  Rng rng(101);
  for (int t = 0; t < 60; ++t) {
    const Complex m = random_small(kVect, rng, -2, 2);
    const auto sup = cohomology_support(m);
    EXPECT_EQ(stupid_membership(m, Side::Le), !sup || sup->first >= 0) << m.to_string();
    EXPECT_EQ(stupid_membership(m, Side::Ge), !sup || sup->second <= 0) << m.to_string();
  }
}

TEST(StupidDecomposition, Examples) {
  const WeightSpec w = WeightSpec::stupid(kVect);
  const Complex low = Complex::stalk(k(2), 1);  // weight -1
  const WeightDecomposition a = stupid_decomposition(low, 0);
  EXPECT_TRUE(is_isomorphic(a.low(), low));
  EXPECT_TRUE(is_contractible(a.high));
  EXPECT_EQ(verify_decomposition(w, a), "");
  const Complex high = Complex::stalk(k(2), -1);  // weight 1
  const WeightDecomposition b = stupid_decomposition(high, 0);
  EXPECT_TRUE(b.low().is_zero());
  EXPECT_TRUE(is_isomorphic(b.high, high));
  // dims 1 in degrees -1 and 0, zero differential.
  const Complex two = Complex::make(kVect, -1, {k(1), k(1)}, {BaseMorphism::zero(k(1), k(1))});
  const WeightDecomposition c = stupid_decomposition(two, 0);
  EXPECT_TRUE(is_isomorphic(c.low(), Complex::stalk(k(1), 0)));
  EXPECT_TRUE(is_isomorphic(c.high, Complex::stalk(k(1), -1)));
  EXPECT_EQ(verify_decomposition(w, c), "");
}

TEST(StupidDecomposition, VerifiesOnRandomComplexesAndIndices) {
  Rng rng(5);
  for (const auto& cat : {kVect, kA3}) {
    const WeightSpec w = WeightSpec::stupid(cat);
    for (int t = 0; t < 25; ++t) {
      const Complex m = random_small(cat, rng, -2, 2);
      for (int idx = -3; idx <= 3; ++idx) EXPECT_EQ(verify_decomposition(w, stupid_decomposition(m, idx)), "");
    }
  }
}

TEST(VerifyDecomposition, RejectsWrongClaims) {
  const WeightSpec w = WeightSpec::stupid(kVect);
  const Complex m = Complex::stalk(k(1), -1);  // weight 1
  // X = M claimed in w≤0 fails.
  EXPECT_NE(verify_decomposition(w, make_decomposition(0, ChainMap::identity(m))), "");
}

TEST(CheckAxioms, StupidHasNoViolations) {
  Rng rng(77);
  for (const auto& cat : {kVect, kA3}) {
    std::vector<Complex> samples;
    for (int t = 0; t < 12; ++t) samples.push_back(random_small(cat, rng));
    samples.push_back(Complex(cat));
    const AxiomReport r = check_axioms(WeightSpec::stupid(cat), samples);
    EXPECT_TRUE(r.ok()) << r.violations.front().axiom << ": " << r.violations.front().detail;
  }
  EXPECT_TRUE(check_axioms(WeightSpec::stupid(kVect), {}).violations.empty());
}

TEST(CheckAxioms, CorruptedSpecReportsOrthogonality) {
  const WeightSpec bad = WeightSpec::custom(
      "all-le", kVect, [](const Complex&) { return true; },
      [](const Complex& m) { return stupid_membership(m, Side::Ge); }, stupid_decomposition);
  const Complex m = Complex::stalk(k(1), 0);
  const AxiomReport r = check_axioms(bad, {m, shift(m, 1)});
  bool found = false;
  for (const auto& v : r.violations)
    if (v.axiom == "orthogonality") {
      found = true;
      ASSERT_TRUE(v.other.has_value());
      EXPECT_NE(hom_dim(shift(m, 1), shift(m, 1)), 0u);
    }
  EXPECT_TRUE(found);
}

TEST(Negativity, Examples) {
  EXPECT_TRUE(negativity_check(degree_zero_generators(kVect)).negative);
  EXPECT_TRUE(negativity_check(degree_zero_generators(kA3)).negative);
  EXPECT_TRUE(negativity_check({}).negative);
  const Complex m = Complex::stalk(k(1), 0);
  const NegativityResult r = negativity_check({m, shift(m, 1)});
  EXPECT_FALSE(r.negative);
  ASSERT_TRUE(r.pair.has_value());
  EXPECT_EQ(r.pair->first, 1u);
  EXPECT_EQ(r.pair->second, 0u);
  EXPECT_EQ(r.shift, 1);
  EXPECT_THROW(WeightSpec::generated(kVect, {m, shift(m, 1)}), std::invalid_argument);
}

TEST(Negativity, TwoTermGeneratorIsNegative) {
  // P_3 -> P_2 over A3 in degrees 0, 1: Hom to positive shifts vanishes.
  const auto q = kA3->quiver();
  const BaseObject p2(kA3, {0, 1, 0}), p3(kA3, {0, 0, 1});
  BaseMorphism a(p3, p2);
  a.coef(0, 0, q.paths_between(1, 2)[0]) = Scalar::one(kA3->field());
  const Complex b = Complex::make(kA3, 0, {p3, p2}, {a});
  const NegativityResult r = negativity_check({b});
  EXPECT_EQ(r.i_max, 1);
  EXPECT_EQ(r.negative, hom_dim(b, shift(b, 1)) == 0);
}

TEST(Generated, AgreesWithStupidOnRandomSamples) {
  Rng rng(33);
  for (const auto& cat : {kVect, kA3}) {
    const WeightSpec gen = WeightSpec::generated(cat, degree_zero_generators(cat));
    for (int t = 0; t < 15; ++t) {
      const Complex m = random_small(cat, rng);
      for (Side s : {Side::Le, Side::Ge})
        EXPECT_EQ(gen.member(m, s), stupid_membership(m, s)) << m.to_string() << " " << side_name(s);
    }
  }
}

TEST(Generated, GeneratorsInHeartAndShiftsNot) {
  const auto gens = degree_zero_generators(kA3);
  const WeightSpec w = WeightSpec::generated(kA3, gens);
  for (const auto& b : gens) {
    EXPECT_TRUE(w.in_heart(b));
    // b[1] has weight 1 and b[-1] weight -1.
    EXPECT_TRUE(w.member(shift(b, 1), Side::Ge));
    EXPECT_FALSE(w.member(shift(b, 1), Side::Le));
    EXPECT_FALSE(w.member(shift(b, -1), Side::Ge));
    EXPECT_TRUE(w.member(shift(b, -1), Side::Le));
  }
}

TEST(Generated, DecompositionsVerify) {
  Rng rng(8);
  const WeightSpec w = WeightSpec::generated(kA3, degree_zero_generators(kA3));
  for (int t = 0; t < 8; ++t) {
    const Complex m = random_small(kA3, rng);
    if (m.is_zero()) continue;
    for (int idx = -1; idx <= 1; ++idx) EXPECT_EQ(verify_decomposition(w, w.decompose(m, idx)), "");
  }
}

TEST(Heart, Examples) {
  const auto gens = degree_zero_generators(kA3);
  const WeightSpec w = WeightSpec::generated(kA3, gens);
  const Complex sum = direct_sum(gens[0], gens[2]).sum;
  const HeartReport r = heart_of(w, {gens[1], gens[2], sum, shift(gens[0], 1)});
  EXPECT_EQ(r.in_heart, 3u);
  EXPECT_EQ(r.confirmed, 3u);
  EXPECT_TRUE(r.ok());
}

TEST(Heart, RandomHeartSamplesAreRetractsOfGenerators) {
  Rng rng(61);
  const WeightSpec w = WeightSpec::generated(kA3, degree_zero_generators(kA3));
  std::vector<Complex> samples;
  for (int t = 0; t < 10; ++t) {
    // Degree-0 stalk plus contractible padding.
    const Complex base = Complex::stalk(random_object(kA3, rng, 2), 0);
    const BaseObject junk = random_object(kA3, rng, 1);
    const Complex pad = cone(ChainMap::identity(Complex::stalk(junk, 0))).cone;
    samples.push_back(direct_sum(base, pad).sum);
  }
  const HeartReport r = heart_of(w, samples);
  EXPECT_EQ(r.in_heart, samples.size());
  EXPECT_TRUE(r.ok());
}

TEST(Combine, DegenerateCases) {
  const WeightSpec w = WeightSpec::stupid(kVect);
  const Complex m = Complex::make(kVect, -1, {k(1), k(1)}, {BaseMorphism::zero(k(1), k(1))});
  const Complex zero(kVect);
  const WeightDecomposition dm = stupid_decomposition(m, 0), dz = stupid_decomposition(zero, 0);
  // N = 0: Cone(M[-1] -> 0) is M itself.
  const WeightDecomposition a = combine_decompositions(ChainMap(shift(m, -1), zero), dz, dm);
  EXPECT_EQ(a.object(), m);
  EXPECT_EQ(verify_decomposition(w, a), "");
  EXPECT_TRUE(is_isomorphic(a.low(), dm.low()));
  // M = 0.
  const WeightDecomposition b = combine_decompositions(ChainMap(zero, m), dm, dz);
  EXPECT_EQ(b.object(), m);
  EXPECT_TRUE(is_isomorphic(b.low(), dm.low()));
  EXPECT_TRUE(is_isomorphic(b.high, dm.high));
}

TEST(Combine, ZeroGluingSplits) {
  Rng rng(19);
  const WeightSpec w = WeightSpec::stupid(kA3);
  for (int t = 0; t < 10; ++t) {
    const Complex n = random_small(kA3, rng), m = random_small(kA3, rng);
    const WeightDecomposition dn = stupid_decomposition(n, 0), dm = stupid_decomposition(m, 0);
    const WeightDecomposition e = combine_decompositions(ChainMap(shift(m, -1), n), dn, dm);
    EXPECT_EQ(verify_decomposition(w, e), "");
    EXPECT_TRUE(is_isomorphic(e.low(), direct_sum(dn.low(), dm.low()).sum));
    EXPECT_TRUE(is_isomorphic(e.high, direct_sum(dn.high, dm.high).sum));
  }
}

TEST(Combine, RandomExtensionsVerify) {
  Rng rng(23);
  for (const auto& cat : {kVect, kA3}) {
    const WeightSpec w = WeightSpec::stupid(cat);
    for (int t = 0; t < 15; ++t) {
      const Complex n = random_small(cat, rng), m = random_small(cat, rng);
      const ChainMap g = random_chain_map(shift(m, -1), n, rng);
      const int idx = static_cast<int>(rng.uniform(-1, 1));
      const WeightDecomposition e = combine_decompositions(g, stupid_decomposition(n, idx), stupid_decomposition(m, idx));
      EXPECT_EQ(e.object(), cone(g).cone);
      EXPECT_EQ(verify_decomposition(w, e), "");
    }
  }
}

TEST(Combine, InconsistentInputsThrow) {
  // A fake decomposition of N with X = N[1] (not in w≤0) breaks the lift.
  const Complex n = Complex::stalk(k(1), 0);
  const Complex m = Complex::stalk(k(1), -1);
  const WeightDecomposition dn = make_decomposition(0, ChainMap(Complex(kVect), n));
  const WeightDecomposition dm = make_decomposition(0, ChainMap::identity(m));
  const ChainMap g = ChainMap::identity(n);  // M[-1] = n
  EXPECT_THROW(combine_decompositions(g, dn, dm), std::runtime_error);
}

TEST(RetractTower, Examples) {
  const Complex m = Complex::make(kVect, 0, {k(2), k(1)}, {BaseMorphism::zero(k(2), k(1))});
  const ChainMap id = ChainMap::identity(m);
  EXPECT_TRUE(retract_tower(id, id, 0).empty());
  const auto t = retract_tower(id, id, 1);
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(verify_split_triangle(t[0], Complex(kVect)), "");
  EXPECT_EQ(verify_split_triangle(t[1], shift(m, 2)), "");
  EXPECT_THROW(retract_tower(id, ChainMap(m, m), 1), std::invalid_argument);
}

TEST(RetractTower, ProperSummandsRecompose) {
  Rng rng(44);
  for (int t = 0; t < 6; ++t) {
    const Complex n = random_small(kA3, rng), p = random_small(kA3, rng);
    const auto [r, s] = random_retraction(n, p, rng);
    const Splitting sp = make_splitting(r, s);
    EXPECT_TRUE(is_isomorphic(sp.p, p));
    const auto tri = retract_tower(r, s, 2);
    ASSERT_EQ(tri.size(), 4u);
    for (int j = 0; j < 2; ++j) {
      EXPECT_EQ(verify_split_triangle(tri[2 * j], shift(p, 2 * j + 1)), "");
      EXPECT_EQ(verify_split_triangle(tri[2 * j + 1], shift(n, 2 * j + 2)), "");
    }
    // Re-composing: N ≃ Cone(p_in) and the retract is recovered.
    const auto phi = map_from_cone(sp.p_in, sp.r);
    ASSERT_TRUE(phi.has_value());
    EXPECT_TRUE(is_homotopy_equiv(*phi));
  }
}

TEST(DecomposePresented, LeafShiftAndExtend) {
  const auto gens = degree_zero_generators(kA3);
  const CertPtr g = cert_generator(gens[0]);
  const WeightDecomposition a = decompose_presented(*g, 0);
  EXPECT_EQ(a.low(), gens[0]);
  const CertPtr s = cert_shift(g, 2);
  const WeightDecomposition b = decompose_presented(*s, 0);
  EXPECT_EQ(b.m, 0);
  EXPECT_TRUE(b.low().is_zero());  // shift by 2 has weight 2
  EXPECT_EQ(decompose_presented(*s, 2).low(), shift(gens[0], 2));
  const CertPtr h = cert_generator(gens[1]);
  const CertPtr e = cert_extend(g, h, ChainMap(shift(gens[1], -1), gens[0]));
  const WeightDecomposition c = decompose_presented(*e, 0);
  EXPECT_TRUE(is_isomorphic(c.low(), direct_sum(gens[0], gens[1]).sum));
  EXPECT_EQ(certified_lower_weight(*s), 2);
}

TEST(DecomposePresented, RetractTowerNodesVerify) {
  Rng rng(90);
  const auto gens = degree_zero_generators(kA3);
  const WeightSpec w = WeightSpec::generated(kA3, gens);
  for (int t = 0; t < 4; ++t) {
    const Complex n = random_small(kA3, rng, 0, 1), p = random_small(kA3, rng, 0, 1);
    const auto [r, s] = random_retraction(n, p, rng);
    const CertPtr mc = w.certify(r.source());
    for (int idx = -1; idx <= 1; ++idx) {
      const CertPtr c = cert_retract(mc, r, s);
      const WeightDecomposition d = decompose_presented(*c, idx);
      EXPECT_EQ(d.object(), n);
      EXPECT_EQ(verify_decomposition(w, d), "");
    }
    const WeightDecomposition forced = decompose_presented(*cert_retract(mc, r, s, 3), 0);
    EXPECT_EQ(verify_decomposition(w, forced), "");
  }
}

TEST(Properties, OrthogonalCharacterization) {
  Rng rng(12);
  const WeightSpec w = WeightSpec::stupid(kVect);
  for (int t = 0; t < 30; ++t) {
    const Complex m = random_small(kVect, rng, -2, 2);
    const auto sup = minimal_support(m);
    if (!w.member(m, Side::Ge)) {
      // Witness X = stalk at the top cohomological degree, which is > 0.
      const Complex x = Complex::stalk(k(1), sup->second);
      EXPECT_TRUE(w.member(x, Side::Le, -1));
      EXPECT_NE(hom_dim(x, m), 0u);
    } else {
      for (int d = 1; d <= 3; ++d) EXPECT_EQ(hom_dim(Complex::stalk(k(1), d), m), 0u);
    }
  }
}

TEST(Properties, ExtensionClosedness) {
  Rng rng(13);
  const WeightSpec w = WeightSpec::stupid(kA3);
  for (int t = 0; t < 20; ++t) {
    const Complex a = random_small(kA3, rng, 0, 2), b = random_small(kA3, rng, 0, 2);
    // Cone(g: a[-1] -> b) is an extension of a by b; both in w≤0.
    const ChainMap g = random_chain_map(shift(a, -1), b, rng);
    EXPECT_TRUE(w.member(cone(g).cone, Side::Le));
    const Complex c = random_small(kA3, rng, -2, 0), d = random_small(kA3, rng, -2, 0);
    const ChainMap h = random_chain_map(shift(c, -1), d, rng);
    EXPECT_TRUE(w.member(cone(h).cone, Side::Ge));
  }
}

TEST(Properties, DualitySwapsSides) {
  Rng rng(14);
  for (int t = 0; t < 30; ++t) {
    const Complex m = random_small(kVect, rng, -2, 2);
    const Complex d = dualize(m);
    EXPECT_EQ(stupid_membership(m, Side::Le), stupid_membership(d, Side::Ge));
    EXPECT_EQ(stupid_membership(m, Side::Ge), stupid_membership(d, Side::Le));
  }
}

TEST(Properties, HeartGenerationByTowers) {
  // Stupid filtrations have subquotients in shifted hearts.
  Rng rng(15);
  const WeightSpec w = WeightSpec::stupid(kA3);
  for (int t = 0; t < 10; ++t) {
    const Complex m = random_small(kA3, rng);
    for (int i = m.lo(); i <= m.hi(); ++i) {
      const Complex piece = Complex::stalk(m.term(i), i);
      EXPECT_TRUE(w.member(piece, Side::Le, -i) && w.member(piece, Side::Ge, -i));
    }
  }
}

TEST(Boundedness, StupidIndices) {
  const Complex m = Complex::make(kVect, -1, {k(1), k(0), k(1)}, {BaseMorphism::zero(k(1), k(0)), BaseMorphism::zero(k(0), k(1))});
  const Boundedness b = boundedness(m);
  EXPECT_TRUE(b.above && b.below);
  EXPECT_EQ(b.above_index, 1);
  EXPECT_EQ(b.below_index, -1);
  const WeightSpec w = WeightSpec::stupid(kVect);
  EXPECT_TRUE(w.member(m, Side::Le, b.above_index));
  EXPECT_FALSE(w.member(m, Side::Le, b.above_index - 1));
  EXPECT_TRUE(w.member(m, Side::Ge, b.below_index));
  EXPECT_FALSE(w.member(m, Side::Ge, b.below_index + 1));
}
