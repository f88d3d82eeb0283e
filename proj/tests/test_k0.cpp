#include <gtest/gtest.h>

#include "wstruct/k0.hpp"
#include "wstruct/random.hpp"

using namespace wstruct;

namespace {

RationalVector rv(std::initializer_list<mpq_class> xs) { return RationalVector(xs); }

mpq_class half(long n) { return mpq_class(n, 2); }

// Every vector of (1/den)Z^2 with numerators in [-r, r].
std::vector<RationalVector> grid(long den, long r) {
  std::vector<RationalVector> out;
  for (long a = -r; a <= r; ++a)
    for (long b = -r; b <= r; ++b) {
      mpq_class x(a, den), y(b, den);
      x.canonicalize();
      y.canonicalize();
      out.push_back({x, y});
    }
  return out;
}

bool is_int(const mpq_class& q) { return mpq_class(q).get_den() == 1; }

}  // namespace

TEST(ScaledLattice, BasicsAndCanonicalForm) {
  const ScaledLattice z = ScaledLattice::full(2, 1);
  EXPECT_EQ(z.rank(), 2u);
  EXPECT_TRUE(z.contains(rv({1, -3})));
  EXPECT_FALSE(z.contains(rv({half(1), 0})));
  EXPECT_THROW(ScaledLattice(0, IntLattice(2)), std::invalid_argument);
  EXPECT_THROW(z.contains(rv({1})), std::invalid_argument);
  // Same subgroup over different denominators.
  EXPECT_EQ(z, z.rescaled(6));
  EXPECT_EQ(z.rescaled(6).reduced().denominator(), 1);
  const ScaledLattice g = ScaledLattice::from_generators(2, {rv({half(1), half(1)}), rv({1, 0})});
  EXPECT_EQ(g.denominator(), 2);
  EXPECT_EQ(g, ScaledLattice::from_generators(2, {rv({1, 0}), rv({half(3), half(-1)}), rv({half(1), half(1)})}));
  EXPECT_THROW(z.rescaled(0), std::invalid_argument);
}

TEST(ScaledLattice, SumAndIntersectAgainstMembership) {
  const ScaledLattice a = ScaledLattice::from_generators(2, {rv({half(1), 0}), rv({0, 2})});
  const ScaledLattice b = ScaledLattice::from_generators(2, {rv({mpq_class(1, 3), mpq_class(1, 3)})});
  const ScaledLattice s = scaled_sum(a, b), i = scaled_intersect(a, b);
  for (const RationalVector& v : grid(6, 12)) {
    const bool in_a = is_int(v[0] * 2) && is_int(v[1] / 2);
    const bool in_b = is_int(v[0] * 3) && v[0] == v[1];
    EXPECT_EQ(a.contains(v), in_a);
    EXPECT_EQ(b.contains(v), in_b);
    EXPECT_EQ(i.contains(v), in_a && in_b);
    if (in_a || in_b) EXPECT_TRUE(s.contains(v));
  }
  // Sum membership: v = x + t(1/3,1/3) with x in a, t in Z, |t| small suffices on this grid.
  for (const RationalVector& v : grid(6, 12)) {
    bool oracle = false;
    for (long t = -20; t <= 20 && !oracle; ++t) {
      mpq_class c(t, 3);
      c.canonicalize();
      oracle = is_int((v[0] - c) * 2) && is_int((v[1] - c) / 2);
    }
    EXPECT_EQ(s.contains(v), oracle) << rational_vector_string(v);
  }
}

TEST(InvariantImage, Examples) {
  const InvariantAssignment inv = InvariantAssignment::slope_pair();
  EXPECT_TRUE(invariant_image({}, inv).lattice().is_zero());
  const ScaledLattice c = invariant_image({slope_object_with(1, 0), slope_object_with(0, 1), slope_object_with(2, -3)}, inv);
  EXPECT_EQ(c, ScaledLattice::full(2, 1));
  EXPECT_EQ(c.denominator(), 1);
  const ScaledLattice cp = invariant_image(
      {slope_object_with(1, 1), slope_object_with(half(1), half(1)), slope_object_with(1, 0)}, inv);
  for (const RationalVector& v : grid(2, 8)) EXPECT_EQ(cp.contains(v), is_int(v[1] - v[0])) << rational_vector_string(v);
  EXPECT_FALSE(cp.contains(rv({mpq_class(1, 3), mpq_class(1, 3)})));
}

TEST(InvariantImage, SourceMismatch) {
  const CategoryPtr vect = BaseCategory::vect();
  const InvariantAssignment slope = InvariantAssignment::slope_pair();
  const InvariantAssignment euler = InvariantAssignment::euler_characteristic(vect);
  Rng rng(1);
  const Complex m = random_complex(vect, rng);
  EXPECT_THROW(slope(m), std::invalid_argument);
  EXPECT_THROW(euler(slope_object_with(1, 0)), std::invalid_argument);
  EXPECT_THROW(invariant_image({m}, slope), std::invalid_argument);
}

TEST(Invariants, SlopePairAdditiveOnTriangles) {
  const InvariantAssignment inv = InvariantAssignment::slope_pair();
  Rng rng(2);
  for (int t = 0; t < 500; ++t) {
    const SlopeObject a = random_slope_object(rng), b = random_slope_object(rng);
    // a -> b -> cone -> a[1]: v(b) = v(a) + v(cone).
    const SlopeObject c = cone_profile(random_rank_profile(a, b, rng));
    const RationalVector va = inv(a), vb = inv(b), vc = inv(c);
    EXPECT_EQ(vb[0], va[0] + vc[0]);
    EXPECT_EQ(vb[1], va[1] + vc[1]);
    const RationalVector vs = inv(shift_slope(a, 1));
    EXPECT_EQ(vs[0], -va[0]);
    EXPECT_EQ(vs[1], -va[1]);
  }
}

TEST(Invariants, EulerCharacteristicAdditiveOnTriangles) {
  const CategoryPtr a3 = linear_quiver_category(3);
  const InvariantAssignment inv = InvariantAssignment::euler_characteristic(a3);
  EXPECT_EQ(inv.rank(), 3u);
  Rng rng(3);
  for (int t = 0; t < 60; ++t) {
    const Complex x = random_complex(a3, rng), y = random_complex(a3, rng);
    const Triangle tr = cone(random_chain_map(x, y, rng));
    const RationalVector vx = inv(x), vy = inv(y), vc = inv(tr.cone), vs = inv(shift(x, 1));
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_EQ(vy[i], vx[i] + vc[i]);
      EXPECT_EQ(vs[i], -vx[i]);
    }
  }
  // Stalk P_1 in degree 1.
  const Complex p = Complex::stalk(BaseObject::indecomposable(a3, 1), 1);
  EXPECT_EQ(inv(p), rv({0, -1, 0}));
}

TEST(Criterion, Examples) {
  const ScaledLattice z = ScaledLattice::full(2, 1);
  EXPECT_TRUE(criterion_check(z, z, z).satisfied);
  for (long p : {1, 2, 3, 4}) {
    const ScaledLattice km = ScaledLattice::axis(2, 0, p), kp = ScaledLattice::axis(2, 1, p);
    const CriterionResult r = criterion_check(z, km, kp);
    EXPECT_TRUE(r.satisfied);
    EXPECT_TRUE(r.sum.contains(rv({1, 0})) && r.sum.contains(rv({0, 1})));
  }
  const ScaledLattice g = ScaledLattice::from_generators(2, {rv({1, 1}), rv({half(1), half(1)}), rv({1, 0})});
  const CriterionResult r = criterion_check(g, ScaledLattice::axis(2, 0, 2), ScaledLattice::axis(2, 1, 2));
  EXPECT_FALSE(r.satisfied);
  ASSERT_TRUE(r.counterexample.has_value());
  EXPECT_EQ(*r.counterexample, rv({half(1), half(1)}));
  EXPECT_EQ(r.g_minus, ScaledLattice::axis(2, 0, 1));
  EXPECT_EQ(r.g_plus, ScaledLattice::axis(2, 1, 1));
  EXPECT_EQ(r.sum, z);
  EXPECT_THROW(criterion_check(z, ScaledLattice::full(3, 1), z), std::invalid_argument);
}

TEST(Criterion, RescalingInvariance) {
  Rng rng(4);
  for (int t = 0; t < 100; ++t) {
    auto rand_lat = [&] {
      std::vector<RationalVector> gens;
      const long den = rng.uniform(1, 4);
      for (int k = 0; k < 2; ++k) gens.push_back({mpq_class(rng.uniform(-3, 3), den), mpq_class(rng.uniform(-3, 3), den)});
      for (auto& g : gens)
        for (auto& x : g) x.canonicalize();
      return ScaledLattice::from_generators(2, gens);
    };
    const ScaledLattice g = rand_lat(), km = rand_lat(), kp = rand_lat();
    const CriterionResult r = criterion_check(g, km, kp);
    const long f = rng.uniform(2, 5);
    const CriterionResult r2 = criterion_check(g.rescaled(g.denominator() * f), km.rescaled(km.denominator() * f),
                                               kp.rescaled(kp.denominator() * f));
    EXPECT_EQ(r.satisfied, r2.satisfied);
    EXPECT_EQ(r.sum, r2.sum);
    if (r.counterexample) {
      EXPECT_TRUE(g.contains(*r.counterexample));
      EXPECT_FALSE(r.sum.contains(*r.counterexample));
    }
  }
}

TEST(Criterion, ImageSoundness) {
  // Projecting onto the first coordinate: satisfied upstairs implies satisfied downstairs.
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    std::vector<RationalVector> gens;
    for (int k = 0; k < 3; ++k) gens.push_back({rng.uniform(-3, 3), rng.uniform(-3, 3)});
    const ScaledLattice g = ScaledLattice::from_generators(2, gens);
    const ScaledLattice km = ScaledLattice::axis(2, 0, 1), kp = ScaledLattice::axis(2, 1, 1);
    if (!criterion_check(g, km, kp).satisfied) continue;
    std::vector<RationalVector> img;
    for (const auto& v : gens) img.push_back({v[0]});
    const ScaledLattice gi = ScaledLattice::from_generators(1, img);
    EXPECT_TRUE(criterion_check(gi, ScaledLattice::full(1, 1), ScaledLattice(1)).satisfied);
  }
}

TEST(NecessaryCondition, Scenarios) {
  const NecessaryConditionReport c = necessary_condition_report("c");
  EXPECT_TRUE(c.result.satisfied);
  EXPECT_EQ(c.g, ScaledLattice::full(2, 1));
  EXPECT_EQ(c.verdict, "no obstruction at invariant level");

  const NecessaryConditionReport cp = necessary_condition_report("cprime", 2);
  EXPECT_FALSE(cp.result.satisfied);
  EXPECT_EQ(cp.verdict, "no extension exists");
  ASSERT_TRUE(cp.result.counterexample.has_value());
  EXPECT_EQ(*cp.result.counterexample, rv({half(1), half(1)}));
  for (const SlopeObject& m : cp.generators) EXPECT_TRUE(membership(m, SlopeClass::CPrime));

  const NecessaryConditionReport cp4 = necessary_condition_report("cprime", 4);
  EXPECT_FALSE(cp4.result.satisfied);
  EXPECT_EQ(*cp4.result.counterexample, rv({mpq_class(1, 4), mpq_class(1, 4)}));

  const NecessaryConditionReport d = necessary_condition_report("d", 2);
  EXPECT_TRUE(d.result.satisfied);
  EXPECT_EQ(d.g, ScaledLattice::full(2, 2));
  EXPECT_NE(d.note.find("truncation"), std::string::npos);

  EXPECT_THROW(necessary_condition_report("e"), std::invalid_argument);
  EXPECT_THROW(necessary_condition_report("c", 0), std::invalid_argument);
}
