#include "wstruct/acceptance.hpp"

#include <chrono>
#include <numeric>
#include <set>
#include <sstream>

#include "wstruct/cli.hpp"
#include "wstruct/json_io.hpp"
#include "wstruct/random.hpp"

namespace wstruct {

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool passed = false;
  std::string detail;
};

Complex small_complex(const CategoryPtr& cat, Rng& rng, int lo, int hi) {
  RandomComplexOptions o;
  o.min_degree = lo;
  o.max_degree = hi;
  o.max_mult = cat->backend() == Backend::Vect ? 2 : 1;
  return random_complex(cat, rng, o);
}

// Cone of the identity on a stalk: contractible, but visibly occupying degrees lo - 1 and lo.
Complex contractible_at(const CategoryPtr& cat, Rng& rng, int lo) {
  return cone(ChainMap::identity(Complex::stalk(random_object(cat, rng, 1, 0), lo))).cone;
}

struct CliJson {
  int code = 0;
  Json body;
  std::string err;
};

CliJson run_json(const std::vector<std::string>& args) {
  const CliResult r = run_cli(args);
  CliJson out{r.exit_code, Json(), r.err};
  if (!r.out.empty()) out.body = Json::parse(r.out, nullptr, false);
  return out;
}

std::string str(std::size_t n) { return std::to_string(n); }

// ---------------------------------------------------------------------------
// 1. Axioms of the stupid structure.

Verdict axioms(std::uint64_t seed) {
  std::ostringstream os;
  bool ok = true;
  for (const char* base : {"vect", "quiver"}) {
    const CliJson r = run_json({"axioms", "--structure", "stupid", "--base", base, "--samples", "100", "--seed",
                                std::to_string(seed + 1)});
    const bool good = r.code == kExitOk && r.body.is_object() && r.body.value("samples", 0) == 100 &&
                      r.body["violations"].empty();
    ok = ok && good;
    os << base << ": " << (r.body.is_object() ? r.body["violations"].size() : 0) << " violations / 100; ";
  }
  return {ok, os.str() + "K^b(Vect_Q) and K^b(proj F_p A3)"};
}

// 2. Generated by the degree-0 stalks = stupid; heart objects are retracts of generator sums.
Verdict uniqueness(std::uint64_t seed) {
  Rng rng(seed + 2);
  const CategoryPtr cat = linear_quiver_category(3);
  const WeightSpec w = WeightSpec::generated(cat, degree_zero_stalks(cat));
  std::size_t disagree = 0;
  std::vector<Complex> heart_samples;
  for (int t = 0; t < 100; ++t) {
    Complex m = small_complex(cat, rng, -1, 1);
    // Every other sample: a heart object hidden behind contractible padding.
    if (t % 2 == 0)
      m = direct_sum(Complex::stalk(random_object(cat, rng, 2), 0), contractible_at(cat, rng, 0)).sum;
    for (Side s : {Side::Le, Side::Ge}) disagree += w.member(m, s) != stupid_membership(m, s);
    if (stupid_membership(m, Side::Le) && stupid_membership(m, Side::Ge)) heart_samples.push_back(m);
  }
  const HeartReport h = heart_of(w, heart_samples);
  const bool ok = disagree == 0 && h.ok() && h.in_heart == heart_samples.size() && heart_samples.size() >= 50;
  return {ok, str(disagree) + " membership disagreements on 100 samples; " + str(h.confirmed) + "/" +
                  str(heart_samples.size()) + " heart samples are retracts of generator sums"};
}

// 3. Retracts of objects supported in degrees >= 0 stay there.
Verdict retract_support(std::uint64_t seed) {
  Rng rng(seed + 3);
  const CategoryPtr cat = linear_quiver_category(3);
  std::size_t pairs = 0, failures = 0, attempts = 0;
  while (pairs < 100 && attempts < 1000) {
    ++attempts;
    const Complex n = direct_sum(small_complex(cat, rng, 0, 2), contractible_at(cat, rng, 0)).sum;
    const Complex p = direct_sum(small_complex(cat, rng, 0, 2), contractible_at(cat, rng, 0)).sum;
    const auto [r, s] = random_retraction(n, p, rng);
    const Complex& m = r.source();
    if (!homotopic(compose(r, s), ChainMap::identity(n))) {
      ++failures;
      continue;
    }
    const auto sm = minimal_support(m);
    if (sm && sm->first < 0) continue;  // premise fails; not a sample
    ++pairs;
    const auto sn = minimal_support(n);
    if (sn && sn->first < 0) ++failures;
  }
  return {pairs == 100 && failures == 0,
          str(pairs) + " retract pairs with M supported in degrees >= 0; " + str(failures) + " failures"};
}

// 4. Decompositions of extensions.
Verdict combine(std::uint64_t seed) {
  Rng rng(seed + 4);
  std::size_t failures = 0, total = 0;
  for (const CategoryPtr& cat : {BaseCategory::vect(), linear_quiver_category(3)}) {
    const WeightSpec w = WeightSpec::stupid(cat);
    for (int t = 0; t < 50; ++t, ++total) {
      const Complex n = small_complex(cat, rng, -1, 1), m = small_complex(cat, rng, -1, 1);
      const ChainMap g = random_chain_map(shift(m, -1), n, rng);
      const int idx = static_cast<int>(rng.uniform(-1, 1));
      try {
        const WeightDecomposition e = combine_decompositions(g, stupid_decomposition(n, idx), stupid_decomposition(m, idx));
        // Re-verification from scratch: the object, the cone and both supports.
        const auto lo = minimal_support(e.low()), hi = minimal_support(e.high);
        const bool supports = (!lo || lo->first >= -idx) && (!hi || hi->second <= -idx - 1);
        if (e.object() != cone(g).cone || e.high != cone(e.x).cone || !is_chain_map(e.x) || !supports ||
            !verify_decomposition(w, e).empty())
          ++failures;
      } catch (const std::exception&) {
        ++failures;
      }
    }
  }
  return {failures == 0, str(total) + " extensions, " + str(failures) + " failures"};
}

// 5. Retract towers.
Verdict towers(std::uint64_t seed) {
  const CliJson r = run_json({"retract-tower", "--base", "quiver", "--samples", "50", "--seed", std::to_string(seed + 5)});
  const bool ok = r.code == kExitOk && r.body.is_object() && r.body["splittings"] == 50 && r.body["triangles"] == 600 &&
                  r.body["failures"].empty();
  return {ok, "50 splittings x n in {1,2,3}: " + (r.body.is_object() ? r.body["triangles"].dump() : "?") +
                  " triangles, " + (r.body.is_object() ? str(r.body["failures"].size()) : "?") + " failures"};
}

// 6. The slope counterexample, direct route.
Verdict counterexample() {
  const CliJson r = run_json({"counterexample", "--alpha", "1/2"});
  if (r.code != kExitOk || !r.body.is_object()) return {false, "command failed: " + r.err};
  const Json& cert = r.body["certificate"];
  // Feed the printed witness back through the checkers.
  const SlopeObject m = slope_object_from_json(cert["object"]);
  const SlopePair s = slopes(m);
  const bool slopes_ok = s.alpha == mpq_class(1, 2) && s.beta == mpq_class(1, 2) &&
                         cert["slopes"]["alpha"] == "1/2" && cert["slopes"]["beta"] == "1/2";
  const bool recheck = check_certificate(no_decomposition_witness(m)).empty();
  const Json& o = r.body["oracle"];
  const bool oracle_ok = o["decompositions_inside_C_prime"] == 0 && o["decompositions_in_D"].get<std::size_t>() > 0;
  const bool ok = slopes_ok && recheck && r.body["certificate_check"] == "verified" && oracle_ok;
  return {ok, "certificate " + r.body["certificate_check"].get<std::string>() + "; oracle: " +
                  o["decompositions_in_D"].dump() + " decompositions in D, " +
                  o["decompositions_inside_C_prime"].dump() + " inside C'"};
}

// 7. The slope counterexample, K_0 route.
Verdict k0_route() {
  const CliJson cp = run_json({"k0-criterion", "--scenario", "cprime", "--period", "2"});
  const CliJson c = run_json({"k0-criterion", "--scenario", "c"});
  if (cp.code != kExitOk || c.code != kExitOk || !cp.body.is_object() || !c.body.is_object())
    return {false, "command failed: " + cp.err + c.err};
  const Json& a = cp.body["report"];
  const Json& b = c.body["report"];
  const bool fail_ok = a["verdict"] == "no extension exists" && !a["criterion"]["satisfied"].get<bool>() &&
                       a["criterion"]["counterexample"] == Json::array({"1/2", "1/2"});
  // Independent recomputation of the counterexample's status.
  const ScaledLattice g = ScaledLattice::from_generators(2, {{1, 1}, {mpq_class(1, 2), mpq_class(1, 2)}, {1, 0}});
  const RationalVector v{mpq_class(1, 2), mpq_class(1, 2)};
  const bool lattice_ok = g.contains(v) && !ScaledLattice::full(2, 1).contains(v);
  const bool c_ok = b["verdict"] == "no obstruction at invariant level" && b["criterion"]["satisfied"].get<bool>();
  return {fail_ok && lattice_ok && c_ok, "cprime/2: " + a["verdict"].get<std::string>() + " with " +
                                             a["criterion"]["counterexample"].dump() + "; c: " +
                                             b["verdict"].get<std::string>()};
}

// Naive slope: exact difference quotient of the partial sums far out.
SlopePair fitted(const SlopeObject& m) {
  const long j0 = 48, span = 96;
  auto sum = [&](long j, int dir) {
    mpz_class s = 0;
    for (long i = 0; i <= j; ++i) s += (i % 2 == 0 ? 1 : -1) * m.dims(dir * i);
    return s;
  };
  mpq_class a(sum(j0 + span, 1) - sum(j0, 1), span), b(sum(j0 + span, -1) - sum(j0, -1), span);
  a.canonicalize();
  b.canonicalize();
  return {a, b};
}

// 8. Slope additivity.
Verdict additivity(std::uint64_t seed) {
  Rng rng(seed + 8);
  RandomSlopeOptions opt;
  opt.periods = {2, 4, 6};
  std::size_t failures = 0;
  for (int t = 0; t < 500; ++t) {
    const SlopeObject a = random_slope_object(rng, opt), b = random_slope_object(rng, opt);
    const SlopeObject c = cone_profile(random_rank_profile(a, b, rng));
    if (slopes(c) != slopes(b) - slopes(a) || fitted(c) != slopes(c)) ++failures;
  }
  return {failures == 0, "500 cones, " + str(failures) + " failures"};
}

// 9. Extension claims for (C, D).
Verdict extension_claims(std::uint64_t seed) {
  Rng rng(seed + 9);
  std::vector<SlopeObject> samples;
  for (int t = 0; t < 100; ++t) samples.push_back(random_slope_object(rng));
  const ExtensionReport r = verify_extension_claims(SlopeClass::C, samples);
  return {r.ok() && r.samples == 100,
          str(r.samples) + " samples; class " + str(r.class_failures) + ", boundedness " + str(r.boundedness_failures) +
              ", heart " + str(r.heart_failures) + ", restriction " + str(r.restriction_failures) + " failures"};
}

// ---------------------------------------------------------------------------
// 10. Linear algebra against brute force.

using Mat = std::vector<std::vector<long>>;

IntMatrix to_int(const Mat& m) { return IntMatrix::from_ints(m); }

mpz_class det_oracle(const Mat& m) {
  if (m.size() == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  mpz_class d = 0;
  for (int j = 0; j < 3; ++j) {
    const int a = (j + 1) % 3, b = (j + 2) % 3;
    d += mpz_class(m[0][j]) * (m[1][a] * m[2][b] - m[1][b] * m[2][a]);
  }
  return d;
}

// gcd of all k x k minors of a 2x2 or 3x3 matrix.
mpz_class minor_gcd(const Mat& m, int k) {
  const int n = static_cast<int>(m.size());
  mpz_class g = 0;
  auto gcd_in = [&](const mpz_class& x) { mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), mpz_class(abs(x)).get_mpz_t()); };
  if (k == 1)
    for (const auto& r : m)
      for (long x : r) gcd_in(x);
  if (k == 2)
    for (int r1 = 0; r1 < n; ++r1)
      for (int r2 = r1 + 1; r2 < n; ++r2)
        for (int c1 = 0; c1 < n; ++c1)
          for (int c2 = c1 + 1; c2 < n; ++c2) gcd_in(m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]);
  if (k == n) gcd_in(det_oracle(m));
  return g;
}

bool is_unimodular(const IntMatrix& u) { return abs(determinant(u)) == 1; }

bool snf_ok(const Mat& m) {
  const IntMatrix a = to_int(m);
  const SmithForm s = snf(a);
  if (!(s.u * a * s.v == s.d) || !is_unimodular(s.u) || !is_unimodular(s.v)) return false;
  const std::size_t n = m.size();
  mpz_class prod = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && s.d(i, j) != 0) return false;
      if (i == j && s.d(i, i) < 0) return false;
    }
  for (std::size_t i = 0; i < n; ++i) {
    if (i + 1 < n && s.d(i, i) != 0 && s.d(i + 1, i + 1) % s.d(i, i) != 0) return false;
    if (i + 1 < n && s.d(i, i) == 0 && s.d(i + 1, i + 1) != 0) return false;
    prod *= s.d(i, i);
    // d_1 ... d_k equals the gcd of the k x k minors.
    if (prod != minor_gcd(m, static_cast<int>(i) + 1)) return false;
  }
  return true;
}

bool hnf_shape_ok(const Mat& m) {
  const IntMatrix a = to_int(m);
  const HermiteForm h = hnf(a);
  if (!(h.u * a == h.h) || !is_unimodular(h.u)) return false;
  const std::size_t rows = a.rows(), cols = a.cols();
  std::size_t prev = 0;
  bool seen_zero = false;
  for (std::size_t i = 0; i < rows; ++i) {
    std::size_t p = cols;
    for (std::size_t j = 0; j < cols; ++j)
      if (h.h(i, j) != 0) {
        p = j;
        break;
      }
    if (p == cols) {
      seen_zero = true;
      continue;
    }
    if (seen_zero || (i > 0 && p <= prev) || h.h(i, p) <= 0) return false;
    for (std::size_t k = 0; k < i; ++k)
      if (h.h(k, p) < 0 || h.h(k, p) >= h.h(i, p)) return false;
    prev = p;
  }
  return true;
}

// Row-lattice membership for 2x2 inputs by enumerating coefficients; the bound 24
// covers every vector of [-4, 4]^2 for entries in [-3, 3].
std::set<std::pair<long, long>> enumerate_span(const std::vector<std::vector<long>>& rows, long bound, long window) {
  std::set<std::pair<long, long>> out;
  std::vector<long> x(rows.size(), -bound);
  while (true) {
    long a = 0, b = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      a += x[i] * rows[i][0];
      b += x[i] * rows[i][1];
    }
    if (std::abs(a) <= window && std::abs(b) <= window) out.insert({a, b});
    std::size_t k = 0;
    while (k < x.size() && x[k] == bound) x[k++] = -bound;
    if (k == x.size()) break;
    ++x[k];
  }
  return out;
}

IntLattice lattice_of(const std::vector<std::vector<long>>& rows, std::size_t n) {
  std::vector<IntVector> g;
  for (const auto& r : rows) g.push_back(make_int_vector(r));
  return IntLattice::from_generators(n, g);
}

bool lattice2_ok(const Mat& m) {
  const long w = 4;
  const auto span = enumerate_span(m, 24, w);
  const auto a_span = enumerate_span({m[0]}, 4, w), b_span = enumerate_span({m[1]}, 4, w);
  const IntLattice a = lattice_of({m[0]}, 2), b = lattice_of({m[1]}, 2);
  const IntLattice full = lattice_of(m, 2), sum = lattice_sum(a, b), meet = lattice_intersect(a, b);
  for (long x = -w; x <= w; ++x)
    for (long y = -w; y <= w; ++y) {
      const IntVector v = make_int_vector({x, y});
      const bool in = span.count({x, y}) > 0;
      const bool both = a_span.count({x, y}) > 0 && b_span.count({x, y}) > 0;
      if (full.contains(v) != in || sum.contains(v) != in || meet.contains(v) != both) return false;
    }
  return true;
}

// Unique rational solution of x * rows = v for linearly independent rows, by Cramer's rule on 3x3.
std::optional<std::vector<mpq_class>> solve3(const Mat& m, const std::vector<long>& v) {
  const mpz_class d = det_oracle(m);
  if (d == 0) return std::nullopt;
  std::vector<mpq_class> x(3);
  for (int i = 0; i < 3; ++i) {
    Mat r = m;
    r[i] = v;
    x[i] = mpq_class(det_oracle(r), d);
    x[i].canonicalize();
  }
  return x;
}

bool integral(const std::vector<mpq_class>& x) {
  return std::all_of(x.begin(), x.end(), [](const mpq_class& q) { return q.get_den() == 1; });
}

bool lattice3_ok(const Mat& m1, const Mat& m2, Rng& rng) {
  const IntLattice a = lattice_of(m1, 3), b = lattice_of(m2, 3);
  const IntLattice sum = lattice_sum(a, b), meet = lattice_intersect(a, b);
  const mpz_class da = abs(det_oracle(m1)), db = abs(det_oracle(m2));
  // Generators of both lie in the sum.
  for (const auto& r : m1)
    if (!sum.contains(make_int_vector(r))) return false;
  for (const auto& r : m2)
    if (!sum.contains(make_int_vector(r))) return false;
  auto index = [](const IntLattice& l) {
    mpz_class p = 1;
    for (std::size_t i = 0; i < l.rank(); ++i)
      for (const mpz_class& x : l.basis()[i])
        if (x != 0) {
          p *= x;
          break;
        }
    return p;
  };
  // Index of the sum: gcd of the 3x3 minors of the stacked generators.
  Mat stacked = m1;
  stacked.insert(stacked.end(), m2.begin(), m2.end());
  mpz_class g = 0;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      for (int k = j + 1; k < 6; ++k) {
        const mpz_class d = det_oracle({stacked[i], stacked[j], stacked[k]});
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), mpz_class(abs(d)).get_mpz_t());
      }
  if (g != 0 && (sum.rank() != 3 || index(sum) != g)) return false;
  if (da == 0 || db == 0) {
    // Soundness only: the intersection basis lies in both.
    for (const IntVector& v : meet.basis())
      if (!a.contains(v) || !b.contains(v)) return false;
    return true;
  }
  // [Z^3 : A∩B] = [Z^3 : A][Z^3 : B] / [Z^3 : A+B].
  if (meet.rank() != 3 || index(meet) != da * db / g) return false;
  for (int t = 0; t < 20; ++t) {
    std::vector<long> u{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
    const long scale = std::vector<long>{1, da.get_si(), db.get_si(), mpz_class(da * db).get_si()}[static_cast<std::size_t>(rng.uniform(0, 3))];
    for (long& x : u) x *= scale;
    const bool in_a = integral(*solve3(m1, u)), in_b = integral(*solve3(m2, u));
    const IntVector v = make_int_vector(u);
    if (a.contains(v) != in_a || b.contains(v) != in_b || meet.contains(v) != (in_a && in_b)) return false;
  }
  return true;
}

Verdict linear_algebra(std::uint64_t seed) {
  std::size_t two = 0, two_fail = 0;
  Mat m(2, std::vector<long>(2));
  for (long a = -3; a <= 3; ++a)
    for (long b = -3; b <= 3; ++b)
      for (long c = -3; c <= 3; ++c)
        for (long d = -3; d <= 3; ++d) {
          m = {{a, b}, {c, d}};
          ++two;
          if (!snf_ok(m) || !hnf_shape_ok(m) || !lattice2_ok(m)) ++two_fail;
        }
  Rng rng(seed + 10);
  std::size_t three_fail = 0;
  auto rand3 = [&] {
    Mat r(3, std::vector<long>(3));
    for (auto& row : r)
      for (long& x : row) x = rng.uniform(-3, 3);
    return r;
  };
  for (int t = 0; t < 1000; ++t) {
    const Mat m1 = rand3(), m2 = rand3();
    if (!snf_ok(m1) || !hnf_shape_ok(m1) || !lattice3_ok(m1, m2, rng)) ++three_fail;
  }
  return {two_fail == 0 && three_fail == 0, str(two) + " 2x2 matrices (" + str(two_fail) + " failures), 1000 random 3x3 (" +
                                                str(three_fail) + " failures)"};
}

}  // namespace

std::string outcome_line(const CriterionOutcome& c) {
  return std::string(c.passed ? "PASS" : "FAIL") + " [" + std::to_string(c.id) + "] " + c.name + ": " + c.detail;
}

std::vector<CriterionOutcome> run_acceptance(std::uint64_t seed,
                                             const std::function<void(const CriterionOutcome&)>& on_result) {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"axiom suite for the stupid structure", [&] { return axioms(seed); }},
      {"negative generators reproduce the stupid structure", [&] { return uniqueness(seed); }},
      {"retracts keep nonnegative support", [&] { return retract_support(seed); }},
      {"decompositions of extensions", [&] { return combine(seed); }},
      {"retract towers are split", [&] { return towers(seed); }},
      {"slope counterexample, direct route", [] { return counterexample(); }},
      {"slope counterexample, K0 route", [] { return k0_route(); }},
      {"slope additivity on cones", [&] { return additivity(seed); }},
      {"extension claims for (C, D)", [&] { return extension_claims(seed); }},
      {"normal forms and lattices against brute force", [&] { return linear_algebra(seed); }},
  };
  std::vector<CriterionOutcome> out;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    CriterionOutcome o;
    o.id = static_cast<int>(i) + 1;
    o.name = criteria[i].first;
    const auto start = Clock::now();
    try {
      const Verdict v = criteria[i].second();
      o.passed = v.passed;
      o.detail = v.detail;
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("exception: ") + e.what();
    }
    o.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (on_result) on_result(o);
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace wstruct
