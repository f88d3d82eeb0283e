#include "wstruct/k0.hpp"

#include <sstream>
#include <stdexcept>

namespace wstruct {

namespace {

mpz_class lcm(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

mpz_class gcd(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// p·v as an integer vector, or nothing when some entry is not in (1/p)Z.
std::optional<IntVector> clear(const RationalVector& v, const mpz_class& p) {
  IntVector out;
  out.reserve(v.size());
  for (const mpq_class& x : v) {
    mpq_class y = x * p;
    y.canonicalize();
    if (y.get_den() != 1) return std::nullopt;
    out.push_back(y.get_num());
  }
  return out;
}

void require_rank(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("ambient rank mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

}  // namespace

ScaledLattice::ScaledLattice(mpz_class p, IntLattice lattice) : p_(std::move(p)), lattice_(std::move(lattice)) {
  if (p_ <= 0) throw std::invalid_argument("denominator must be positive");
}

ScaledLattice ScaledLattice::from_generators(std::size_t ambient_rank, const std::vector<RationalVector>& gens) {
  mpz_class p = 1;
  for (const RationalVector& g : gens) {
    require_rank(g.size(), ambient_rank);
    for (const mpq_class& x : g) p = lcm(p, mpq_class(x).get_den());
  }
  std::vector<IntVector> rows;
  for (const RationalVector& g : gens) rows.push_back(*clear(g, p));
  return ScaledLattice(p, IntLattice::from_generators(ambient_rank, rows)).reduced();
}

ScaledLattice ScaledLattice::axis(std::size_t ambient_rank, std::size_t coord, const mpz_class& p) {
  if (coord >= ambient_rank) throw std::invalid_argument("axis out of range");
  IntVector e(ambient_rank, 0);
  e[coord] = 1;
  return ScaledLattice(p, IntLattice::from_generators(ambient_rank, {e}));
}

ScaledLattice ScaledLattice::full(std::size_t ambient_rank, const mpz_class& p) {
  return ScaledLattice(p, IntLattice::full(ambient_rank));
}

std::vector<RationalVector> ScaledLattice::basis() const {
  std::vector<RationalVector> out;
  for (const IntVector& b : lattice_.basis()) {
    RationalVector v;
    for (const mpz_class& x : b) {
      mpq_class q(x, p_);
      q.canonicalize();
      v.push_back(q);
    }
    out.push_back(std::move(v));
  }
  return out;
}

ScaledLattice ScaledLattice::rescaled(const mpz_class& q) const {
  if (q <= 0 || q % p_ != 0) throw std::invalid_argument("new denominator must be a positive multiple of the old one");
  return ScaledLattice(q, lattice_.scaled(q / p_));
}

ScaledLattice ScaledLattice::reduced() const {
  mpz_class g = p_;
  for (const IntVector& b : lattice_.basis())
    for (const mpz_class& x : b) g = gcd(g, x);
  if (g == 1) return *this;
  std::vector<IntVector> rows;
  for (IntVector b : lattice_.basis()) {
    for (mpz_class& x : b) x /= g;
    rows.push_back(std::move(b));
  }
  return ScaledLattice(p_ / g, IntLattice::from_generators(ambient_rank(), rows));
}

bool ScaledLattice::contains(const RationalVector& v) const {
  require_rank(v.size(), ambient_rank());
  const auto c = clear(v, p_);
  return c && lattice_.contains(*c);
}

bool ScaledLattice::contains(const ScaledLattice& other) const {
  require_rank(other.ambient_rank(), ambient_rank());
  const mpz_class q = lcm(p_, other.p_);
  return rescaled(q).lattice_.contains(other.rescaled(q).lattice_);
}

bool operator==(const ScaledLattice& a, const ScaledLattice& b) {
  if (a.ambient_rank() != b.ambient_rank()) return false;
  const mpz_class q = lcm(a.p_, b.p_);
  return a.rescaled(q).lattice_ == b.rescaled(q).lattice_;
}

std::string ScaledLattice::to_string() const {
  std::ostringstream os;
  os << "(1/" << p_.get_str() << ")" << lattice_.to_string();
  return os.str();
}

ScaledLattice scaled_sum(const ScaledLattice& a, const ScaledLattice& b) {
  require_rank(a.ambient_rank(), b.ambient_rank());
  const mpz_class q = lcm(a.denominator(), b.denominator());
  return ScaledLattice(q, lattice_sum(a.rescaled(q).lattice(), b.rescaled(q).lattice())).reduced();
}

ScaledLattice scaled_intersect(const ScaledLattice& a, const ScaledLattice& b) {
  require_rank(a.ambient_rank(), b.ambient_rank());
  const mpz_class q = lcm(a.denominator(), b.denominator());
  return ScaledLattice(q, lattice_intersect(a.rescaled(q).lattice(), b.rescaled(q).lattice())).reduced();
}

std::string rational_vector_string(const RationalVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
  return s + ")";
}

// ---------------------------------------------------------------------------
// Invariants

InvariantAssignment InvariantAssignment::slope_pair() { return InvariantAssignment(); }

InvariantAssignment InvariantAssignment::euler_characteristic(CategoryPtr cat) {
  if (!cat) throw std::invalid_argument("euler characteristic needs a base category");
  InvariantAssignment a;
  a.source_ = Source::Kb;
  a.cat_ = std::move(cat);
  return a;
}

std::size_t InvariantAssignment::rank() const { return source_ == Source::Slope ? 2 : cat_->vertex_count(); }

const char* source_name(InvariantAssignment::Source s) {
  return s == InvariantAssignment::Source::Slope ? "slope-lab" : "K^b";
}

RationalVector InvariantAssignment::operator()(const K0Object& obj) const {
  if (source_ == Source::Slope) {
    const auto* m = std::get_if<SlopeObject>(&obj);
    if (!m) throw std::invalid_argument("source mismatch: expected a slope-lab object");
    const SlopePair s = slopes(*m);
    return {s.alpha, s.beta};
  }
  const auto* c = std::get_if<Complex>(&obj);
  if (!c) throw std::invalid_argument("source mismatch: expected a complex");
  if (!c->is_zero()) require_same_category(cat_, c->category());
  RationalVector v(rank(), 0);
  if (c->is_zero()) return v;
  for (int i = c->lo(); i <= c->hi(); ++i)
    for (std::size_t vert = 0; vert < v.size(); ++vert) {
      const int m = c->mult(i, static_cast<int>(vert));
      v[vert] += (i % 2 == 0) ? m : -m;
    }
  return v;
}

ScaledLattice invariant_image(const std::vector<K0Object>& objs, const InvariantAssignment& assign) {
  std::vector<RationalVector> gens;
  gens.reserve(objs.size());
  for (const K0Object& o : objs) gens.push_back(assign(o));
  return ScaledLattice::from_generators(assign.rank(), gens);
}

// ---------------------------------------------------------------------------
// Criterion

CriterionResult criterion_check(const ScaledLattice& g, const ScaledLattice& k_minus, const ScaledLattice& k_plus) {
  require_rank(g.ambient_rank(), k_minus.ambient_rank());
  require_rank(g.ambient_rank(), k_plus.ambient_rank());
  CriterionResult r;
  r.g_minus = scaled_intersect(g, k_minus);
  r.g_plus = scaled_intersect(g, k_plus);
  r.sum = scaled_sum(r.g_minus, r.g_plus);
  // The sum is inside G by construction, so equality is G ⊆ sum, checked on the basis of G.
  for (const RationalVector& b : g.basis())
    if (!r.sum.contains(b)) {
      r.counterexample = b;
      break;
    }
  r.satisfied = !r.counterexample;
  return r;
}

NecessaryConditionReport necessary_condition_report(const std::string& scenario, long period) {
  if (period < 1) throw std::invalid_argument("period must be positive");
  NecessaryConditionReport rep;
  rep.scenario = scenario;
  rep.period = period;
  const mpq_class unit(1, period);
  if (scenario == "c") {
    rep.generators = {slope_object_with(1, 0), slope_object_with(0, 1), slope_object_with(1, 1),
                      SlopeObject{EPSequence::finite(0, {1})}};
  } else if (scenario == "cprime") {
    rep.generators = {slope_object_with(1, 1), slope_object_with(unit, unit), slope_object_with(1, 0)};
  } else if (scenario == "d") {
    rep.generators = {slope_object_with(unit, 0), slope_object_with(0, unit)};
  } else {
    throw std::invalid_argument("unknown scenario '" + scenario + "' (expected c, cprime or d)");
  }

  const InvariantAssignment inv = InvariantAssignment::slope_pair();
  std::vector<K0Object> objs(rep.generators.begin(), rep.generators.end());
  for (const K0Object& o : objs) rep.generator_vectors.push_back(inv(o));
  rep.g = invariant_image(objs, inv);
  rep.k_minus = ScaledLattice::axis(2, 0, period);
  rep.k_plus = ScaledLattice::axis(2, 1, period);
  rep.result = criterion_check(rep.g, rep.k_minus, rep.k_plus);
  rep.verdict = rep.result.satisfied ? "no obstruction at invariant level" : "no extension exists";

  std::string note =
      "K- = (1/P)Z x 0 and K+ = 0 x (1/P)Z: objects bounded on the left tail have beta = 0, "
      "objects bounded on the right tail have alpha = 0. ";
  note += rep.result.satisfied
              ? "The criterion holds in the slope image; this rules out only invariant-level obstructions."
              : "The criterion fails in the slope image, and failure in a homomorphic image of K_0 forces failure "
                "upstream.";
  if (scenario == "d")
    note += " The whole category already carries the weight structure by direct truncation (see pad-to-c and "
            "counterexample).";
  rep.note = note;
  return rep;
}

}  // namespace wstruct
