#include "wstruct/weight.hpp"

#include <algorithm>
#include <stdexcept>

namespace wstruct {

const char* side_name(Side s) { return s == Side::Le ? "le" : "ge"; }

WeightDecomposition make_decomposition(int m, const ChainMap& x) {
  WeightDecomposition d;
  d.m = m;
  d.x = x;
  d.high = cone(x).cone;
  return d;
}

WeightDecomposition transport(const WeightDecomposition& d, const ChainMap& phi) {
  return make_decomposition(d.m, compose(phi, d.x));
}

WeightDecomposition shift(const WeightDecomposition& d, int k) { return make_decomposition(d.m + k, shift(d.x, k)); }

// ---------------------------------------------------------------------------
// Certificates

namespace {
ChainMap zero_into(const Complex& target) { return ChainMap(Complex(target.category()), target); }
}  // namespace

CertPtr cert_generator(const Complex& b) {
  auto c = std::make_shared<PreWeightCertificate>();
  c->kind = PreWeightCertificate::Kind::Generator;
  c->object = b;
  return c;
}

CertPtr cert_shift(const CertPtr& child, int k) {
  auto c = std::make_shared<PreWeightCertificate>();
  c->kind = PreWeightCertificate::Kind::Shift;
  c->object = shift(child->object, k);
  c->children = {child};
  c->k = k;
  return c;
}

CertPtr cert_extend(const CertPtr& n, const CertPtr& m, const ChainMap& g) {
  if (g.target() != n->object || g.source() != shift(m->object, -1))
    throw std::invalid_argument("extension gluing map must go from M[-1] to N");
  if (!is_chain_map(g)) throw std::invalid_argument("extension gluing map is not a chain map");
  auto c = std::make_shared<PreWeightCertificate>();
  c->kind = PreWeightCertificate::Kind::Extend;
  c->object = cone(g).cone;
  c->children = {n, m};
  c->map = g;
  return c;
}

CertPtr cert_retract(const CertPtr& m, const ChainMap& r, const ChainMap& s, std::optional<int> n) {
  if (r.source() != m->object || s.target() != m->object || r.target() != s.source())
    throw std::invalid_argument("retraction data does not match the presented object");
  if (!is_chain_map(r) || !is_chain_map(s)) throw std::invalid_argument("retraction data are not chain maps");
  if (!homotopic(compose(r, s), ChainMap::identity(s.source())))
    throw std::invalid_argument("r∘s is not homotopic to the identity");
  if (n && *n < 0) throw std::invalid_argument("tower length must be non-negative");
  auto c = std::make_shared<PreWeightCertificate>();
  c->kind = PreWeightCertificate::Kind::RetractTower;
  c->object = r.target();
  c->children = {m};
  c->map = r;
  c->section = s;
  c->tower_n = n;
  return c;
}

int certified_lower_weight(const PreWeightCertificate& c) {
  switch (c.kind) {
    case PreWeightCertificate::Kind::Generator:
      return 0;
    case PreWeightCertificate::Kind::Shift:
      return certified_lower_weight(*c.children[0]) + c.k;
    case PreWeightCertificate::Kind::Extend:
      return std::min(certified_lower_weight(*c.children[0]), certified_lower_weight(*c.children[1]));
    case PreWeightCertificate::Kind::RetractTower:
      return certified_lower_weight(*c.children[0]);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Transport

WeightDecomposition combine_decompositions(const ChainMap& g, const WeightDecomposition& dn,
                                           const WeightDecomposition& dm) {
  if (dn.m != dm.m) throw std::invalid_argument("decompositions have different indices");
  if (g.target() != dn.object() || g.source() != shift(dm.object(), -1))
    throw std::invalid_argument("gluing map must go from M[-1] to N");
  const ChainMap xm = shift(dm.x, -1);
  const ChainMap t = compose(g, xm);
  const auto l = lift_through(dn.x, t);
  if (!l) throw std::runtime_error("lift system inconsistent: inputs violate orthogonality");
  const auto h = nullhomotopy(compose(dn.x, *l) - t);
  if (!h) throw std::logic_error("lift found without a homotopy");
  const Complex xe = cone(*l).cone;
  const Complex e = cone(g).cone;
  ChainMap x(xe, e);
  for (int i = xe.lo(); i <= xe.hi(); ++i) {
    BaseMorphism c(xe.term(i), e.term(i));
    const auto eb = cone_b_indices(g, i), ea = cone_a_indices(g, i);
    const auto xb = cone_b_indices(*l, i), xa = cone_a_indices(*l, i);
    c.place(eb, xb, dn.x.component(i));
    c.place(eb, xa, h->component(i + 1));
    c.place(ea, xa, xm.component(i + 1));
    x.set_component(i, c);
  }
  if (!is_chain_map(x)) throw std::logic_error("combined decomposition map is not a chain map");
  return make_decomposition(dn.m, x);
}

namespace {

// Inverse of the sign-diagonal iso Cone(f)[k] -> Cone(f[k]).
ChainMap cone_shift_inverse(const ChainMap& f, int k) {
  const ChainMap theta = cone_shift_iso(f, k);
  return graded_from_coordinates(theta.target(), theta.source(), 0, graded_coordinates(theta));
}

WeightDecomposition decompose_tower(const PreWeightCertificate& c, int m) {
  const PreWeightCertificate& child = *c.children[0];
  const ChainMap& r = c.map;
  const ChainMap& s = c.section;
  const Complex& n_obj = c.object;
  // N[2n] ∈ w≥(j + 2n) because N is a retract of M ∈ w≥j.
  const int j = certified_lower_weight(child);
  int n = std::max(0, (m + 1 - j + 1) / 2);
  if (c.tower_n) {
    if (*c.tower_n < n)
      throw std::invalid_argument("tower length " + std::to_string(*c.tower_n) + " too short for index " +
                                  std::to_string(m));
    n = *c.tower_n;
  }
  auto dm = [&](int k) { return shift(decompose_presented(child, m - k), k); };
  WeightDecomposition d = make_decomposition(m, zero_into(shift(n_obj, 2 * n)));
  for (int k = n - 1; k >= 0; --k) {
    // P_k = Cone(s[2k+1]), an extension of N[2k+2] by M[2k+1].
    const ChainMap s_odd = shift(s, 2 * k + 1);
    const WeightDecomposition dp = combine_decompositions(s_odd, dm(2 * k + 1), d);
    // N[2k] ≃ Cone(σ: P_k[-1] -> M[2k]) for a section σ complementary to s[2k].
    const ChainMap s_even = shift(s, 2 * k), r_even = shift(r, 2 * k);
    const ChainMap q = compose(cone_shift_inverse(s_odd, -1), cone(s_even).incl);
    const auto sigma = find_section(q);
    if (!sigma) throw std::logic_error("complement of a split summand has no section");
    const ChainMap sig = *sigma - compose(s_even, compose(r_even, *sigma));
    const auto phi = map_from_cone(sig, r_even);
    if (!phi) throw std::logic_error("retraction does not vanish on the complement");
    d = transport(combine_decompositions(sig, dm(2 * k), dp), *phi);
  }
  return d;
}

}  // namespace

WeightDecomposition decompose_presented(const PreWeightCertificate& c, int m) {
  switch (c.kind) {
    case PreWeightCertificate::Kind::Generator:
      // Generators sit in the heart.
      if (m >= 0) return make_decomposition(m, ChainMap::identity(c.object));
      return make_decomposition(m, zero_into(c.object));
    case PreWeightCertificate::Kind::Shift:
      return shift(decompose_presented(*c.children[0], m - c.k), c.k);
    case PreWeightCertificate::Kind::Extend:
      return combine_decompositions(c.map, decompose_presented(*c.children[0], m),
                                    decompose_presented(*c.children[1], m));
    case PreWeightCertificate::Kind::RetractTower:
      return decompose_tower(c, m);
  }
  throw std::logic_error("unknown certificate node");
}

// ---------------------------------------------------------------------------
// Specs

bool stupid_membership(const Complex& m, Side side) {
  const auto sup = minimal_support(m);
  if (!sup) return true;
  return side == Side::Le ? sup->first >= 0 : sup->second <= 0;
}

WeightDecomposition stupid_decomposition(const Complex& m, int index) {
  const MinimalModel mm = minimal_model(m);
  const auto [x, inc] = brutal_ge(mm.minimal, -index);
  return make_decomposition(index, compose(mm.from_minimal, inc));
}

WeightSpec WeightSpec::stupid(CategoryPtr cat) {
  WeightSpec w;
  w.flavor_ = Flavor::Stupid;
  w.name_ = "stupid";
  w.cat_ = std::move(cat);
  w.le0_ = [](const Complex& m) { return stupid_membership(m, Side::Le); };
  w.ge0_ = [](const Complex& m) { return stupid_membership(m, Side::Ge); };
  w.dec_ = stupid_decomposition;
  return w;
}

WeightSpec WeightSpec::generated(CategoryPtr cat, std::vector<Complex> b) {
  for (const auto& x : b) require_same_category(cat, x.category());
  const NegativityResult neg = negativity_check(b);
  if (!neg.negative)
    throw std::invalid_argument("generators are not negative: Hom(B" + std::to_string(neg.pair->first) + ", B" +
                                std::to_string(neg.pair->second) + "[" + std::to_string(neg.shift) + "]) != 0");
  auto w = std::make_shared<WeightSpec>();
  w->flavor_ = Flavor::Generated;
  w->name_ = "generated";
  w->cat_ = std::move(cat);
  w->gens_ = std::move(b);
  // M ∈ w≤0 iff M -> Y vanishes in a decomposition at 0 (then M is a retract
  // of X); dually M ∈ w≥0 iff X -> M vanishes at -1.
  WeightSpec out = *w;
  out.dec_ = [w](const Complex& m, int index) {
    if (m.is_zero()) return make_decomposition(index, ChainMap(m, m));
    return decompose_presented(*w->certify(m), index);
  };
  const Decomposer dec = out.dec_;
  out.le0_ = [dec](const Complex& m) { return m.is_zero() || is_nullhomotopic(cone(dec(m, 0).x).incl); };
  out.ge0_ = [dec](const Complex& m) { return m.is_zero() || is_nullhomotopic(dec(m, -1).x); };
  return out;
}

WeightSpec WeightSpec::custom(std::string name, CategoryPtr cat, Predicate le0, Predicate ge0, Decomposer dec) {
  WeightSpec w;
  w.flavor_ = Flavor::Custom;
  w.name_ = std::move(name);
  w.cat_ = std::move(cat);
  w.le0_ = std::move(le0);
  w.ge0_ = std::move(ge0);
  w.dec_ = std::move(dec);
  return w;
}

bool WeightSpec::member(const Complex& m, Side side, int index) const {
  const Complex t = index == 0 ? m : shift(m, -index);
  return side == Side::Le ? le0_(t) : ge0_(t);
}

WeightDecomposition WeightSpec::decompose(const Complex& m, int index) const { return dec_(m, index); }

std::vector<Complex> degree_zero_stalks(const CategoryPtr& cat) {
  std::vector<Complex> out;
  for (int v = 0; v < static_cast<int>(cat->vertex_count()); ++v)
    out.push_back(Complex::stalk(BaseObject::indecomposable(cat, v), 0));
  return out;
}

CertPtr WeightSpec::certify(const Complex& m) const {
  for (const auto& g : gens_)
    if (g == m) return cert_generator(g);
  std::vector<std::optional<std::size_t>> by_vertex(cat_->vertex_count());
  for (std::size_t k = 0; k < gens_.size(); ++k) {
    const Complex& g = gens_[k];
    if (g.lo() == 0 && g.hi() == 0 && g.term(0).size() == 1 && !by_vertex[g.term(0).vertex_of(0)])
      by_vertex[g.term(0).vertex_of(0)] = k;
  }
  auto stalk_cert = [&](const BaseObject& o, int degree) {
    CertPtr acc;
    for (std::size_t v = 0; v < by_vertex.size(); ++v) {
      if (o.mult(static_cast<int>(v)) == 0) continue;
      if (!by_vertex[v])
        throw std::invalid_argument("no certificate: vertex " + std::to_string(v) +
                                    " has no degree-0 stalk generator");
      const CertPtr g = cert_generator(gens_[*by_vertex[v]]);
      for (int c = 0; c < o.mult(static_cast<int>(v)); ++c)
        acc = acc ? cert_extend(acc, g, ChainMap(shift(g->object, -1), acc->object)) : g;
    }
    return cert_shift(acc, -degree);
  };
  if (m.is_zero()) throw std::invalid_argument("no certificate for the zero complex");
  // Peel off the lowest degree: M = Cone(d^lo : M^lo[-lo-1] -> M_{>lo}).
  CertPtr acc = stalk_cert(m.term(m.hi()), m.hi());
  for (int a = m.hi() - 1; a >= m.lo(); --a) {
    if (m.term(a).is_zero()) continue;
    const CertPtr s = stalk_cert(m.term(a), a);
    ChainMap g(shift(s->object, -1), acc->object);
    g.set_component(a + 1, m.diff(a));
    acc = cert_extend(acc, s, g);
  }
  if (acc->object != m) throw std::logic_error("stupid filtration did not reproduce the complex");
  return acc;
}

std::string verify_decomposition(const WeightSpec& w, const WeightDecomposition& d) {
  if (!is_chain_map(d.x)) return "x is not a chain map";
  if (d.high != cone(d.x).cone) return "third vertex is not the cone of x";
  if (!w.member(d.low(), Side::Le, d.m)) return "X not in w<=" + std::to_string(d.m);
  if (!w.member(d.high, Side::Ge, d.m + 1)) return "Y not in w>=" + std::to_string(d.m + 1);
  return {};
}

// ---------------------------------------------------------------------------
// Checks

AxiomReport check_axioms(const WeightSpec& w, const std::vector<Complex>& samples) {
  AxiomReport rep;
  rep.samples = samples.size();
  const std::size_t n = samples.size();
  std::vector<bool> le(n), ge(n);
  for (std::size_t k = 0; k < n; ++k) {
    le[k] = w.member(samples[k], Side::Le);
    ge[k] = w.member(samples[k], Side::Ge);
  }
  auto add = [&](std::string axiom, std::size_t k, std::optional<std::size_t> other, std::string detail) {
    rep.violations.push_back({std::move(axiom), k, other, std::move(detail)});
  };
  for (std::size_t k = 0; k < n; ++k) {
    if (le[k] || ge[k]) {
      for (const auto& part : summand_decompose(samples[k])) {
        if (le[k] && !w.member(part, Side::Le)) add("retract", k, std::nullopt, "summand " + part.to_string() + " not in w<=0");
        if (ge[k] && !w.member(part, Side::Ge)) add("retract", k, std::nullopt, "summand " + part.to_string() + " not in w>=0");
      }
    }
    if (le[k] && !w.member(shift(samples[k], -1), Side::Le)) add("shift", k, std::nullopt, "M in w<=0 but M[-1] is not");
    if (ge[k] && !w.member(shift(samples[k], 1), Side::Ge)) add("shift", k, std::nullopt, "M in w>=0 but M[1] is not");
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (!le[a]) continue;
    for (std::size_t b = 0; b < n; ++b) {
      if (!ge[b]) continue;
      const std::size_t h = hom_dim(samples[a], shift(samples[b], 1));
      if (h != 0) add("orthogonality", a, b, "dim Hom(X, Y[1]) = " + std::to_string(h));
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::string err;
    try {
      err = verify_decomposition(w, w.decompose(samples[k], 0));
    } catch (const std::exception& e) {
      err = e.what();
    }
    if (!err.empty()) add("decomposition", k, std::nullopt, err);
  }
  return rep;
}

NegativityResult negativity_check(const std::vector<Complex>& b) {
  NegativityResult res;
  bool any = false;
  int lo = 0, hi = 0;
  for (const auto& x : b) {
    if (x.is_zero()) continue;
    lo = any ? std::min(lo, x.lo()) : x.lo();
    hi = any ? std::max(hi, x.hi()) : x.hi();
    any = true;
  }
  if (!any) return res;
  // Hom(b1, b2[i]) needs overlapping supports, so i <= hi - lo.
  res.i_max = hi - lo;
  for (int i = 1; i <= res.i_max; ++i)
    for (std::size_t p = 0; p < b.size(); ++p)
      for (std::size_t q = 0; q < b.size(); ++q)
        if (hom_dim(b[p], shift(b[q], i)) != 0) {
          res.negative = false;
          res.pair = {p, q};
          res.shift = i;
          return res;
        }
  return res;
}

HeartReport heart_of(const WeightSpec& w, const std::vector<Complex>& samples) {
  HeartReport rep;
  std::vector<Complex> pieces;
  for (const auto& g : w.generators())
    for (auto& p : summand_decompose(g)) pieces.push_back(std::move(p));
  for (std::size_t k = 0; k < samples.size(); ++k) {
    if (!w.in_heart(samples[k])) continue;
    ++rep.in_heart;
    // Retract of a finite sum of generators iff every summand occurs in some generator.
    bool ok = true;
    for (const auto& part : summand_decompose(samples[k])) {
      const bool found = std::any_of(pieces.begin(), pieces.end(), [&](const Complex& p) { return is_isomorphic(part, p); });
      if (!found) {
        ok = false;
        break;
      }
    }
    if (ok)
      ++rep.confirmed;
    else
      rep.failures.push_back(k);
  }
  return rep;
}

Splitting make_splitting(const ChainMap& r, const ChainMap& s) {
  if (r.source() != s.target() || r.target() != s.source())
    throw std::invalid_argument("r and s do not form a retraction pair");
  if (!is_chain_map(r) || !is_chain_map(s)) throw std::invalid_argument("r or s is not a chain map");
  if (!homotopic(compose(r, s), ChainMap::identity(s.source())))
    throw std::invalid_argument("r∘s is not homotopic to the identity");
  Splitting sp;
  sp.n = s.source();
  sp.m = s.target();
  sp.r = r;
  sp.s = s;
  const Triangle t = cone(s);
  sp.p = t.cone;
  sp.p_out = t.incl;
  const auto sigma = find_section(t.incl);
  if (!sigma) throw std::logic_error("cone of a split mono has no section");
  sp.p_in = *sigma - compose(s, compose(r, *sigma));
  return sp;
}

std::vector<Triangle> retract_tower(const ChainMap& r, const ChainMap& s, int n) {
  if (n < 0) throw std::invalid_argument("tower length must be non-negative");
  const Splitting sp = make_splitting(r, s);
  std::vector<Triangle> out;
  for (int j = 0; j < n; ++j) {
    out.push_back(cone(shift(sp.r, 2 * j)));
    out.push_back(cone(shift(sp.p_out, 2 * j + 1)));
  }
  return out;
}

std::string verify_split_triangle(const Triangle& t, const Complex& expected) {
  if (!is_chain_map(t.f)) return "first map is not a chain map";
  if (t.cone != cone(t.f).cone) return "third vertex is not the cone";
  // Rotation of a split triangle: f is split epi, so B -> Cone(f) vanishes.
  if (!find_section(t.f)) return "first map is not split epi";
  if (!is_nullhomotopic(t.incl)) return "second map is not nullhomotopic";
  if (!is_isomorphic(t.cone, expected)) return "third vertex is not homotopy equivalent to the expected object";
  return {};
}

Boundedness boundedness(const Complex& m) {
  Boundedness b;
  b.above = b.below = true;
  if (const auto sup = minimal_support(m)) {
    b.above_index = -sup->first;
    b.below_index = -sup->second;
  }
  return b;
}

}  // namespace wstruct
