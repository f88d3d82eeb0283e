#include "wstruct/complex.hpp"

#include <sstream>
#include <stdexcept>

namespace wstruct {

namespace {
std::size_t idx(int i, int lo) { return static_cast<std::size_t>(i - lo); }

Scalar sign(Field f, int k) { return Scalar(f, (k % 2 == 0) ? 1L : -1L); }
}  // namespace

Complex Complex::make(CategoryPtr cat, int lo, std::vector<BaseObject> terms, std::vector<BaseMorphism> diffs,
                      bool check) {
  if (!cat) throw std::invalid_argument("complex needs a base category");
  const std::size_t n = terms.size();
  if (n == 0 ? !diffs.empty() : diffs.size() + 1 != n)
    throw std::invalid_argument("complex with " + std::to_string(n) + " terms needs " +
                                std::to_string(n ? n - 1 : 0) + " differentials");
  for (std::size_t k = 0; k < n; ++k) require_same_category(cat, terms[k].category());
  if (check) {
    for (std::size_t k = 0; k + 1 < n; ++k)
      if (diffs[k].source() != terms[k] || diffs[k].target() != terms[k + 1])
        throw std::invalid_argument("differential in degree " + std::to_string(lo + static_cast<int>(k)) +
                                    " has the wrong shape");
    for (std::size_t k = 0; k + 2 < n; ++k)
      if (!compose(diffs[k + 1], diffs[k]).is_zero())
        throw std::invalid_argument("d∘d != 0 starting in degree " + std::to_string(lo + static_cast<int>(k)));
  }
  // Trim zero terms at both ends.
  std::size_t a = 0, b = n;
  while (a < b && terms[a].is_zero()) ++a;
  while (b > a && terms[b - 1].is_zero()) --b;
  Complex c(std::move(cat));
  if (a == b) return c;
  c.lo_ = lo + static_cast<int>(a);
  c.terms_.assign(terms.begin() + static_cast<std::ptrdiff_t>(a), terms.begin() + static_cast<std::ptrdiff_t>(b));
  c.diffs_.assign(diffs.begin() + static_cast<std::ptrdiff_t>(a), diffs.begin() + static_cast<std::ptrdiff_t>(b - 1));
  return c;
}

Complex Complex::stalk(const BaseObject& x, int degree) { return make(x.category(), degree, {x}, {}); }

BaseObject Complex::term(int i) const {
  if (i < lo_ || i > hi()) return BaseObject::zero(cat_);
  return terms_[idx(i, lo_)];
}

BaseMorphism Complex::diff(int i) const {
  if (i >= lo_ && i < hi()) return diffs_[idx(i, lo_)];
  return BaseMorphism::zero(term(i), term(i + 1));
}

std::size_t Complex::total_size() const {
  std::size_t s = 0;
  for (const auto& t : terms_) s += t.size();
  return s;
}

std::string Complex::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  for (int i = lo_; i <= hi(); ++i) {
    os << (i > lo_ ? " -> " : "") << "[" << i << ":" << term(i).to_string() << "]";
  }
  return os.str();
}

GradedMap::GradedMap(Complex source, Complex target, int degree)
    : src_(std::move(source)), tgt_(std::move(target)), deg_(degree) {
  if (src_.category() && tgt_.category()) require_same_category(src_.category(), tgt_.category());
  for (int i = src_.lo(); i <= src_.hi(); ++i) comp_.push_back(BaseMorphism::zero(src_.term(i), tgt_.term(i + deg_)));
}

GradedMap GradedMap::identity(const Complex& m) {
  GradedMap f(m, m, 0);
  for (int i = m.lo(); i <= m.hi(); ++i) f.comp_[idx(i, m.lo())] = BaseMorphism::identity(m.term(i));
  return f;
}

GradedMap GradedMap::differential(const Complex& m) {
  GradedMap f(m, m, 1);
  for (int i = m.lo(); i <= m.hi(); ++i) f.comp_[idx(i, m.lo())] = m.diff(i);
  return f;
}

BaseMorphism GradedMap::component(int i) const {
  if (i < src_.lo() || i > src_.hi()) return BaseMorphism::zero(src_.term(i), tgt_.term(i + deg_));
  return comp_[idx(i, src_.lo())];
}

void GradedMap::set_component(int i, BaseMorphism f) {
  if (f.source() != src_.term(i) || f.target() != tgt_.term(i + deg_))
    throw std::invalid_argument("graded map component in degree " + std::to_string(i) + " has the wrong shape");
  if (i < src_.lo() || i > src_.hi()) return;  // both ends zero
  comp_[idx(i, src_.lo())] = std::move(f);
}

bool GradedMap::is_zero() const {
  for (const auto& c : comp_)
    if (!c.is_zero()) return false;
  return true;
}

std::string GradedMap::to_string() const {
  std::ostringstream os;
  os << "map of degree " << deg_ << " {";
  for (int i = src_.lo(); i <= src_.hi(); ++i) os << " " << i << ": " << component(i).to_string() << ";";
  os << " }";
  return os.str();
}

void GradedMap::check_compatible(const GradedMap& o) const {
  if (deg_ != o.deg_ || src_ != o.src_ || tgt_ != o.tgt_)
    throw std::invalid_argument("graded maps with different source, target or degree");
}

GradedMap GradedMap::operator-() const {
  GradedMap f = *this;
  for (auto& c : f.comp_) c = -c;
  return f;
}

GradedMap& GradedMap::operator+=(const GradedMap& o) {
  check_compatible(o);
  for (std::size_t k = 0; k < comp_.size(); ++k) comp_[k] += o.comp_[k];
  return *this;
}

GradedMap& GradedMap::operator-=(const GradedMap& o) {
  check_compatible(o);
  for (std::size_t k = 0; k < comp_.size(); ++k) comp_[k] -= o.comp_[k];
  return *this;
}

GradedMap& GradedMap::operator*=(const Scalar& s) {
  for (auto& c : comp_) c *= s;
  return *this;
}

GradedMap compose(const GradedMap& f, const GradedMap& g) {
  if (g.target() != f.source()) throw std::invalid_argument("compose: graded maps are not composable");
  GradedMap h(g.source(), f.target(), f.degree() + g.degree());
  for (int i = g.source().lo(); i <= g.source().hi(); ++i) {
    const BaseMorphism gi = g.component(i);
    if (gi.target().is_zero()) continue;
    h.set_component(i, compose(f.component(i + g.degree()), gi));
  }
  return h;
}

GradedMap commutator(const GradedMap& f) {
  GradedMap a = compose(GradedMap::differential(f.target()), f);
  GradedMap b = compose(f, GradedMap::differential(f.source()));
  return f.degree() % 2 == 0 ? a - b : a + b;
}

bool is_chain_map(const GradedMap& f) { return f.degree() == 0 && commutator(f).is_zero(); }

std::size_t graded_dimension(const Complex& source, const Complex& target, int p) {
  std::size_t n = 0;
  for (int i = source.lo(); i <= source.hi(); ++i) n += hom_dimension(source.term(i), target.term(i + p));
  return n;
}

namespace {
// Offset of the degree-i block in the coordinates of degree-p maps source -> target.
std::vector<std::size_t> graded_offsets(const Complex& source, const Complex& target, int p) {
  std::vector<std::size_t> off;
  std::size_t n = 0;
  for (int i = source.lo(); i <= source.hi(); ++i) {
    off.push_back(n);
    n += hom_dimension(source.term(i), target.term(i + p));
  }
  off.push_back(n);
  return off;
}
}  // namespace

std::vector<Scalar> graded_coordinates(const GradedMap& f) {
  std::vector<Scalar> out;
  for (int i = f.source().lo(); i <= f.source().hi(); ++i) {
    const BaseMorphism c = f.component(i);
    out.insert(out.end(), c.coordinates().begin(), c.coordinates().end());
  }
  return out;
}

GradedMap graded_from_coordinates(const Complex& source, const Complex& target, int p,
                                  const std::vector<Scalar>& coords) {
  GradedMap f(source, target, p);
  std::size_t pos = 0;
  for (int i = source.lo(); i <= source.hi(); ++i) {
    const BaseObject s = source.term(i), t = target.term(i + p);
    const std::size_t n = hom_dimension(s, t);
    if (pos + n > coords.size()) throw std::invalid_argument("graded coordinate vector too short");
    f.set_component(i, BaseMorphism::from_coordinates(
                           s, t, std::vector<Scalar>(coords.begin() + static_cast<std::ptrdiff_t>(pos),
                                                     coords.begin() + static_cast<std::ptrdiff_t>(pos + n))));
    pos += n;
  }
  if (pos != coords.size()) throw std::invalid_argument("graded coordinate vector too long");
  return f;
}

GradedMap graded_from_column(const Complex& source, const Complex& target, int p, const Matrix& m,
                             std::size_t column) {
  std::vector<Scalar> c;
  c.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) c.push_back(m(r, column));
  return graded_from_coordinates(source, target, p, c);
}

Matrix coordinate_column(const GradedMap& f) {
  const auto c = graded_coordinates(f);
  Matrix m(f.source().field(), c.size(), 1);
  for (std::size_t r = 0; r < c.size(); ++r) m(r, 0) = c[r];
  return m;
}

Matrix post_compose_matrix(const GradedMap& f, const Complex& x, int p) {
  const auto dom = graded_offsets(x, f.source(), p);
  const auto cod = graded_offsets(x, f.target(), p + f.degree());
  Matrix m(x.field(), cod.back(), dom.back());
  for (int i = x.lo(); i <= x.hi(); ++i) {
    const std::size_t k = idx(i, x.lo());
    if (dom[k] == dom[k + 1] || cod[k] == cod[k + 1]) continue;
    m.set_block(cod[k], dom[k], left_compose_matrix(f.component(i + p), x.term(i)));
  }
  return m;
}

Matrix pre_compose_matrix(const GradedMap& g, const Complex& y, int p) {
  const Complex& s = g.source();
  const Complex& t = g.target();
  const int q = g.degree();
  const auto dom = graded_offsets(t, y, p);
  const auto cod = graded_offsets(s, y, p + q);
  Matrix m(y.field(), cod.back(), dom.back());
  for (int i = s.lo(); i <= s.hi(); ++i) {
    const int j = i + q;  // psi^j ∘ g^i
    if (j < t.lo() || j > t.hi()) continue;
    const std::size_t rk = idx(i, s.lo()), ck = idx(j, t.lo());
    if (cod[rk] == cod[rk + 1] || dom[ck] == dom[ck + 1]) continue;
    m.set_block(cod[rk], dom[ck], right_compose_matrix(g.component(i), y.term(i + q + p)));
  }
  return m;
}

Matrix commutator_matrix(const Complex& m, const Complex& n, int p) {
  Matrix a = post_compose_matrix(GradedMap::differential(n), m, p);
  Matrix b = pre_compose_matrix(GradedMap::differential(m), n, p);
  return p % 2 == 0 ? a - b : a + b;
}

Complex shift(const Complex& m, int k) {
  if (m.is_zero()) return m;
  std::vector<BaseObject> terms;
  std::vector<BaseMorphism> diffs;
  const Scalar s = sign(m.field(), k);
  for (int i = m.lo(); i <= m.hi(); ++i) {
    terms.push_back(m.term(i));
    if (i < m.hi()) diffs.push_back(m.diff(i) * s);
  }
  return Complex::make(m.category(), m.lo() - k, std::move(terms), std::move(diffs), false);
}

GradedMap shift(const GradedMap& f, int k) {
  GradedMap g(shift(f.source(), k), shift(f.target(), k), f.degree());
  for (int i = g.source().lo(); i <= g.source().hi(); ++i) g.set_component(i, f.component(i + k));
  return g;
}

std::vector<std::size_t> cone_b_indices(const ChainMap& f, int i) {
  const BaseObject b = f.target().term(i), a = f.source().term(i + 1);
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < b.size(); ++k) out.push_back(sum_index_first(b, a, k));
  return out;
}

std::vector<std::size_t> cone_a_indices(const ChainMap& f, int i) {
  const BaseObject b = f.target().term(i), a = f.source().term(i + 1);
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < a.size(); ++k) out.push_back(sum_index_second(b, a, k));
  return out;
}

Triangle cone(const ChainMap& f) {
  if (f.degree() != 0) throw std::invalid_argument("cone of a map of nonzero degree");
  const Complex& A = f.source();
  const Complex& B = f.target();
  const CategoryPtr cat = B.category() ? B.category() : A.category();
  const bool a_empty = A.is_zero(), b_empty = B.is_zero();
  const int lo = a_empty ? B.lo() : b_empty ? A.lo() - 1 : std::min(B.lo(), A.lo() - 1);
  const int hi = a_empty ? B.hi() : b_empty ? A.hi() - 1 : std::max(B.hi(), A.hi() - 1);
  std::vector<BaseObject> terms;
  std::vector<BaseMorphism> diffs;
  for (int i = lo; i <= hi; ++i) terms.push_back(direct_sum(B.term(i), A.term(i + 1)));
  for (int i = lo; i < hi; ++i) {
    BaseMorphism d(terms[idx(i, lo)], terms[idx(i + 1, lo)]);
    const auto b0 = cone_b_indices(f, i), a0 = cone_a_indices(f, i);
    const auto b1 = cone_b_indices(f, i + 1), a1 = cone_a_indices(f, i + 1);
    d.place(b1, b0, B.diff(i));
    d.place(b1, a0, f.component(i + 1));
    d.place(a1, a0, -A.diff(i + 1));
    diffs.push_back(std::move(d));
  }
  Triangle t;
  t.f = f;
  if (terms.empty()) {
    t.cone = Complex(cat);
  } else {
    t.cone = Complex::make(cat, lo, std::move(terms), std::move(diffs), false);
  }
  t.incl = ChainMap(B, t.cone, 0);
  t.proj = ChainMap(t.cone, shift(A, 1), 0);
  for (int i = t.cone.lo(); i <= t.cone.hi(); ++i) {
    const BaseObject ci = t.cone.term(i);
    if (!B.term(i).is_zero()) {
      BaseMorphism in(B.term(i), ci);
      in.place(cone_b_indices(f, i), [&] {
        std::vector<std::size_t> v;
        for (std::size_t k = 0; k < B.term(i).size(); ++k) v.push_back(k);
        return v;
      }(), BaseMorphism::identity(B.term(i)));
      t.incl.set_component(i, in);
    }
    if (!A.term(i + 1).is_zero()) {
      BaseMorphism pr(ci, A.term(i + 1));
      std::vector<std::size_t> rows;
      for (std::size_t k = 0; k < A.term(i + 1).size(); ++k) rows.push_back(k);
      pr.place(rows, cone_a_indices(f, i), BaseMorphism::identity(A.term(i + 1)));
      t.proj.set_component(i, pr);
    }
  }
  return t;
}

ChainMap cone_shift_iso(const ChainMap& f, int k) {
  const Complex src = shift(cone(f).cone, k);
  const Triangle t = cone(shift(f, k));
  ChainMap theta(src, t.cone, 0);
  const Scalar s = sign(t.cone.field(), k);
  for (int i = t.cone.lo(); i <= t.cone.hi(); ++i) {
    BaseMorphism c = BaseMorphism::identity(t.cone.term(i));
    for (const auto a : cone_a_indices(shift(f, k), i)) c.set_trivial(a, a, s);
    theta.set_component(i, c);
  }
  return theta;
}

DirectSum direct_sum(const Complex& a, const Complex& b) {
  const CategoryPtr cat = a.category() ? a.category() : b.category();
  DirectSum ds;
  if (a.is_zero() && b.is_zero()) {
    ds.sum = Complex(cat);
  } else {
    const int lo = a.is_zero() ? b.lo() : b.is_zero() ? a.lo() : std::min(a.lo(), b.lo());
    const int hi = a.is_zero() ? b.hi() : b.is_zero() ? a.hi() : std::max(a.hi(), b.hi());
    std::vector<BaseObject> terms;
    std::vector<BaseMorphism> diffs;
    for (int i = lo; i <= hi; ++i) terms.push_back(direct_sum(a.term(i), b.term(i)));
    for (int i = lo; i < hi; ++i) {
      BaseMorphism d(terms[idx(i, lo)], terms[idx(i + 1, lo)]);
      std::vector<std::size_t> r1, c1, r2, c2;
      for (std::size_t k = 0; k < a.term(i + 1).size(); ++k) r1.push_back(sum_index_first(a.term(i + 1), b.term(i + 1), k));
      for (std::size_t k = 0; k < a.term(i).size(); ++k) c1.push_back(sum_index_first(a.term(i), b.term(i), k));
      for (std::size_t k = 0; k < b.term(i + 1).size(); ++k) r2.push_back(sum_index_second(a.term(i + 1), b.term(i + 1), k));
      for (std::size_t k = 0; k < b.term(i).size(); ++k) c2.push_back(sum_index_second(a.term(i), b.term(i), k));
      d.place(r1, c1, a.diff(i));
      d.place(r2, c2, b.diff(i));
      diffs.push_back(std::move(d));
    }
    ds.sum = Complex::make(cat, lo, std::move(terms), std::move(diffs), false);
  }
  ds.in1 = ChainMap(a, ds.sum);
  ds.in2 = ChainMap(b, ds.sum);
  ds.pr1 = ChainMap(ds.sum, a);
  ds.pr2 = ChainMap(ds.sum, b);
  for (int i = ds.sum.lo(); i <= ds.sum.hi(); ++i) {
    const BaseObject ai = a.term(i), bi = b.term(i), si = ds.sum.term(i);
    std::vector<std::size_t> ia, ib, la, lb;
    for (std::size_t k = 0; k < ai.size(); ++k) {
      ia.push_back(sum_index_first(ai, bi, k));
      la.push_back(k);
    }
    for (std::size_t k = 0; k < bi.size(); ++k) {
      ib.push_back(sum_index_second(ai, bi, k));
      lb.push_back(k);
    }
    BaseMorphism e1(ai, si), e2(bi, si), p1(si, ai), p2(si, bi);
    e1.place(ia, la, BaseMorphism::identity(ai));
    e2.place(ib, lb, BaseMorphism::identity(bi));
    p1.place(la, ia, BaseMorphism::identity(ai));
    p2.place(lb, ib, BaseMorphism::identity(bi));
    ds.in1.set_component(i, e1);
    ds.in2.set_component(i, e2);
    ds.pr1.set_component(i, p1);
    ds.pr2.set_component(i, p2);
  }
  return ds;
}

Complex direct_sum_all(const CategoryPtr& cat, const std::vector<Complex>& parts) {
  Complex acc(cat);
  for (const auto& p : parts) acc = direct_sum(acc, p).sum;
  return acc;
}

ChainMap direct_sum_map(const ChainMap& f, const ChainMap& g) {
  const DirectSum s = direct_sum(f.source(), g.source());
  const DirectSum t = direct_sum(f.target(), g.target());
  return compose(t.in1, compose(f, s.pr1)) + compose(t.in2, compose(g, s.pr2));
}

std::pair<Complex, ChainMap> brutal_ge(const Complex& m, int k) {
  std::vector<BaseObject> terms;
  std::vector<BaseMorphism> diffs;
  const int lo = std::max(k, m.lo());
  for (int i = lo; i <= m.hi(); ++i) {
    terms.push_back(m.term(i));
    if (i < m.hi()) diffs.push_back(m.diff(i));
  }
  Complex x = terms.empty() ? Complex(m.category()) : Complex::make(m.category(), lo, terms, diffs, false);
  ChainMap inc(x, m);
  for (int i = x.lo(); i <= x.hi(); ++i) inc.set_component(i, BaseMorphism::identity(m.term(i)));
  return {x, inc};
}

std::pair<Complex, ChainMap> brutal_le(const Complex& m, int k) {
  std::vector<BaseObject> terms;
  std::vector<BaseMorphism> diffs;
  const int hi = std::min(k, m.hi());
  for (int i = m.lo(); i <= hi; ++i) {
    terms.push_back(m.term(i));
    if (i < hi) diffs.push_back(m.diff(i));
  }
  Complex y = terms.empty() ? Complex(m.category()) : Complex::make(m.category(), m.lo(), terms, diffs, false);
  ChainMap pr(m, y);
  for (int i = y.lo(); i <= y.hi(); ++i) pr.set_component(i, BaseMorphism::identity(m.term(i)));
  return {y, pr};
}

}  // namespace wstruct
