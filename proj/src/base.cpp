#include "wstruct/base.hpp"

#include <sstream>
#include <stdexcept>

namespace wstruct {

std::shared_ptr<const BaseCategory> BaseCategory::vect(Field f) {
  auto c = std::make_shared<BaseCategory>();
  c->backend_ = Backend::Vect;
  c->quiver_ = Quiver::single_vertex();
  c->field_ = f;
  return c;
}

std::shared_ptr<const BaseCategory> BaseCategory::quiver(Quiver q, Field f) {
  auto c = std::make_shared<BaseCategory>();
  c->backend_ = Backend::Quiver;
  c->quiver_ = std::move(q);
  c->field_ = f;
  return c;
}

std::string BaseCategory::describe() const {
  if (backend_ == Backend::Vect) return "vect/" + field_.name();
  return "quiver(" + std::to_string(quiver_.vertex_count()) + " vertices, " +
         std::to_string(quiver_.arrows().size()) + " arrows)/" + field_.name();
}

void require_same_category(const CategoryPtr& a, const CategoryPtr& b) {
  if (!a || !b) throw std::invalid_argument("object without a base category");
  if (a != b && !(*a == *b))
    throw std::invalid_argument("base category mismatch: " + a->describe() + " vs " + b->describe());
}

BaseObject::BaseObject(CategoryPtr cat, std::vector<int> mult) : cat_(std::move(cat)), mult_(std::move(mult)) {
  if (!cat_) throw std::invalid_argument("base object needs a category");
  if (mult_.size() != cat_->vertex_count())
    throw std::invalid_argument("multiplicity vector has " + std::to_string(mult_.size()) + " entries, expected " +
                                std::to_string(cat_->vertex_count()));
  offset_.resize(mult_.size());
  for (std::size_t v = 0; v < mult_.size(); ++v) {
    if (mult_[v] < 0) throw std::invalid_argument("negative multiplicity");
    offset_[v] = vertex_of_.size();
    for (int k = 0; k < mult_[v]; ++k) vertex_of_.push_back(static_cast<int>(v));
  }
}

BaseObject BaseObject::zero(CategoryPtr cat) {
  const std::size_t n = cat->vertex_count();
  return BaseObject(std::move(cat), std::vector<int>(n, 0));
}

BaseObject BaseObject::indecomposable(CategoryPtr cat, int vertex) {
  std::vector<int> m(cat->vertex_count(), 0);
  m.at(static_cast<std::size_t>(vertex)) = 1;
  return BaseObject(std::move(cat), std::move(m));
}

std::string BaseObject::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  for (std::size_t v = 0; v < mult_.size(); ++v) {
    if (mult_[v] == 0) continue;
    if (!s.empty()) s += "+";
    const std::string name = cat_->backend() == Backend::Vect ? "k" : "P" + cat_->quiver().vertices()[v];
    s += (mult_[v] > 1 ? std::to_string(mult_[v]) : "") + name;
  }
  return s;
}

BaseObject direct_sum(const BaseObject& a, const BaseObject& b) {
  require_same_category(a.category(), b.category());
  std::vector<int> m = a.mult();
  for (std::size_t v = 0; v < m.size(); ++v) m[v] += b.mult()[v];
  return BaseObject(a.category(), std::move(m));
}

std::size_t sum_index_first(const BaseObject& a, const BaseObject& b, std::size_t k) {
  const int v = a.vertex_of(k);
  return a.offset(v) + b.offset(v) + (k - a.offset(v));
}

std::size_t sum_index_second(const BaseObject& a, const BaseObject& b, std::size_t k) {
  const int v = b.vertex_of(k);
  return a.offset(v) + b.offset(v) + static_cast<std::size_t>(a.mult(v)) + (k - b.offset(v));
}

BaseMorphism::BaseMorphism(BaseObject source, BaseObject target) : src_(std::move(source)), tgt_(std::move(target)) {
  require_same_category(src_.category(), tgt_.category());
  field_ = src_.category()->field();
  layout();
}

void BaseMorphism::layout() {
  const Quiver& q = quiver();
  entry_off_.assign(tgt_.size() * src_.size(), 0);
  std::size_t off = 0;
  for (std::size_t i = 0; i < tgt_.size(); ++i)
    for (std::size_t j = 0; j < src_.size(); ++j) {
      entry_off_[i * src_.size() + j] = off;
      off += q.paths_between(tgt_.vertex_of(i), src_.vertex_of(j)).size();
    }
  coords_.assign(off, Scalar::zero(field_));
}

BaseMorphism BaseMorphism::identity(const BaseObject& x) {
  BaseMorphism m(x, x);
  for (std::size_t i = 0; i < x.size(); ++i) m.set_trivial(i, i, Scalar::one(m.field_));
  return m;
}

const std::vector<int>& BaseMorphism::paths(std::size_t i, std::size_t j) const {
  return quiver().paths_between(tgt_.vertex_of(i), src_.vertex_of(j));
}

const Scalar& BaseMorphism::coef(std::size_t i, std::size_t j, int path) const {
  const Path& p = quiver().path(path);
  if (p.start != tgt_.vertex_of(i) || p.end != src_.vertex_of(j))
    throw std::invalid_argument("path does not fit morphism entry");
  return coords_[entry_offset(i, j) + static_cast<std::size_t>(quiver().local_index(path))];
}

Scalar& BaseMorphism::coef(std::size_t i, std::size_t j, int path) {
  return const_cast<Scalar&>(static_cast<const BaseMorphism&>(*this).coef(i, j, path));
}

Scalar BaseMorphism::trivial_part(std::size_t i, std::size_t j) const {
  const int v = tgt_.vertex_of(i);
  if (v != src_.vertex_of(j)) return Scalar::zero(field_);
  return coef(i, j, v);
}

void BaseMorphism::set_trivial(std::size_t i, std::size_t j, const Scalar& s) {
  const int v = tgt_.vertex_of(i);
  if (v != src_.vertex_of(j)) throw std::invalid_argument("trivial path needs equal vertices");
  coef(i, j, v) = s;
}

BaseMorphism BaseMorphism::from_coordinates(const BaseObject& source, const BaseObject& target,
                                            std::vector<Scalar> coords) {
  BaseMorphism m(source, target);
  if (coords.size() != m.coords_.size())
    throw std::invalid_argument("coordinate vector has wrong length");
  m.coords_ = std::move(coords);
  return m;
}

bool BaseMorphism::is_zero() const {
  for (const auto& c : coords_)
    if (!c.is_zero()) return false;
  return true;
}

bool BaseMorphism::is_radical() const {
  for (std::size_t i = 0; i < tgt_.size(); ++i)
    for (std::size_t j = 0; j < src_.size(); ++j)
      if (!trivial_part(i, j).is_zero()) return false;
  return true;
}

BaseMorphism BaseMorphism::operator-() const {
  BaseMorphism m = *this;
  for (auto& c : m.coords_) c = -c;
  return m;
}

BaseMorphism& BaseMorphism::operator+=(const BaseMorphism& o) {
  if (src_ != o.src_ || tgt_ != o.tgt_) throw std::invalid_argument("adding morphisms of different shapes");
  for (std::size_t k = 0; k < coords_.size(); ++k) coords_[k] += o.coords_[k];
  return *this;
}

BaseMorphism& BaseMorphism::operator-=(const BaseMorphism& o) {
  if (src_ != o.src_ || tgt_ != o.tgt_) throw std::invalid_argument("subtracting morphisms of different shapes");
  for (std::size_t k = 0; k < coords_.size(); ++k) coords_[k] -= o.coords_[k];
  return *this;
}

BaseMorphism& BaseMorphism::operator*=(const Scalar& s) {
  for (auto& c : coords_) c *= s;
  return *this;
}

namespace {
BaseObject object_of(const BaseObject& x, const std::vector<std::size_t>& idx) {
  std::vector<int> m(x.mult().size(), 0);
  for (auto k : idx) ++m[static_cast<std::size_t>(x.vertex_of(k))];
  BaseObject out(x.category(), m);
  // Summands are ordered by vertex; require idx to respect that order.
  for (std::size_t a = 0; a < idx.size(); ++a)
    if (out.vertex_of(a) != x.vertex_of(idx[a]))
      throw std::invalid_argument("summand selection must be ordered by vertex");
  return out;
}
}  // namespace

BaseMorphism BaseMorphism::submorphism(const std::vector<std::size_t>& rows,
                                       const std::vector<std::size_t>& cols) const {
  BaseMorphism m(object_of(src_, cols), object_of(tgt_, rows));
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = 0; b < cols.size(); ++b) {
      const std::size_t n = paths(rows[a], cols[b]).size();
      const std::size_t from = entry_offset(rows[a], cols[b]), to = m.entry_offset(a, b);
      for (std::size_t t = 0; t < n; ++t) m.coords_[to + t] = coords_[from + t];
    }
  return m;
}

void BaseMorphism::place(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols,
                         const BaseMorphism& block) {
  if (rows.size() != block.tgt_.size() || cols.size() != block.src_.size())
    throw std::invalid_argument("block placement shape mismatch");
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = 0; b < cols.size(); ++b) {
      if (tgt_.vertex_of(rows[a]) != block.tgt_.vertex_of(a) || src_.vertex_of(cols[b]) != block.src_.vertex_of(b))
        throw std::invalid_argument("block placement vertex mismatch");
      const std::size_t n = paths(rows[a], cols[b]).size();
      const std::size_t from = block.entry_offset(a, b), to = entry_offset(rows[a], cols[b]);
      for (std::size_t t = 0; t < n; ++t) coords_[to + t] = block.coords_[from + t];
    }
}

std::string BaseMorphism::to_string() const {
  std::ostringstream os;
  os << src_.to_string() << " -> " << tgt_.to_string() << " [";
  bool first = true;
  for (std::size_t i = 0; i < tgt_.size(); ++i)
    for (std::size_t j = 0; j < src_.size(); ++j)
      for (const int p : paths(i, j)) {
        const Scalar& c = coef(i, j, p);
        if (c.is_zero()) continue;
        os << (first ? "" : ", ") << "(" << i << "," << j << ")" << c << "*" << quiver().path_label(p);
        first = false;
      }
  os << "]";
  return os.str();
}

BaseMorphism compose(const BaseMorphism& f, const BaseMorphism& g) {
  if (g.target() != f.source())
    throw std::invalid_argument("compose: target " + g.target().to_string() + " != source " + f.source().to_string());
  const Quiver& q = f.quiver();
  BaseMorphism out(g.source(), f.target());
  const std::size_t nz = f.target().size(), ny = f.source().size(), nx = g.source().size();
  std::vector<Scalar> c = out.coordinates();
  for (std::size_t z = 0; z < nz; ++z)
    for (std::size_t k = 0; k < ny; ++k)
      for (const int qp : f.paths(z, k)) {
        const Scalar& a = f.coef(z, k, qp);
        if (a.is_zero()) continue;
        for (std::size_t x = 0; x < nx; ++x)
          for (const int pp : g.paths(k, x)) {
            const Scalar& b = g.coef(k, x, pp);
            if (b.is_zero()) continue;
            const int r = q.concat(qp, pp);
            c[out.entry_offset(z, x) + static_cast<std::size_t>(q.local_index(r))] += a * b;
          }
      }
  return BaseMorphism::from_coordinates(g.source(), f.target(), std::move(c));
}

std::size_t hom_dimension(const BaseObject& x, const BaseObject& y) { return BaseMorphism(x, y).coordinate_count(); }

Matrix left_compose_matrix(const BaseMorphism& f, const BaseObject& x) {
  const Quiver& q = f.quiver();
  const BaseMorphism dom(x, f.source()), cod(x, f.target());
  Matrix m(f.field(), cod.coordinate_count(), dom.coordinate_count());
  for (std::size_t k = 0; k < f.source().size(); ++k)
    for (std::size_t j = 0; j < x.size(); ++j)
      for (const int p : dom.paths(k, j)) {
        const std::size_t col = dom.entry_offset(k, j) + static_cast<std::size_t>(q.local_index(p));
        for (std::size_t z = 0; z < f.target().size(); ++z)
          for (const int qp : f.paths(z, k)) {
            const Scalar& a = f.coef(z, k, qp);
            if (a.is_zero()) continue;
            const int r = q.concat(qp, p);
            m(cod.entry_offset(z, j) + static_cast<std::size_t>(q.local_index(r)), col) += a;
          }
      }
  return m;
}

Matrix right_compose_matrix(const BaseMorphism& g, const BaseObject& y) {
  const Quiver& q = g.quiver();
  const BaseMorphism dom(g.target(), y), cod(g.source(), y);
  Matrix m(g.field(), cod.coordinate_count(), dom.coordinate_count());
  for (std::size_t z = 0; z < y.size(); ++z)
    for (std::size_t k = 0; k < g.target().size(); ++k)
      for (const int qp : dom.paths(z, k)) {
        const std::size_t col = dom.entry_offset(z, k) + static_cast<std::size_t>(q.local_index(qp));
        for (std::size_t x = 0; x < g.source().size(); ++x)
          for (const int p : g.paths(k, x)) {
            const Scalar& b = g.coef(k, x, p);
            if (b.is_zero()) continue;
            const int r = q.concat(qp, p);
            m(cod.entry_offset(z, x) + static_cast<std::size_t>(q.local_index(r)), col) += b;
          }
      }
  return m;
}

IdempotentSplit split_idempotent(const BaseMorphism& e) {
  if (e.source() != e.target()) throw std::invalid_argument("split_idempotent: not an endomorphism");
  if (compose(e, e) != e) throw std::invalid_argument("split_idempotent: morphism is not idempotent");
  const BaseObject& x = e.source();
  const Field f = e.field();
  const std::size_t nv = x.mult().size();

  // Rank factorization E_v = S_v R_v of the trivial-path part at each vertex.
  std::vector<Matrix> s_parts(nv), r_parts(nv);
  std::vector<int> image_mult(nv, 0);
  for (std::size_t v = 0; v < nv; ++v) {
    const std::size_t n = static_cast<std::size_t>(x.mult(static_cast<int>(v)));
    const std::size_t off = x.offset(static_cast<int>(v));
    Matrix ev(f, n, n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) ev(a, b) = e.trivial_part(off + a, off + b);
    const auto piv = independent_columns(ev);
    Matrix sv(f, n, piv.size());
    for (std::size_t c = 0; c < piv.size(); ++c) sv.set_block(0, c, ev.column(piv[c]));
    s_parts[v] = sv;
    r_parts[v] = solve(sv, ev).value();
    image_mult[v] = static_cast<int>(piv.size());
  }
  const BaseObject im(x.category(), image_mult);
  BaseMorphism s0(im, x), r0(x, im);
  for (std::size_t v = 0; v < nv; ++v) {
    const std::size_t xo = x.offset(static_cast<int>(v)), io = im.offset(static_cast<int>(v));
    for (std::size_t a = 0; a < s_parts[v].rows(); ++a)
      for (std::size_t b = 0; b < s_parts[v].cols(); ++b) {
        s0.set_trivial(xo + a, io + b, s_parts[v](a, b));
        r0.set_trivial(io + b, xo + a, r_parts[v](b, a));
      }
  }

  const BaseMorphism s = compose(e, s0);
  const BaseMorphism rr = compose(r0, e);
  // r s = I + n with n radical, hence nilpotent: invert by a finite Neumann series.
  const BaseMorphism id = BaseMorphism::identity(im);
  const BaseMorphism n = compose(rr, s) - id;
  BaseMorphism inv = id, term = id;
  while (true) {
    term = -compose(n, term);
    if (term.is_zero()) break;
    inv += term;
  }
  const BaseMorphism r = compose(inv, rr);
  if (compose(r, s) != id || compose(s, r) != e)
    throw std::logic_error("split_idempotent: splitting equations failed");
  return IdempotentSplit{x, e, im, s, r};
}

bool is_retract_base(const BaseObject& n, const BaseObject& m) {
  require_same_category(n.category(), m.category());
  for (std::size_t v = 0; v < n.mult().size(); ++v)
    if (n.mult()[v] > m.mult()[v]) return false;
  return true;
}

}  // namespace wstruct
