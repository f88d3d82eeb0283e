#include <stdexcept>

#include "wstruct/complex.hpp"

namespace wstruct {

namespace {

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = k;
  return v;
}

std::vector<std::size_t> all_but(std::size_t n, std::size_t skip) {
  std::vector<std::size_t> v;
  for (std::size_t k = 0; k < n; ++k)
    if (k != skip) v.push_back(k);
  return v;
}

Matrix stack2x2(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d) {
  return Matrix::vcat(Matrix::hcat(a, b), Matrix::hcat(c, d));
}

std::vector<Scalar> head(const Matrix& x, std::size_t n) {
  std::vector<Scalar> out;
  for (std::size_t r = 0; r < n; ++r) out.push_back(x(r, 0));
  return out;
}

}  // namespace

HomSpace hom_space(const Complex& m, const Complex& n) {
  HomSpace out;
  if (graded_dimension(m, n, 0) == 0) return out;
  const Matrix z = commutator_matrix(m, n, 0);
  const Matrix h = commutator_matrix(m, n, -1);
  const Matrix k = kernel_basis(z);
  const std::size_t rh = rank(h);
  out.dimension = k.cols() - rh;
  if (out.dimension == 0) return out;
  // Extend a basis of the nullhomotopic maps by kernel vectors.
  const auto piv = independent_columns(Matrix::hcat(h, k));
  for (const auto p : piv)
    if (p >= h.cols()) out.basis.push_back(graded_from_column(m, n, 0, k, p - h.cols()));
  return out;
}

std::size_t hom_dim(const Complex& m, const Complex& n) {
  const std::size_t g0 = graded_dimension(m, n, 0);
  if (g0 == 0) return 0;
  return g0 - rank(commutator_matrix(m, n, 0)) - rank(commutator_matrix(m, n, -1));
}

std::vector<ChainMap> chain_map_basis(const Complex& m, const Complex& n) {
  std::vector<ChainMap> out;
  if (graded_dimension(m, n, 0) == 0) return out;
  const Matrix k = kernel_basis(commutator_matrix(m, n, 0));
  for (std::size_t c = 0; c < k.cols(); ++c) out.push_back(graded_from_column(m, n, 0, k, c));
  return out;
}

std::optional<GradedMap> nullhomotopy(const ChainMap& f) {
  const Complex& m = f.source();
  const Complex& n = f.target();
  if (f.is_zero()) return GradedMap(m, n, -1);
  const auto x = solve(commutator_matrix(m, n, -1), coordinate_column(f));
  if (!x) return std::nullopt;
  return graded_from_column(m, n, -1, *x, 0);
}

bool is_nullhomotopic(const ChainMap& f) { return nullhomotopy(f).has_value(); }

bool homotopic(const ChainMap& f, const ChainMap& g) { return is_nullhomotopic(f - g); }

std::optional<ChainMap> find_section(const ChainMap& f) {
  const Complex& m = f.source();
  const Complex& n = f.target();
  const Field fl = n.category()->field();
  // Unknowns (s, h): s chain map n -> m, f s - (d h + h d) = id_n.
  const Matrix z = commutator_matrix(n, m, 0);
  const Matrix p = post_compose_matrix(f, n, 0);
  const Matrix h = commutator_matrix(n, n, -1);
  const Matrix a = stack2x2(z, Matrix(fl, z.rows(), h.cols()), p, -h);
  const Matrix rhs = Matrix::vcat(Matrix(fl, z.rows(), 1), coordinate_column(GradedMap::identity(n)));
  const auto x = solve(a, rhs);
  if (!x) return std::nullopt;
  return graded_from_coordinates(n, m, 0, head(*x, z.cols()));
}

std::optional<ChainMap> find_retraction(const ChainMap& f) {
  const Complex& m = f.source();
  const Complex& n = f.target();
  const Field fl = m.category()->field();
  // Unknowns (r, h): r chain map n -> m, r f - (d h + h d) = id_m.
  const Matrix z = commutator_matrix(n, m, 0);
  const Matrix p = pre_compose_matrix(f, m, 0);
  const Matrix h = commutator_matrix(m, m, -1);
  const Matrix a = stack2x2(z, Matrix(fl, z.rows(), h.cols()), p, -h);
  const Matrix rhs = Matrix::vcat(Matrix(fl, z.rows(), 1), coordinate_column(GradedMap::identity(m)));
  const auto x = solve(a, rhs);
  if (!x) return std::nullopt;
  return graded_from_coordinates(n, m, 0, head(*x, z.cols()));
}

std::optional<ChainMap> lift_through(const ChainMap& f, const ChainMap& t) {
  if (t.target() != f.target()) throw std::invalid_argument("lift_through: t must end at the target of f");
  const Complex& x = t.source();
  const Complex& m = f.source();
  const Complex& n = f.target();
  const Field fl = n.category()->field();
  // Unknowns (l, h): l chain map x -> m, f l - (d h + h d) = t.
  const Matrix z = commutator_matrix(x, m, 0);
  const Matrix p = post_compose_matrix(f, x, 0);
  const Matrix h = commutator_matrix(x, n, -1);
  const Matrix a = stack2x2(z, Matrix(fl, z.rows(), h.cols()), p, -h);
  const Matrix rhs = Matrix::vcat(Matrix(fl, z.rows(), 1), coordinate_column(t));
  const auto sol = solve(a, rhs);
  if (!sol) return std::nullopt;
  return graded_from_coordinates(x, m, 0, head(*sol, z.cols()));
}

std::optional<ChainMap> map_from_cone(const ChainMap& f, const ChainMap& u) {
  if (u.source() != f.target()) throw std::invalid_argument("map_from_cone: u must start at the target of f");
  const auto kappa = nullhomotopy(compose(u, f));
  if (!kappa) return std::nullopt;
  const Triangle t = cone(f);
  const Complex& z = u.target();
  ChainMap phi(t.cone, z);
  for (int i = t.cone.lo(); i <= t.cone.hi(); ++i) {
    BaseMorphism c(t.cone.term(i), z.term(i));
    const auto rows = all_indices(z.term(i).size());
    c.place(rows, cone_b_indices(f, i), u.component(i));
    c.place(rows, cone_a_indices(f, i), kappa->component(i + 1));
    phi.set_component(i, c);
  }
  return phi;
}

namespace {

struct Working {
  CategoryPtr cat;
  int lo = 0;
  std::vector<BaseObject> terms;
  std::vector<BaseMorphism> diffs;  // diffs[k]: terms[k] -> terms[k+1]

  Complex complex() const {
    if (terms.empty()) return Complex(cat);
    return Complex::make(cat, lo, terms, diffs, false);
  }
};

Working working_copy(const Complex& m) {
  Working w{m.category(), m.lo(), {}, {}};
  for (int i = m.lo(); i <= m.hi(); ++i) {
    w.terms.push_back(m.term(i));
    if (i < m.hi()) w.diffs.push_back(m.diff(i));
  }
  return w;
}

struct Pivot {
  std::size_t k, row, col;
  Scalar lambda;
};

std::optional<Pivot> find_pivot(const Working& w) {
  for (std::size_t k = 0; k < w.diffs.size(); ++k) {
    const BaseMorphism& d = w.diffs[k];
    for (std::size_t r = 0; r < d.target().size(); ++r)
      for (std::size_t c = 0; c < d.source().size(); ++c) {
        Scalar t = d.trivial_part(r, c);
        if (!t.is_zero()) return Pivot{k, r, c, t};
      }
  }
  return std::nullopt;
}

BaseObject select(const BaseObject& x, const std::vector<std::size_t>& idx) {
  std::vector<int> m(x.mult().size(), 0);
  for (auto k : idx) ++m[static_cast<std::size_t>(x.vertex_of(k))];
  return BaseObject(x.category(), m);
}

struct StepMaps {
  std::vector<BaseMorphism> to_new, from_new;  // indexed like Working::terms
};

// Eliminates one invertible entry. When maps != nullptr the comparison maps
// old -> new and new -> old are recorded degreewise.
void eliminate(Working& w, const Pivot& pv, StepMaps* maps) {
  const std::size_t k = pv.k;
  const BaseMorphism d = w.diffs[k];
  const BaseObject xi = w.terms[k], xj = w.terms[k + 1];
  const auto rest_i = all_but(xi.size(), pv.col), rest_j = all_but(xj.size(), pv.row);
  const Scalar inv = pv.lambda.inverse();
  const BaseMorphism beta = d.submorphism({pv.row}, rest_i);
  const BaseMorphism gamma = d.submorphism(rest_j, {pv.col});
  const BaseMorphism delta = d.submorphism(rest_j, rest_i);
  const BaseObject ni = select(xi, rest_i), nj = select(xj, rest_j);

  if (maps) {
    maps->to_new.clear();
    maps->from_new.clear();
    for (std::size_t t = 0; t < w.terms.size(); ++t) {
      if (t == k) {
        BaseMorphism f(xi, ni), g(ni, xi);
        f.place(all_indices(ni.size()), rest_i, BaseMorphism::identity(ni));
        g.place(rest_i, all_indices(ni.size()), BaseMorphism::identity(ni));
        g.place({pv.col}, all_indices(ni.size()), -beta * inv);
        maps->to_new.push_back(f);
        maps->from_new.push_back(g);
      } else if (t == k + 1) {
        BaseMorphism f(xj, nj), g(nj, xj);
        f.place(all_indices(nj.size()), rest_j, BaseMorphism::identity(nj));
        f.place(all_indices(nj.size()), {pv.row}, -gamma * inv);
        g.place(rest_j, all_indices(nj.size()), BaseMorphism::identity(nj));
        maps->to_new.push_back(f);
        maps->from_new.push_back(g);
      } else {
        maps->to_new.push_back(BaseMorphism::identity(w.terms[t]));
        maps->from_new.push_back(BaseMorphism::identity(w.terms[t]));
      }
    }
  }

  w.diffs[k] = delta - compose(gamma, beta) * inv;
  if (k > 0) w.diffs[k - 1] = w.diffs[k - 1].submorphism(rest_i, all_indices(w.terms[k - 1].size()));
  if (k + 1 < w.diffs.size()) w.diffs[k + 1] = w.diffs[k + 1].submorphism(all_indices(w.terms[k + 2].size()), rest_j);
  w.terms[k] = ni;
  w.terms[k + 1] = nj;
}

ChainMap assemble(const Complex& src, const Complex& tgt, int lo, const std::vector<BaseMorphism>& comps) {
  ChainMap f(src, tgt);
  for (std::size_t t = 0; t < comps.size(); ++t) {
    const int i = lo + static_cast<int>(t);
    if (i < src.lo() || i > src.hi()) continue;
    f.set_component(i, comps[t]);
  }
  return f;
}

}  // namespace

MinimalModel minimal_model(const Complex& m) {
  Working w = working_copy(m);
  MinimalModel out{m, ChainMap::identity(m), ChainMap::identity(m)};
  Complex current = m;
  while (const auto pv = find_pivot(w)) {
    StepMaps maps;
    eliminate(w, *pv, &maps);
    const Complex next = w.complex();
    const ChainMap f = assemble(current, next, w.lo, maps.to_new);
    const ChainMap g = assemble(next, current, w.lo, maps.from_new);
    out.to_minimal = compose(f, out.to_minimal);
    out.from_minimal = compose(out.from_minimal, g);
    current = next;
  }
  out.minimal = current;
  return out;
}

Complex minimal_complex(const Complex& m) {
  Working w = working_copy(m);
  bool changed = false;
  while (const auto pv = find_pivot(w)) {
    eliminate(w, *pv, nullptr);
    changed = true;
  }
  return changed ? w.complex() : m;
}

bool is_minimal(const Complex& m) {
  for (int i = m.lo(); i < m.hi(); ++i)
    if (!m.diff(i).is_radical()) return false;
  return true;
}

bool is_contractible(const Complex& m) { return minimal_complex(m).is_zero(); }

bool is_homotopy_equiv(const ChainMap& f) { return is_contractible(cone(f).cone); }

std::optional<std::pair<int, int>> minimal_support(const Complex& m) {
  const Complex mm = minimal_complex(m);
  if (mm.is_zero()) return std::nullopt;
  return std::make_pair(mm.lo(), mm.hi());
}

Complex dualize(const Complex& m) {
  if (m.category()->backend() != Backend::Vect) throw std::invalid_argument("dualize needs the vect backend");
  if (m.is_zero()) return m;
  // (D M)^i = (M^{-i})^*, with differential the transpose of d^{-i-1}.
  std::vector<BaseObject> terms;
  std::vector<BaseMorphism> diffs;
  const int lo = -m.hi(), hi = -m.lo();
  for (int i = lo; i <= hi; ++i) terms.push_back(m.term(-i));
  for (int i = lo; i < hi; ++i) {
    const BaseMorphism d = m.diff(-i - 1);
    BaseMorphism t(d.target(), d.source());
    for (std::size_t r = 0; r < d.target().size(); ++r)
      for (std::size_t c = 0; c < d.source().size(); ++c) t.set_trivial(c, r, d.trivial_part(r, c));
    diffs.push_back(t);
  }
  return Complex::make(m.category(), lo, std::move(terms), std::move(diffs), false);
}

}  // namespace wstruct
