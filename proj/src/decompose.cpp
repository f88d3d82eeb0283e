#include <random>
#include <stdexcept>

#include "wstruct/complex.hpp"

namespace wstruct {

namespace {

// ---- Polynomials over F_p, coefficients low degree first, no trailing zeros.
using Poly = std::vector<std::int64_t>;

struct PolyRing {
  std::int64_t p;

  std::int64_t norm(std::int64_t x) const { return ((x % p) + p) % p; }
  std::int64_t mul(std::int64_t a, std::int64_t b) const { return (a * b) % p; }
  std::int64_t inv(std::int64_t a) const {
    std::int64_t r = 1, b = a, e = p - 2;
    while (e) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  }
  static void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  static int deg(const Poly& a) { return static_cast<int>(a.size()) - 1; }

  Poly sub(Poly a, const Poly& b) const {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t k = 0; k < b.size(); ++k) a[k] = norm(a[k] - b[k]);
    trim(a);
    return a;
  }
  Poly times(const Poly& a, const Poly& b) const {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    trim(c);
    return c;
  }
  // Returns (quotient, remainder).
  std::pair<Poly, Poly> divmod(Poly a, const Poly& b) const {
    const std::int64_t lead = inv(b.back());
    Poly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
    while (a.size() >= b.size() && !a.empty()) {
      const std::size_t shift = a.size() - b.size();
      const std::int64_t c = mul(a.back(), lead);
      q[shift] = c;
      for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] = norm(a[shift + k] - mul(c, b[k]));
      trim(a);
    }
    trim(q);
    return {q, a};
  }
  Poly monic(Poly a) const {
    if (a.empty()) return a;
    const std::int64_t l = inv(a.back());
    for (auto& x : a) x = mul(x, l);
    return a;
  }
  Poly gcd(Poly a, Poly b) const {
    while (!b.empty()) {
      Poly r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }
  // s with s*a ≡ g (mod b), where g = gcd(a, b) is returned alongside.
  std::pair<Poly, Poly> bezout(const Poly& a, const Poly& b) const {
    Poly r0 = a, r1 = b, s0 = {1}, s1 = {};
    while (!r1.empty()) {
      auto [q, r] = divmod(r0, r1);
      Poly s = sub(s0, times(q, s1));
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s);
    }
    const std::int64_t l = inv(r0.back());
    for (auto& x : s0) x = mul(x, l);
    return {s0, monic(r0)};
  }
  Poly mulmod(const Poly& a, const Poly& b, const Poly& m) const { return divmod(times(a, b), m).second; }
  Poly powmod(Poly base, mpz_class e, const Poly& m) const {
    Poly r = {1};
    base = divmod(base, m).second;
    while (e > 0) {
      if (mpz_odd_p(e.get_mpz_t())) r = mulmod(r, base, m);
      base = mulmod(base, base, m);
      e >>= 1;
    }
    return r;
  }
};

// A nontrivial factor of the squarefree polynomial mu, or nullopt when mu is irreducible.
std::optional<Poly> proper_factor(const PolyRing& R, const Poly& mu, std::mt19937_64& rng) {
  const int n = PolyRing::deg(mu);
  if (n <= 1) return std::nullopt;
  const Poly t = {0, 1};
  Poly h = t;
  for (int d = 1; 2 * d <= n; ++d) {
    h = R.powmod(h, mpz_class(static_cast<unsigned long>(R.p)), mu);  // t^{p^d}
    const Poly g = R.gcd(mu, R.sub(h, t));
    if (PolyRing::deg(g) <= 0) continue;
    if (PolyRing::deg(g) < n) return g;
    // Every irreducible factor has degree d: equal-degree splitting.
    mpz_class e;
    mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(R.p), static_cast<unsigned long>(d));
    e = (e - 1) / 2;
    for (int tries = 0; tries < 200; ++tries) {
      Poly a(static_cast<std::size_t>(n), 0);
      for (auto& x : a) x = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(R.p));
      PolyRing::trim(a);
      if (a.empty()) continue;
      const Poly b = R.sub(R.powmod(a, e, mu), {1});
      const Poly f = R.gcd(mu, b);
      if (PolyRing::deg(f) > 0 && PolyRing::deg(f) < n) return f;
    }
    throw std::logic_error("equal-degree factorization did not split");
  }
  return std::nullopt;
}

// ---- Finite-dimensional algebra of chain endomorphisms, in a fixed basis.
struct EndAlgebra {
  std::int64_t p;
  std::size_t n;
  std::vector<ChainMap> basis;
  std::vector<std::vector<std::vector<std::int64_t>>> c;  // c[a][b][k]: b_a b_b = sum c b_k
  std::vector<std::int64_t> one;

  std::vector<std::int64_t> mult(const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y) const {
    std::vector<std::int64_t> z(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      if (!x[a]) continue;
      for (std::size_t b = 0; b < n; ++b) {
        if (!y[b]) continue;
        const std::int64_t s = x[a] * y[b] % p;
        for (std::size_t k = 0; k < n; ++k) z[k] = (z[k] + s * c[a][b][k]) % p;
      }
    }
    return z;
  }
};

std::vector<std::int64_t> residues(const Matrix& m, std::size_t col) {
  std::vector<std::int64_t> v;
  for (std::size_t r = 0; r < m.rows(); ++r) v.push_back(m(r, col).residue());
  return v;
}

EndAlgebra build_algebra(const Complex& x, const std::vector<ChainMap>& basis) {
  const Field f = x.field();
  EndAlgebra A{static_cast<std::int64_t>(f.characteristic()), basis.size(), basis, {}, {}};
  const std::size_t dim = graded_dimension(x, x, 0);
  Matrix bmat(f, dim, A.n);
  for (std::size_t a = 0; a < A.n; ++a) bmat.set_block(0, a, coordinate_column(basis[a]));
  Matrix prods(f, dim, A.n * A.n + 1);
  for (std::size_t a = 0; a < A.n; ++a)
    for (std::size_t b = 0; b < A.n; ++b) prods.set_block(0, a * A.n + b, coordinate_column(compose(basis[a], basis[b])));
  prods.set_block(0, A.n * A.n, coordinate_column(ChainMap::identity(x)));
  const auto sol = solve(bmat, prods);
  if (!sol) throw std::logic_error("endomorphism basis is not closed under composition");
  A.c.assign(A.n, std::vector<std::vector<std::int64_t>>(A.n));
  for (std::size_t a = 0; a < A.n; ++a)
    for (std::size_t b = 0; b < A.n; ++b) A.c[a][b] = residues(*sol, a * A.n + b);
  A.one = residues(*sol, A.n * A.n);
  return A;
}

// Basis (as columns) of the Jacobson radical: the kernel of the trace form,
// valid because the characteristic exceeds the dimension.
Matrix radical(const EndAlgebra& A, Field f) {
  std::vector<std::int64_t> tr(A.n, 0);
  for (std::size_t k = 0; k < A.n; ++k)
    for (std::size_t b = 0; b < A.n; ++b) tr[k] = (tr[k] + A.c[k][b][b]) % A.p;
  Matrix t(f, A.n, A.n);
  for (std::size_t a = 0; a < A.n; ++a)
    for (std::size_t b = 0; b < A.n; ++b) {
      std::int64_t s = 0;
      for (std::size_t k = 0; k < A.n; ++k) s = (s + A.c[a][b][k] * tr[k]) % A.p;
      t(a, b) = Scalar(f, static_cast<long>(s));
    }
  return kernel_basis(t);
}

// Minimal polynomial of x modulo the radical (monic, low degree first).
Poly min_poly_mod_radical(const EndAlgebra& A, const Matrix& rad, const std::vector<std::int64_t>& x, Field f) {
  std::vector<std::vector<std::int64_t>> powers{A.one};
  while (true) {
    const auto next = A.mult(powers.back(), x);
    Matrix span(f, A.n, powers.size() + rad.cols());
    for (std::size_t k = 0; k < powers.size(); ++k)
      for (std::size_t r = 0; r < A.n; ++r) span(r, k) = Scalar(f, static_cast<long>(powers[k][r]));
    span.set_block(0, powers.size(), rad);
    Matrix rhs(f, A.n, 1);
    for (std::size_t r = 0; r < A.n; ++r) rhs(r, 0) = Scalar(f, static_cast<long>(next[r]));
    if (const auto sol = solve(span, rhs)) {
      Poly mu(powers.size() + 1, 0);
      for (std::size_t k = 0; k < powers.size(); ++k) mu[k] = (A.p - (*sol)(k, 0).residue()) % A.p;
      mu.back() = 1;
      return mu;
    }
    powers.push_back(next);
  }
}

std::vector<std::int64_t> eval_poly(const EndAlgebra& A, const Poly& q, const std::vector<std::int64_t>& x) {
  // Horner's rule inside the algebra.
  std::vector<std::int64_t> r(A.n, 0);
  for (auto it = q.rbegin(); it != q.rend(); ++it) {
    r = A.mult(r, x);
    for (std::size_t k = 0; k < A.n; ++k) r[k] = (r[k] + *it * A.one[k]) % A.p;
  }
  return r;
}

ChainMap to_chain_map(const EndAlgebra& A, const Complex& x, const std::vector<std::int64_t>& v) {
  ChainMap out = ChainMap::zero(x, x);
  const Field f = x.field();
  for (std::size_t k = 0; k < A.n; ++k)
    if (v[k]) out += A.basis[k] * Scalar(f, static_cast<long>(v[k]));
  return out;
}

// A nontrivial idempotent chain endomorphism, or nullopt when End(x) is local.
std::optional<ChainMap> nontrivial_idempotent(const Complex& x, std::mt19937_64& rng) {
  const Field f = x.field();
  const auto basis = chain_map_basis(x, x);
  if (basis.size() <= 1) return std::nullopt;
  if (f.is_rational() || basis.size() >= f.characteristic())
    throw std::invalid_argument("summand decomposition over a quiver needs a prime field of characteristic above " +
                                std::to_string(basis.size()));
  const EndAlgebra A = build_algebra(x, basis);
  const Matrix rad = radical(A, f);
  const std::size_t semisimple_dim = A.n - rad.cols();
  if (semisimple_dim == 1) return std::nullopt;
  const PolyRing R{A.p};
  for (int attempt = 0; attempt < 500; ++attempt) {
    std::vector<std::int64_t> xv(A.n);
    for (auto& c : xv) c = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(A.p));
    const Poly mu = min_poly_mod_radical(A, rad, xv, f);
    const auto u = proper_factor(R, mu, rng);
    if (!u) {
      // F_p[x] is a field; it fills the semisimple quotient only when that quotient is a field.
      if (static_cast<std::size_t>(PolyRing::deg(mu)) == semisimple_dim) return std::nullopt;
      continue;
    }
    const Poly w = R.divmod(mu, *u).first;
    // a*u ≡ 1 (mod w) gives an idempotent a*u modulo (mu).
    const auto [a, g] = R.bezout(*u, w);
    if (g != Poly{1}) throw std::logic_error("minimal polynomial is not squarefree");
    auto e = eval_poly(A, R.times(a, *u), xv);
    // Lift modulo the nilpotent radical: e <- 3e^2 - 2e^3.
    while (true) {
      const auto e2 = A.mult(e, e);
      if (e2 == e) break;
      const auto e3 = A.mult(e2, e);
      for (std::size_t k = 0; k < A.n; ++k) e[k] = R.norm(3 * e2[k] - 2 * e3[k]);
    }
    return to_chain_map(A, x, e);
  }
  throw std::logic_error("summand decomposition: no splitting element found");
}

Complex image_of(const ChainMap& e) {
  const Complex& x = e.source();
  std::vector<IdempotentSplit> parts;
  for (int i = x.lo(); i <= x.hi(); ++i) parts.push_back(split_idempotent(e.component(i)));
  std::vector<BaseObject> terms;
  std::vector<BaseMorphism> diffs;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    terms.push_back(parts[k].image);
    if (k + 1 < parts.size())
      diffs.push_back(compose(parts[k + 1].retraction, compose(x.diff(x.lo() + static_cast<int>(k)), parts[k].section)));
  }
  return Complex::make(x.category(), x.lo(), std::move(terms), std::move(diffs), false);
}

void split_into(const Complex& x, std::mt19937_64& rng, std::vector<Complex>& out) {
  if (x.is_zero()) return;
  const auto e = nontrivial_idempotent(x, rng);
  if (!e) {
    out.push_back(x);
    return;
  }
  split_into(image_of(*e), rng, out);
  split_into(image_of(ChainMap::identity(x) - *e), rng, out);
}

bool component_invertible(const BaseMorphism& f) {
  if (f.source() != f.target()) return false;
  const BaseObject& x = f.source();
  for (std::size_t v = 0; v < x.mult().size(); ++v) {
    const std::size_t n = static_cast<std::size_t>(x.mult(static_cast<int>(v))), off = x.offset(static_cast<int>(v));
    Matrix m(f.field(), n, n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) m(a, b) = f.trivial_part(off + a, off + b);
    if (rank(m) != n) return false;
  }
  return true;
}

bool chain_invertible(const ChainMap& f) {
  for (int i = f.source().lo(); i <= f.source().hi(); ++i)
    if (!component_invertible(f.component(i))) return false;
  return true;
}

bool same_terms(const Complex& a, const Complex& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  if (a.lo() != b.lo() || a.hi() != b.hi()) return false;
  for (int i = a.lo(); i <= a.hi(); ++i)
    if (a.term(i) != b.term(i)) return false;
  return true;
}

// Both arguments minimal and indecomposable.
bool iso_indecomposable(const Complex& a, const Complex& b) {
  if (!same_terms(a, b)) return false;
  if (a.category()->backend() == Backend::Vect) return true;
  const auto fs = chain_map_basis(a, b);
  const auto gs = chain_map_basis(b, a);
  for (const auto& f : fs)
    for (const auto& g : gs)
      if (chain_invertible(compose(g, f))) return true;
  return false;
}

// Greedy matching; iso_indecomposable is an equivalence relation.
bool multiset_contains(const std::vector<Complex>& big, const std::vector<Complex>& small) {
  std::vector<bool> used(big.size(), false);
  for (const auto& s : small) {
    bool found = false;
    for (std::size_t k = 0; k < big.size() && !found; ++k)
      if (!used[k] && iso_indecomposable(s, big[k])) {
        used[k] = true;
        found = true;
      }
    if (!found) return false;
  }
  return true;
}

}  // namespace

std::vector<Complex> summand_decompose(const Complex& m) {
  const Complex mm = minimal_complex(m);
  std::vector<Complex> out;
  if (mm.is_zero()) return out;
  if (mm.category()->backend() == Backend::Vect) {
    for (int i = mm.lo(); i <= mm.hi(); ++i)
      for (int k = 0; k < mm.mult(i, 0); ++k) out.push_back(Complex::stalk(BaseObject::indecomposable(mm.category(), 0), i));
    return out;
  }
  std::mt19937_64 rng(0x5eed + mm.total_size());
  split_into(mm, rng, out);
  return out;
}

bool same_summands(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  return a.size() == b.size() && multiset_contains(a, b);
}

namespace {
// Pointwise multiplicity comparison of minimal models; necessary for a retract.
bool terms_dominated(const Complex& n, const Complex& m) {
  if (n.is_zero()) return true;
  for (int i = n.lo(); i <= n.hi(); ++i)
    if (!is_retract_base(n.term(i), m.term(i))) return false;
  return true;
}
}  // namespace

bool is_isomorphic(const Complex& a, const Complex& b) {
  const Complex ma = minimal_complex(a), mb = minimal_complex(b);
  if (!same_terms(ma, mb)) return false;
  if (ma.is_zero() || ma.category()->backend() == Backend::Vect) return true;
  // Fast certificate: a single invertible chain map in the basis.
  for (const auto& f : chain_map_basis(ma, mb))
    if (chain_invertible(f)) return true;
  return same_summands(summand_decompose(ma), summand_decompose(mb));
}

bool is_retract_tri(const Complex& n, const Complex& m) {
  const Complex mn = minimal_complex(n), mm = minimal_complex(m);
  if (!terms_dominated(mn, mm)) return false;
  if (mn.is_zero() || mn.category()->backend() == Backend::Vect) return true;
  return multiset_contains(summand_decompose(mm), summand_decompose(mn));
}

}  // namespace wstruct
