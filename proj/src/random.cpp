#include "wstruct/random.hpp"

#include <stdexcept>

namespace wstruct {

long Rng::uniform(long lo, long hi) {
  if (hi < lo) throw std::invalid_argument("empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x;
  do x = eng_();
  while (x >= limit);
  return lo + static_cast<long>(x % span);
}

BaseObject random_object(const CategoryPtr& cat, Rng& rng, int max_mult, int zero_percent) {
  std::vector<int> m(cat->vertex_count());
  for (auto& x : m) x = rng.chance(zero_percent) ? 0 : static_cast<int>(rng.uniform(0, max_mult));
  return BaseObject(cat, m);
}

BaseMorphism random_morphism(const BaseObject& src, const BaseObject& tgt, Rng& rng, long coef_bound) {
  std::vector<Scalar> c(hom_dimension(src, tgt));
  const Field f = src.category()->field();
  for (auto& x : c) x = Scalar(f, rng.uniform(-coef_bound, coef_bound));
  return BaseMorphism::from_coordinates(src, tgt, std::move(c));
}

namespace {
std::vector<Scalar> random_combination(const Matrix& basis, Rng& rng, long bound) {
  const Field f = basis.field();
  std::vector<Scalar> v(basis.rows(), Scalar::zero(f));
  for (std::size_t c = 0; c < basis.cols(); ++c) {
    const Scalar w(f, rng.uniform(-bound, bound));
    if (w.is_zero()) continue;
    for (std::size_t r = 0; r < basis.rows(); ++r)
      if (!basis(r, c).is_zero()) v[r] += w * basis(r, c);
  }
  return v;
}
}  // namespace

Complex random_complex(const CategoryPtr& cat, Rng& rng, const RandomComplexOptions& opt) {
  std::vector<BaseObject> terms;
  for (int i = opt.min_degree; i <= opt.max_degree; ++i) terms.push_back(random_object(cat, rng, opt.max_mult, opt.zero_percent));
  std::vector<BaseMorphism> diffs;
  for (std::size_t k = 0; k + 1 < terms.size(); ++k) {
    if (k == 0) {
      diffs.push_back(random_morphism(terms[0], terms[1], rng, opt.coef_bound));
      continue;
    }
    // psi with psi ∘ d_prev = 0.
    const Matrix pre = right_compose_matrix(diffs.back(), terms[k + 1]);
    const Matrix ker = kernel_basis(pre);
    diffs.push_back(BaseMorphism::from_coordinates(terms[k], terms[k + 1], random_combination(ker, rng, opt.coef_bound)));
  }
  return Complex::make(cat, opt.min_degree, std::move(terms), std::move(diffs));
}

ChainMap random_chain_map(const Complex& src, const Complex& tgt, Rng& rng, long coef_bound) {
  ChainMap f(src, tgt);
  const Field fl = src.category()->field();
  for (const auto& b : chain_map_basis(src, tgt)) {
    const Scalar w(fl, rng.uniform(-coef_bound, coef_bound));
    if (!w.is_zero()) f += b * w;
  }
  return f;
}

std::pair<ChainMap, ChainMap> random_retraction(const Complex& n, const Complex& p, Rng& rng) {
  const DirectSum ds = direct_sum(n, p);
  const ChainMap c = random_chain_map(n, p, rng), c2 = random_chain_map(p, n, rng);
  // s = in1 + in2 c, r = pr1 + c2 pr2 - c2 c pr1, so r s = id.
  const ChainMap s = ds.in1 + compose(ds.in2, c);
  const ChainMap r = ds.pr1 + compose(c2, ds.pr2) - compose(c2, compose(c, ds.pr1));
  return {r, s};
}

CategoryPtr linear_quiver_category(int n, Field f) { return BaseCategory::quiver(Quiver::linear_a(n), f); }

}  // namespace wstruct
