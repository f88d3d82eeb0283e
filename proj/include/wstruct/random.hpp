#pragma once

#include <cstdint>
#include <random>

#include "wstruct/complex.hpp"

namespace wstruct {

/// Seeded generator with platform-independent bounded draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }
  /// Uniform in [lo, hi] (inclusive), by rejection sampling.
  long uniform(long lo, long hi);
  bool chance(int percent) { return uniform(0, 99) < percent; }

 private:
  std::mt19937_64 eng_;
};

struct RandomComplexOptions {
  int min_degree = -1;
  int max_degree = 1;
  int max_mult = 2;      ///< per vertex and degree
  long coef_bound = 2;   ///< scalar entries drawn from [-bound, bound]
  int zero_percent = 25; ///< chance that a vertex multiplicity is forced to zero
};

BaseObject random_object(const CategoryPtr& cat, Rng& rng, int max_mult, int zero_percent = 25);
BaseMorphism random_morphism(const BaseObject& src, const BaseObject& tgt, Rng& rng, long coef_bound = 2);
/// Differentials drawn from the kernel of precomposition with the previous one.
Complex random_complex(const CategoryPtr& cat, Rng& rng, const RandomComplexOptions& opt = {});
/// Random linear combination of a chain-map basis.
ChainMap random_chain_map(const Complex& src, const Complex& tgt, Rng& rng, long coef_bound = 2);

/// (r, s) with r∘s = id_N on M = N ⊕ P, twisted by random maps N -> P and P -> N.
std::pair<ChainMap, ChainMap> random_retraction(const Complex& n, const Complex& p, Rng& rng);

/// The linearly oriented A_n quiver category over F_p.
CategoryPtr linear_quiver_category(int n, Field f = Field::prime(kDefaultPrime));

}  // namespace wstruct
