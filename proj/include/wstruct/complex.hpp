#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wstruct/base.hpp"

namespace wstruct {

/// Bounded cochain complex over a base category; differentials raise degree by one.
/// Zero terms at either end are trimmed on construction, so equal complexes
/// compare equal structurally.
class Complex {
 public:
  Complex() = default;
  explicit Complex(CategoryPtr cat) : cat_(std::move(cat)) {}

  /// terms[k] sits in degree lo + k; diffs[k] maps terms[k] -> terms[k + 1].
  /// Throws std::invalid_argument on shape errors or when d∘d != 0 (first failing degree reported).
  static Complex make(CategoryPtr cat, int lo, std::vector<BaseObject> terms, std::vector<BaseMorphism> diffs,
                      bool check = true);
  /// x placed in a single degree.
  static Complex stalk(const BaseObject& x, int degree);

  const CategoryPtr& category() const { return cat_; }
  Field field() const { return cat_->field(); }
  int lo() const { return lo_; }
  /// Last degree; lo() - 1 for the zero complex.
  int hi() const { return lo_ + static_cast<int>(terms_.size()) - 1; }
  bool is_zero() const { return terms_.empty(); }

  BaseObject term(int i) const;
  /// term(i) -> term(i + 1).
  BaseMorphism diff(int i) const;
  /// Total number of indecomposable summands over all degrees.
  std::size_t total_size() const;
  /// Multiplicity of vertex v in degree i.
  int mult(int i, int v) const { return term(i).mult(v); }

  std::string to_string() const;

  friend bool operator==(const Complex& a, const Complex& b) {
    return a.lo_ == b.lo_ && a.terms_ == b.terms_ && a.diffs_ == b.diffs_;
  }
  friend bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }

 private:
  CategoryPtr cat_;
  int lo_ = 0;
  std::vector<BaseObject> terms_;
  std::vector<BaseMorphism> diffs_;
};

/// Degree-p graded map: components source^i -> target^{i+p}.
/// Chain maps are the degree-0 graded maps commuting with differentials;
/// homotopies are degree -1.
class GradedMap {
 public:
  GradedMap() = default;
  GradedMap(Complex source, Complex target, int degree = 0);

  static GradedMap zero(const Complex& source, const Complex& target, int degree = 0) {
    return GradedMap(source, target, degree);
  }
  static GradedMap identity(const Complex& m);
  /// The differential of m as a degree-1 self-map.
  static GradedMap differential(const Complex& m);

  const Complex& source() const { return src_; }
  const Complex& target() const { return tgt_; }
  int degree() const { return deg_; }

  /// source.term(i) -> target.term(i + degree); zero outside the source range.
  BaseMorphism component(int i) const;
  void set_component(int i, BaseMorphism f);

  bool is_zero() const;
  std::string to_string() const;

  GradedMap operator-() const;
  GradedMap& operator+=(const GradedMap& o);
  GradedMap& operator-=(const GradedMap& o);
  GradedMap& operator*=(const Scalar& s);
  friend GradedMap operator+(GradedMap a, const GradedMap& b) { return a += b; }
  friend GradedMap operator-(GradedMap a, const GradedMap& b) { return a -= b; }
  friend GradedMap operator*(GradedMap a, const Scalar& s) { return a *= s; }
  friend bool operator==(const GradedMap& a, const GradedMap& b) {
    return a.deg_ == b.deg_ && a.src_ == b.src_ && a.tgt_ == b.tgt_ && a.comp_ == b.comp_;
  }
  friend bool operator!=(const GradedMap& a, const GradedMap& b) { return !(a == b); }

 private:
  void check_compatible(const GradedMap& o) const;

  Complex src_, tgt_;
  int deg_ = 0;
  std::vector<BaseMorphism> comp_;  ///< indexed by source degree - source.lo()
};

using ChainMap = GradedMap;

/// f ∘ g, of degree deg f + deg g.
GradedMap compose(const GradedMap& f, const GradedMap& g);
/// d∘f - (-1)^p f∘d, the commutator with the differentials.
GradedMap commutator(const GradedMap& f);
bool is_chain_map(const GradedMap& f);

/// Coordinates of degree-p graded maps source -> target, degree by degree.
std::size_t graded_dimension(const Complex& source, const Complex& target, int p);
std::vector<Scalar> graded_coordinates(const GradedMap& f);
GradedMap graded_from_coordinates(const Complex& source, const Complex& target, int p,
                                  const std::vector<Scalar>& coords);
GradedMap graded_from_column(const Complex& source, const Complex& target, int p, const Matrix& m,
                             std::size_t column);
Matrix coordinate_column(const GradedMap& f);

/// Matrix of psi -> f ∘ psi on degree-p graded maps x -> source(f).
Matrix post_compose_matrix(const GradedMap& f, const Complex& x, int p);
/// Matrix of psi -> psi ∘ g on degree-p graded maps target(g) -> y.
Matrix pre_compose_matrix(const GradedMap& g, const Complex& y, int p);
/// Matrix of psi -> d psi - (-1)^p psi d on degree-p graded maps m -> n.
Matrix commutator_matrix(const Complex& m, const Complex& n, int p);

/// M[k]: terms M^{i+k}, differentials times (-1)^k.
Complex shift(const Complex& m, int k);
/// f[k] has the same components, reindexed; no sign.
GradedMap shift(const GradedMap& f, int k);

/// Distinguished triangle A --f--> B --incl--> Cone(f) --proj--> A[1].
/// Cone(f)^i = B^i ⊕ A^{i+1}, d(b, a) = (d b + f a, -d a).
struct Triangle {
  ChainMap f;
  Complex cone;
  ChainMap incl;
  ChainMap proj;
};
Triangle cone(const ChainMap& f);

/// Summand index of B^i (resp. A^{i+1}) entries inside Cone(f)^i.
std::vector<std::size_t> cone_b_indices(const ChainMap& f, int i);
std::vector<std::size_t> cone_a_indices(const ChainMap& f, int i);

/// Isomorphism Cone(f)[k] -> Cone(f[k]); the A-part picks up the sign (-1)^k.
ChainMap cone_shift_iso(const ChainMap& f, int k);

struct DirectSum {
  Complex sum;
  ChainMap in1, in2, pr1, pr2;
};
DirectSum direct_sum(const Complex& a, const Complex& b);
Complex direct_sum_all(const CategoryPtr& cat, const std::vector<Complex>& parts);
/// f ⊕ g : A ⊕ C -> B ⊕ D.
ChainMap direct_sum_map(const ChainMap& f, const ChainMap& g);

/// Terms in degrees >= k with the inclusion into m.
std::pair<Complex, ChainMap> brutal_ge(const Complex& m, int k);
/// Terms in degrees <= k with the projection from m.
std::pair<Complex, ChainMap> brutal_le(const Complex& m, int k);

struct HomSpace {
  std::size_t dimension = 0;
  std::vector<ChainMap> basis;  ///< representatives of a basis modulo nullhomotopic maps
};
/// Hom(m, n) in the homotopy category.
HomSpace hom_space(const Complex& m, const Complex& n);
/// Dimension only; cheaper than hom_space.
std::size_t hom_dim(const Complex& m, const Complex& n);
/// Basis of all chain maps m -> n (not modulo homotopy).
std::vector<ChainMap> chain_map_basis(const Complex& m, const Complex& n);

/// h with d h + h d = f, if f is nullhomotopic.
std::optional<GradedMap> nullhomotopy(const ChainMap& f);
bool is_nullhomotopic(const ChainMap& f);
bool homotopic(const ChainMap& f, const ChainMap& g);

/// s with f ∘ s ≃ id, if f admits a section up to homotopy.
std::optional<ChainMap> find_section(const ChainMap& f);
/// r with r ∘ f ≃ id, if f admits a retraction up to homotopy.
std::optional<ChainMap> find_retraction(const ChainMap& f);
/// l with f ∘ l ≃ t, for t ending at the target of f.
std::optional<ChainMap> lift_through(const ChainMap& f, const ChainMap& t);
/// For u: B -> Z with u ∘ f ≃ 0, a map Cone(f) -> Z restricting to u on B.
std::optional<ChainMap> map_from_cone(const ChainMap& f, const ChainMap& u);

struct MinimalModel {
  Complex minimal;
  ChainMap to_minimal;    ///< original -> minimal
  ChainMap from_minimal;  ///< minimal -> original
};
/// Repeated Gaussian elimination of invertible differential entries, lowest
/// degree first and lexicographically first entry within a degree.
MinimalModel minimal_model(const Complex& m);
/// Same complex as minimal_model(m).minimal without tracking comparison maps.
Complex minimal_complex(const Complex& m);
bool is_minimal(const Complex& m);
bool is_contractible(const Complex& m);
bool is_homotopy_equiv(const ChainMap& f);

/// Indecomposable summands of the minimal model, each itself minimal.
/// Quiver backends need a prime field with characteristic above the
/// dimension of the chain endomorphism algebra.
std::vector<Complex> summand_decompose(const Complex& m);
/// Homotopy equivalence test for arbitrary complexes.
bool is_isomorphic(const Complex& a, const Complex& b);
/// True iff every summand class of n occurs in m with at least the same multiplicity.
bool is_retract_tri(const Complex& n, const Complex& m);
/// Multiset equality of summand classes.
bool same_summands(const std::vector<Complex>& a, const std::vector<Complex>& b);

/// Degreewise dual with degrees negated (Vect backend only).
Complex dualize(const Complex& m);

/// Lowest and highest degree with a nonzero term of the minimal model.
std::optional<std::pair<int, int>> minimal_support(const Complex& m);

}  // namespace wstruct
