#pragma once

#include <memory>
#include <string>
#include <vector>

#include "wstruct/matrix.hpp"
#include "wstruct/quiver.hpp"
#include "wstruct/scalar.hpp"

namespace wstruct {

enum class Backend { Vect, Quiver };

/// Additive base category B: finite-dimensional vector spaces, or finitely
/// generated projectives over the path algebra of an acyclic quiver.
///
/// Hom convention: Hom(P_a, P_b) has basis the directed paths from b to a.
/// Composing f in Hom(P_b, P_c) (a path c -> b) after g in Hom(P_a, P_b)
/// (a path b -> a) gives the concatenated path c -> b -> a.
/// Vect is modelled as the one-vertex quiver without arrows.
class BaseCategory {
 public:
  static std::shared_ptr<const BaseCategory> vect(Field f = Field::rationals());
  static std::shared_ptr<const BaseCategory> quiver(Quiver q, Field f = Field::prime(kDefaultPrime));

  Backend backend() const { return backend_; }
  const Quiver& quiver() const { return quiver_; }
  Field field() const { return field_; }
  std::size_t vertex_count() const { return quiver_.vertex_count(); }
  std::string describe() const;

  /// Path ids spanning Hom(P_a, P_b).
  const std::vector<int>& hom_basis(int a, int b) const { return quiver_.paths_between(b, a); }

  friend bool operator==(const BaseCategory& a, const BaseCategory& b) {
    return a.backend_ == b.backend_ && a.field_ == b.field_ && a.quiver_ == b.quiver_;
  }

 private:
  Backend backend_ = Backend::Vect;
  Quiver quiver_;
  Field field_;
};

using CategoryPtr = std::shared_ptr<const BaseCategory>;

/// Throws std::invalid_argument unless both handles denote the same category.
void require_same_category(const CategoryPtr& a, const CategoryPtr& b);

/// Direct sum of indecomposable projectives, recorded by multiplicity per
/// vertex. Summands are laid out vertex by vertex.
class BaseObject {
 public:
  BaseObject() = default;
  BaseObject(CategoryPtr cat, std::vector<int> mult);

  static BaseObject zero(CategoryPtr cat);
  /// A single indecomposable P_v.
  static BaseObject indecomposable(CategoryPtr cat, int vertex);

  const CategoryPtr& category() const { return cat_; }
  const std::vector<int>& mult() const { return mult_; }
  int mult(int vertex) const { return mult_[static_cast<std::size_t>(vertex)]; }
  std::size_t size() const { return vertex_of_.size(); }
  bool is_zero() const { return vertex_of_.empty(); }
  /// Vertex of the k-th summand.
  int vertex_of(std::size_t k) const { return vertex_of_[k]; }
  /// Index of the first summand at `vertex`.
  std::size_t offset(int vertex) const { return offset_[static_cast<std::size_t>(vertex)]; }

  std::string to_string() const;

  friend bool operator==(const BaseObject& a, const BaseObject& b) { return a.mult_ == b.mult_; }
  friend bool operator!=(const BaseObject& a, const BaseObject& b) { return !(a == b); }

 private:
  CategoryPtr cat_;
  std::vector<int> mult_;
  std::vector<int> vertex_of_;
  std::vector<std::size_t> offset_;
};

/// Summands of a ⊕ b, ordered vertex by vertex with a's copies first.
BaseObject direct_sum(const BaseObject& a, const BaseObject& b);
/// Summand index of a's k-th summand inside direct_sum(a, b).
std::size_t sum_index_first(const BaseObject& a, const BaseObject& b, std::size_t k);
/// Summand index of b's k-th summand inside direct_sum(a, b).
std::size_t sum_index_second(const BaseObject& a, const BaseObject& b, std::size_t k);

/// Morphism source -> target: entry (i, j) lies in Hom(P_{v(j)}, P_{v(i)}),
/// stored as coefficients over the paths from v(i) to v(j).
class BaseMorphism {
 public:
  BaseMorphism() = default;
  BaseMorphism(BaseObject source, BaseObject target);

  static BaseMorphism zero(const BaseObject& source, const BaseObject& target) { return {source, target}; }
  static BaseMorphism identity(const BaseObject& x);

  const BaseObject& source() const { return src_; }
  const BaseObject& target() const { return tgt_; }
  Field field() const { return field_; }
  const Quiver& quiver() const { return src_.category()->quiver(); }

  /// Paths allowed in entry (i, j).
  const std::vector<int>& paths(std::size_t i, std::size_t j) const;
  /// Coefficient of the given path id in entry (i, j). Throws for a path of the wrong shape.
  const Scalar& coef(std::size_t i, std::size_t j, int path) const;
  Scalar& coef(std::size_t i, std::size_t j, int path);
  /// Coefficient of the trivial path in entry (i, j); zero when vertices differ.
  Scalar trivial_part(std::size_t i, std::size_t j) const;
  void set_trivial(std::size_t i, std::size_t j, const Scalar& s);

  /// Flat coordinate vector in entry-major order (i, j, local path index).
  std::size_t coordinate_count() const { return coords_.size(); }
  const std::vector<Scalar>& coordinates() const { return coords_; }
  static BaseMorphism from_coordinates(const BaseObject& source, const BaseObject& target,
                                       std::vector<Scalar> coords);
  /// Offset of entry (i, j) inside the coordinate vector.
  std::size_t entry_offset(std::size_t i, std::size_t j) const { return entry_off_[i * src_.size() + j]; }

  bool is_zero() const;
  /// No trivial-path component anywhere.
  bool is_radical() const;

  BaseMorphism operator-() const;
  BaseMorphism& operator+=(const BaseMorphism& o);
  BaseMorphism& operator-=(const BaseMorphism& o);
  BaseMorphism& operator*=(const Scalar& s);
  friend BaseMorphism operator+(BaseMorphism a, const BaseMorphism& b) { return a += b; }
  friend BaseMorphism operator-(BaseMorphism a, const BaseMorphism& b) { return a -= b; }
  friend BaseMorphism operator*(BaseMorphism a, const Scalar& s) { return a *= s; }
  friend bool operator==(const BaseMorphism& a, const BaseMorphism& b) {
    return a.src_ == b.src_ && a.tgt_ == b.tgt_ && a.coords_ == b.coords_;
  }
  friend bool operator!=(const BaseMorphism& a, const BaseMorphism& b) { return !(a == b); }

  /// Restriction to the listed target rows and source columns.
  BaseMorphism submorphism(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
  /// Copies `block` into the rows/cols given (sizes must match block's summands).
  void place(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols, const BaseMorphism& block);

  std::string to_string() const;

 private:
  void layout();

  BaseObject src_, tgt_;
  Field field_;
  std::vector<std::size_t> entry_off_;
  std::vector<Scalar> coords_;
};

/// f ∘ g. Throws std::invalid_argument when target(g) != source(f).
BaseMorphism compose(const BaseMorphism& f, const BaseMorphism& g);

/// Matrix of psi -> f ∘ psi from Hom(x, source f) to Hom(x, target f) in coordinates.
Matrix left_compose_matrix(const BaseMorphism& f, const BaseObject& x);
/// Matrix of psi -> psi ∘ g from Hom(target g, y) to Hom(source g, y) in coordinates.
Matrix right_compose_matrix(const BaseMorphism& g, const BaseObject& y);

/// Number of coordinates of Hom(x, y).
std::size_t hom_dimension(const BaseObject& x, const BaseObject& y);

struct IdempotentSplit {
  BaseObject original;
  BaseMorphism idempotent;
  BaseObject image;
  BaseMorphism section;     ///< image -> original
  BaseMorphism retraction;  ///< original -> image
};

/// Throws std::invalid_argument when e is not an idempotent endomorphism.
IdempotentSplit split_idempotent(const BaseMorphism& e);

/// Pointwise multiplicity comparison (both backends are Krull-Schmidt).
bool is_retract_base(const BaseObject& n, const BaseObject& m);

}  // namespace wstruct
