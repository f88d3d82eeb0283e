#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wstruct/complex.hpp"

namespace wstruct {

/// Homological convention: M lies in w≤m iff its minimal model sits in
/// degrees >= -m, and in w≥m iff it sits in degrees <= -m.
enum class Side { Le, Ge };

const char* side_name(Side s);

/// Triangle X --x--> M --> Y --> X[1] with Y = Cone(x), claimed X ∈ w≤m, Y ∈ w≥m+1.
struct WeightDecomposition {
  int m = 0;
  ChainMap x;
  Complex high;

  const Complex& low() const { return x.source(); }
  const Complex& object() const { return x.target(); }
};

/// Builds the decomposition with Y = Cone(x).
WeightDecomposition make_decomposition(int m, const ChainMap& x);
/// Replaces M by M' along phi: M -> M' (expected to be a homotopy equivalence).
WeightDecomposition transport(const WeightDecomposition& d, const ChainMap& phi);
/// All three objects shifted by k; the index becomes m + k.
WeightDecomposition shift(const WeightDecomposition& d, int k);

class WeightSpec;

/// Envelope certificate: how an object is built from generators.
struct PreWeightCertificate;
using CertPtr = std::shared_ptr<const PreWeightCertificate>;

struct PreWeightCertificate {
  enum class Kind { Generator, Shift, Extend, RetractTower };
  Kind kind = Kind::Generator;
  Complex object;          ///< the object this node presents
  std::vector<CertPtr> children;
  int k = 0;               ///< Shift amount
  ChainMap map;            ///< Extend: gluing g: M[-1] -> N; RetractTower: r: M -> N
  ChainMap section;        ///< RetractTower: s: N -> M
  std::optional<int> tower_n;  ///< RetractTower: forced length, else the smallest that works
};

CertPtr cert_generator(const Complex& b);
CertPtr cert_shift(const CertPtr& child, int k);
/// Presents Cone(g) for g: M[-1] -> N, children (N, M).
CertPtr cert_extend(const CertPtr& n, const CertPtr& m, const ChainMap& g);
/// Presents N as a retract of the child's object M via r∘s ≃ id_N.
CertPtr cert_retract(const CertPtr& m, const ChainMap& r, const ChainMap& s, std::optional<int> n = std::nullopt);

/// Smallest j with the node certified in w≥j by its construction alone.
int certified_lower_weight(const PreWeightCertificate& c);

/// Lift x_N ∘ l ≃ g ∘ x_M[-1]; X_E = Cone(l), Y_E = Cone(x_E).
/// Throws std::runtime_error if the lift does not exist.
WeightDecomposition combine_decompositions(const ChainMap& g, const WeightDecomposition& dn,
                                           const WeightDecomposition& dm);

/// Recursive transport down a certificate tree at index m.
WeightDecomposition decompose_presented(const PreWeightCertificate& c, int m);

/// The stalks P_v in degree 0, one per vertex.
std::vector<Complex> degree_zero_stalks(const CategoryPtr& cat);

class WeightSpec {
 public:
  enum class Flavor { Stupid, Generated, Custom };
  using Predicate = std::function<bool(const Complex&)>;
  using Decomposer = std::function<WeightDecomposition(const Complex&, int)>;

  static WeightSpec stupid(CategoryPtr cat);
  /// Requires negativity_check(b) to pass; throws std::invalid_argument otherwise.
  static WeightSpec generated(CategoryPtr cat, std::vector<Complex> b);
  static WeightSpec custom(std::string name, CategoryPtr cat, Predicate le0, Predicate ge0, Decomposer dec);

  Flavor flavor() const { return flavor_; }
  const std::string& name() const { return name_; }
  const CategoryPtr& category() const { return cat_; }
  const std::vector<Complex>& generators() const { return gens_; }

  /// M ∈ w≤m (Side::Le) or M ∈ w≥m (Side::Ge).
  bool member(const Complex& m, Side side, int index = 0) const;
  bool in_heart(const Complex& m) const { return member(m, Side::Le) && member(m, Side::Ge); }
  WeightDecomposition decompose(const Complex& m, int index) const;
  /// Generated flavor: certificate from the stupid filtration of m.
  /// Needs each term of m to be a sum of objects of degree-0 stalk generators.
  CertPtr certify(const Complex& m) const;

 private:
  Flavor flavor_ = Flavor::Stupid;
  std::string name_;
  CategoryPtr cat_;
  std::vector<Complex> gens_;
  Predicate le0_, ge0_;
  Decomposer dec_;
};

bool stupid_membership(const Complex& m, Side side);
/// Minimal model truncated at degree -m.
WeightDecomposition stupid_decomposition(const Complex& m, int index);

/// Empty string when the decomposition is a genuine weight decomposition for w.
std::string verify_decomposition(const WeightSpec& w, const WeightDecomposition& d);

struct Violation {
  std::string axiom;
  std::size_t sample = 0;
  std::optional<std::size_t> other;
  std::string detail;
};

struct AxiomReport {
  std::size_t samples = 0;
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Axioms (i)-(iv) on the samples: retract-closure via summands, shift
/// inclusions, orthogonality on all ordered pairs, and decompositions at m = 0.
AxiomReport check_axioms(const WeightSpec& w, const std::vector<Complex>& samples);

struct NegativityResult {
  bool negative = true;
  int i_max = 0;
  /// Hom(B[first], B[second][i]) != 0.
  std::optional<std::pair<std::size_t, std::size_t>> pair;
  int shift = 0;
};

/// Hom(b1, b2[i]) = 0 for 1 <= i <= (max support) - (min support) of the b's.
NegativityResult negativity_check(const std::vector<Complex>& b);

struct HeartReport {
  std::size_t in_heart = 0;
  std::size_t confirmed = 0;
  std::vector<std::size_t> failures;
  bool ok() const { return failures.empty(); }
};

/// Every heart sample is a retract of a finite sum of generators.
HeartReport heart_of(const WeightSpec& w, const std::vector<Complex>& samples);

/// Optional splitting data M ≃ N ⊕ P used by the retract tower.
struct Splitting {
  Complex n, m, p;
  ChainMap r, s;            ///< r: M -> N, s: N -> M, r∘s ≃ id
  ChainMap p_in, p_out;     ///< P -> M and M -> P, p_out∘p_in ≃ id, r∘p_in ≃ 0
};

/// P = Cone(s) with its canonical projection from M and a complementary section.
/// Throws std::invalid_argument when r∘s is not homotopic to id_N.
Splitting make_splitting(const ChainMap& r, const ChainMap& s);

/// The 2n triangles M[2j] -> N[2j] -> P[2j+1] and M[2j+1] -> P[2j+1] -> N[2j+2].
std::vector<Triangle> retract_tower(const ChainMap& r, const ChainMap& s, int n);
/// Empty string when t is a rotated split triangle (f split epi) with third vertex ≅ expected.
std::string verify_split_triangle(const Triangle& t, const Complex& expected);

struct Boundedness {
  bool above = false, below = false;
  int above_index = 0;  ///< M ∈ w≤above_index
  int below_index = 0;  ///< M ∈ w≥below_index
};

/// For K^b with the stupid structure: witnessing indices from the minimal support.
Boundedness boundedness(const Complex& m);

}  // namespace wstruct
