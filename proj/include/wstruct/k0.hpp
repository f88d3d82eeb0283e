#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "wstruct/complex.hpp"
#include "wstruct/lattice.hpp"
#include "wstruct/slope.hpp"

namespace wstruct {

using RationalVector = std::vector<mpq_class>;

/// Subgroup of (1/P)·Z^n, stored as P times itself inside Z^n.
class ScaledLattice {
 public:
  explicit ScaledLattice(std::size_t ambient_rank = 0) : lattice_(ambient_rank) {}
  /// Throws std::invalid_argument unless p > 0 and the lattice ambient matches.
  ScaledLattice(mpz_class p, IntLattice lattice);

  static ScaledLattice from_generators(std::size_t ambient_rank, const std::vector<RationalVector>& gens);
  /// (1/p)·Z on a single coordinate.
  static ScaledLattice axis(std::size_t ambient_rank, std::size_t coord, const mpz_class& p);
  static ScaledLattice full(std::size_t ambient_rank, const mpz_class& p);

  const mpz_class& denominator() const { return p_; }
  const IntLattice& lattice() const { return lattice_; }
  std::size_t ambient_rank() const { return lattice_.ambient_rank(); }
  std::size_t rank() const { return lattice_.rank(); }
  /// Basis vectors divided by the denominator.
  std::vector<RationalVector> basis() const;

  /// Same subgroup over the denominator q; q must be a multiple of the current one.
  ScaledLattice rescaled(const mpz_class& q) const;
  /// Smallest denominator presenting the same subgroup.
  ScaledLattice reduced() const;

  bool contains(const RationalVector& v) const;
  bool contains(const ScaledLattice& other) const;

  /// Equality of subgroups, independent of the chosen denominator.
  friend bool operator==(const ScaledLattice& a, const ScaledLattice& b);
  friend bool operator!=(const ScaledLattice& a, const ScaledLattice& b) { return !(a == b); }

  std::string to_string() const;

 private:
  mpz_class p_ = 1;
  IntLattice lattice_;
};

ScaledLattice scaled_sum(const ScaledLattice& a, const ScaledLattice& b);
ScaledLattice scaled_intersect(const ScaledLattice& a, const ScaledLattice& b);

using K0Object = std::variant<SlopeObject, Complex>;

/// Additive invariant: a homomorphic image of K_0 of the source category.
class InvariantAssignment {
 public:
  enum class Source { Slope, Kb };

  /// (alpha, beta) of slope-lab objects.
  static InvariantAssignment slope_pair();
  /// Euler characteristic: Σ (-1)^i · multiplicity vector of the i-th term.
  static InvariantAssignment euler_characteristic(CategoryPtr cat);

  Source source() const { return source_; }
  std::size_t rank() const;
  /// Throws std::invalid_argument when the object comes from another source.
  RationalVector operator()(const K0Object& obj) const;

 private:
  Source source_ = Source::Slope;
  CategoryPtr cat_;
};

const char* source_name(InvariantAssignment::Source s);

ScaledLattice invariant_image(const std::vector<K0Object>& objs, const InvariantAssignment& assign);

struct CriterionResult {
  bool satisfied = false;
  ScaledLattice g_minus, g_plus, sum;  ///< G∩K⁻, G∩K⁺ and their sum
  std::optional<RationalVector> counterexample;  ///< basis vector of G outside the sum
};

/// Tests (G∩K⁻) + (G∩K⁺) = G. Throws std::invalid_argument on a rank mismatch.
CriterionResult criterion_check(const ScaledLattice& g, const ScaledLattice& k_minus, const ScaledLattice& k_plus);

struct NecessaryConditionReport {
  std::string scenario;
  long period = 1;
  std::vector<SlopeObject> generators;
  std::vector<RationalVector> generator_vectors;
  ScaledLattice g, k_minus, k_plus;
  CriterionResult result;
  std::string verdict;
  std::string note;
};

/// Scenarios "c", "cprime" and "d" of the slope category, with tails of
/// period dividing `period`. Throws std::invalid_argument for anything else.
NecessaryConditionReport necessary_condition_report(const std::string& scenario, long period = 2);

std::string rational_vector_string(const RationalVector& v);

}  // namespace wstruct
