#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "wstruct/random.hpp"

namespace wstruct {

/// Periodic block of values; the period is vals.size() and must be even.
struct Tail {
  std::vector<long> vals;
  std::size_t period() const { return vals.size(); }
};

/// Eventually periodic non-negative integer sequence on Z.
/// value(i) = right.vals[(i - right_start) mod P+] for i >= right_start,
///            left.vals[(left_end - i) mod P-]   for i <= left_end,
///            core[i - left_end - 1]              in between.
class EPSequence {
 public:
  EPSequence();  ///< identically zero
  /// Throws std::invalid_argument on odd or empty periods, negative values,
  /// left_end >= right_start, or a core of the wrong length.
  EPSequence(long left_end, Tail left, std::vector<long> core, long right_start, Tail right);

  /// Finite support: values given on [lo, lo + vals.size()).
  static EPSequence finite(long lo, const std::vector<long>& vals);
  /// Samples f on a window and two tails of the given (even) periods;
  /// f must be periodic beyond both ends.
  static EPSequence tabulate(long left_end, std::size_t left_period, long right_start, std::size_t right_period,
                             const std::function<long(long)>& f);

  long value(long i) const;
  long operator()(long i) const { return value(i); }

  long left_end() const { return left_end_; }
  long right_start() const { return right_start_; }
  const Tail& left() const { return left_; }
  const Tail& right() const { return right_; }
  const std::vector<long>& core() const { return core_; }

  bool is_zero() const;
  /// Canonical comparison on values (tails are compared via a common period).
  friend bool operator==(const EPSequence& a, const EPSequence& b);
  friend bool operator!=(const EPSequence& a, const EPSequence& b) { return !(a == b); }

  std::string to_string() const;

 private:
  long left_end_ = -1, right_start_ = 0;
  Tail left_, right_;
  std::vector<long> core_;
};

/// Window [lo, hi] outside of which a and b (and shifts by one) are both periodic.
struct CommonFrame {
  long left_end, right_start;
  std::size_t left_period, right_period;
};
CommonFrame common_frame(const std::vector<const EPSequence*>& seqs);

/// Isomorphism class of an object of D: dims of a zero-differential complex.
struct SlopeObject {
  EPSequence dims;
};

struct SlopePair {
  mpq_class alpha, beta;
  friend bool operator==(const SlopePair& a, const SlopePair& b) { return a.alpha == b.alpha && a.beta == b.beta; }
  friend bool operator!=(const SlopePair& a, const SlopePair& b) { return !(a == b); }
  SlopePair operator-() const { return {-alpha, -beta}; }
  friend SlopePair operator+(const SlopePair& a, const SlopePair& b) { return {a.alpha + b.alpha, a.beta + b.beta}; }
  friend SlopePair operator-(const SlopePair& a, const SlopePair& b) { return {a.alpha - b.alpha, a.beta - b.beta}; }
  std::string to_string() const;
};

enum class Direction { Plus, Minus };

/// a^j = Σ_{0<=i<=j} (-1)^i dim M^i (Plus) or b^j = Σ_{0<=i<=j} (-1)^i dim M^{-i} (Minus).
mpz_class partial_sum(const SlopeObject& m, long j, Direction dir);

/// Closed form from the tails.
SlopePair slopes(const SlopeObject& m);
/// |partial_sum(j) - slope * j| is constant on every residue class mod the
/// period, checked for four periods past the tail start.
bool verify_slopes(const SlopeObject& m);

SlopeObject shift_slope(const SlopeObject& m, long k);
SlopeObject direct_sum(const SlopeObject& a, const SlopeObject& b);

/// Degreewise ranks of a map between zero-differential complexes.
struct RankProfile {
  SlopeObject source, target;
  EPSequence ranks;
};

/// Throws std::invalid_argument if some rank exceeds a dimension.
void check_rank_profile(const RankProfile& f);
/// dims(i) = (target(i) - r(i)) + (source(i+1) - r(i+1)).
SlopeObject cone_profile(const RankProfile& f);

enum class SlopeClass { D, C, CPrime, Le0, Ge0 };
const char* slope_class_name(SlopeClass c);
bool membership(const SlopeObject& m, SlopeClass which);

/// (w≤m part, w≥m+1 part): degrees >= -m and degrees <= -m-1.
std::pair<SlopeObject, SlopeObject> truncate(const SlopeObject& m, long index);

/// Pointwise dims(a) <= dims(b): a is a retract of b in D.
bool dominated(const SlopeObject& a, const SlopeObject& b);

/// N ∈ C with dims(N) >= dims(M) pointwise; tails padded on one sign class.
SlopeObject pad_to_C(const SlopeObject& m);

struct ObstructionCertificate {
  SlopeObject object;
  SlopePair slopes;
  mpq_class beta_minus_alpha;
  /// For each cut index tried: slopes of the truncation parts.
  struct Cut {
    long index;
    SlopePair low, high;
  };
  std::vector<Cut> cuts;
  std::size_t additivity_samples = 0;
  std::size_t additivity_failures = 0;
};

/// Requires M ∈ C′ \ C; throws std::invalid_argument otherwise.
ObstructionCertificate no_decomposition_witness(const SlopeObject& m, std::uint64_t seed = 0);
/// Re-derives every claim of the certificate; empty string when it holds.
std::string check_certificate(const ObstructionCertificate& c);

struct OracleResult {
  std::size_t decompositions = 0;  ///< valid weight decompositions in D found
  std::size_t inside = 0;          ///< of those, with both parts in C′
};

/// All triangles X -> M -> Cone with X in degrees >= -m, Cone in degrees <= -m-1,
/// for m in [m_lo, m_hi], X values in [0, bound] on the window and tails of
/// M's right period, ranks of every admissible size.
OracleResult exhaustive_oracle(const SlopeObject& m, long m_lo, long m_hi, long bound);

struct ExtensionReport {
  std::size_t samples = 0;
  std::size_t class_failures = 0;
  std::size_t boundedness_failures = 0;
  std::size_t heart_failures = 0;
  std::size_t restriction_failures = 0;
  std::optional<SlopeObject> witness;
  bool ok() const { return class_failures + boundedness_failures + heart_failures + restriction_failures == 0; }
};

/// Sample checks for the pair (sub, D) with sub = C or C′: extended classes are
/// retraction-closures, boundedness transfers, and truncations stay in sub.
ExtensionReport verify_extension_claims(SlopeClass sub, const std::vector<SlopeObject>& samples);

struct RandomSlopeOptions {
  long max_value = 3;
  long window = 3;            ///< core indices drawn within [-window, window]
  std::vector<std::size_t> periods{2, 4};
  int bounded_percent = 20;   ///< chance that a tail is zero
};

SlopeObject random_slope_object(Rng& rng, const RandomSlopeOptions& opt = {});
/// Random member of C (tails rounded to integer slopes by padding).
SlopeObject random_c_object(Rng& rng, const RandomSlopeOptions& opt = {});
RankProfile random_rank_profile(const SlopeObject& source, const SlopeObject& target, Rng& rng);

/// Right tail of period p with alternating sum s at start 0: density object with alpha = s/p.
SlopeObject slope_object_with(const mpq_class& alpha, const mpq_class& beta);

}  // namespace wstruct
