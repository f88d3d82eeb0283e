#include "wstruct/slope.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace wstruct {

namespace {

long pmod(long a, long p) { return ((a % p) + p) % p; }

Tail zero_tail() { return Tail{{0, 0}}; }

void check_tail(const Tail& t, const char* side) {
  if (t.vals.empty() || t.vals.size() % 2 != 0)
    throw std::invalid_argument(std::string(side) + " tail period must be even and positive, got " +
                                std::to_string(t.vals.size()));
  for (long v : t.vals)
    if (v < 0) throw std::invalid_argument(std::string(side) + " tail has a negative value");
}

long sign(long i) { return pmod(i, 2) == 0 ? 1 : -1; }

bool is_integer(const mpq_class& q) { return q.get_den() == 1; }

}  // namespace

// ---------------------------------------------------------------------------
// EPSequence

EPSequence::EPSequence() : left_(zero_tail()), right_(zero_tail()) {}

EPSequence::EPSequence(long left_end, Tail left, std::vector<long> core, long right_start, Tail right)
    : left_end_(left_end), right_start_(right_start), left_(std::move(left)), right_(std::move(right)),
      core_(std::move(core)) {
  check_tail(left_, "left");
  check_tail(right_, "right");
  if (left_end_ >= right_start_) throw std::invalid_argument("left tail must end before the right tail starts");
  if (static_cast<long>(core_.size()) != right_start_ - left_end_ - 1)
    throw std::invalid_argument("core must cover exactly the indices strictly between the tails");
  for (long v : core_)
    if (v < 0) throw std::invalid_argument("core has a negative value");
}

EPSequence EPSequence::finite(long lo, const std::vector<long>& vals) {
  return EPSequence(lo - 1, zero_tail(), vals, lo + static_cast<long>(vals.size()), zero_tail());
}

EPSequence EPSequence::tabulate(long left_end, std::size_t left_period, long right_start, std::size_t right_period,
                                const std::function<long(long)>& f) {
  Tail l, r;
  for (std::size_t t = 0; t < left_period; ++t) l.vals.push_back(f(left_end - static_cast<long>(t)));
  for (std::size_t t = 0; t < right_period; ++t) r.vals.push_back(f(right_start + static_cast<long>(t)));
  std::vector<long> core;
  for (long i = left_end + 1; i < right_start; ++i) core.push_back(f(i));
  return EPSequence(left_end, std::move(l), std::move(core), right_start, std::move(r));
}

long EPSequence::value(long i) const {
  if (i >= right_start_) return right_.vals[static_cast<std::size_t>(pmod(i - right_start_, static_cast<long>(right_.period())))];
  if (i <= left_end_) return left_.vals[static_cast<std::size_t>(pmod(left_end_ - i, static_cast<long>(left_.period())))];
  return core_[static_cast<std::size_t>(i - left_end_ - 1)];
}

bool EPSequence::is_zero() const {
  auto z = [](long v) { return v == 0; };
  return std::all_of(left_.vals.begin(), left_.vals.end(), z) && std::all_of(right_.vals.begin(), right_.vals.end(), z) &&
         std::all_of(core_.begin(), core_.end(), z);
}

CommonFrame common_frame(const std::vector<const EPSequence*>& seqs) {
  CommonFrame f{0, 0, 2, 2};
  bool first = true;
  for (const auto* s : seqs) {
    if (first) {
      f.left_end = s->left_end();
      f.right_start = s->right_start();
      first = false;
    }
    f.left_end = std::min(f.left_end, s->left_end());
    f.right_start = std::max(f.right_start, s->right_start());
    f.left_period = std::lcm(f.left_period, s->left().period());
    f.right_period = std::lcm(f.right_period, s->right().period());
  }
  // One index of margin so that i + 1 and i - 1 stay periodic beyond the frame.
  f.left_end -= 1;
  f.right_start += 1;
  return f;
}

namespace {
// Every index whose value matters: one full period past each end of the frame.
template <class F>
bool all_in_frame(const CommonFrame& f, F pred) {
  for (long i = f.left_end - static_cast<long>(f.left_period) + 1; i < f.right_start + static_cast<long>(f.right_period); ++i)
    if (!pred(i)) return false;
  return true;
}
}  // namespace

bool operator==(const EPSequence& a, const EPSequence& b) {
  const CommonFrame f = common_frame({&a, &b});
  return all_in_frame(f, [&](long i) { return a.value(i) == b.value(i); });
}

std::string EPSequence::to_string() const {
  std::ostringstream os;
  auto list = [&](const std::vector<long>& v) {
    os << "[";
    for (std::size_t k = 0; k < v.size(); ++k) os << (k ? "," : "") << v[k];
    os << "]";
  };
  os << "left(end " << left_end_ << ") ";
  list(left_.vals);
  os << " core ";
  list(core_);
  os << " right(start " << right_start_ << ") ";
  list(right_.vals);
  return os.str();
}

// ---------------------------------------------------------------------------
// Slopes

std::string SlopePair::to_string() const { return "(" + alpha.get_str() + ", " + beta.get_str() + ")"; }

mpz_class partial_sum(const SlopeObject& m, long j, Direction dir) {
  if (j < 0) throw std::invalid_argument("partial sums need j >= 0");
  mpz_class s = 0;
  for (long i = 0; i <= j; ++i) s += sign(i) * m.dims.value(dir == Direction::Plus ? i : -i);
  return s;
}

SlopePair slopes(const SlopeObject& m) {
  const EPSequence& d = m.dims;
  SlopePair p;
  mpz_class a = 0, b = 0;
  for (std::size_t t = 0; t < d.right().period(); ++t) a += sign(d.right_start() + static_cast<long>(t)) * d.right().vals[t];
  for (std::size_t t = 0; t < d.left().period(); ++t) b += sign(d.left_end() + static_cast<long>(t)) * d.left().vals[t];
  p.alpha = mpq_class(a, static_cast<unsigned long>(d.right().period()));
  p.beta = mpq_class(b, static_cast<unsigned long>(d.left().period()));
  p.alpha.canonicalize();
  p.beta.canonicalize();
  return p;
}

bool verify_slopes(const SlopeObject& m) {
  const SlopePair s = slopes(m);
  auto check = [&](Direction dir, long start, long period, const mpq_class& slope) {
    const long j0 = std::max(0L, start);
    for (long j = j0; j < j0 + 4 * period; ++j) {
      const mpq_class gap0 = mpq_class(partial_sum(m, j, dir)) - slope * j;
      const mpq_class gap1 = mpq_class(partial_sum(m, j + period, dir)) - slope * (j + period);
      if (gap0 != gap1) return false;
    }
    return true;
  };
  const EPSequence& d = m.dims;
  return check(Direction::Plus, d.right_start(), static_cast<long>(d.right().period()), s.alpha) &&
         check(Direction::Minus, -d.left_end(), static_cast<long>(d.left().period()), s.beta);
}

SlopeObject shift_slope(const SlopeObject& m, long k) {
  const EPSequence& d = m.dims;
  return {EPSequence(d.left_end() - k, d.left(), d.core(), d.right_start() - k, d.right())};
}

SlopeObject direct_sum(const SlopeObject& a, const SlopeObject& b) {
  const CommonFrame f = common_frame({&a.dims, &b.dims});
  return {EPSequence::tabulate(f.left_end, f.left_period, f.right_start, f.right_period,
                               [&](long i) { return a.dims(i) + b.dims(i); })};
}

void check_rank_profile(const RankProfile& f) {
  const CommonFrame fr = common_frame({&f.source.dims, &f.target.dims, &f.ranks});
  for (long i = fr.left_end - static_cast<long>(fr.left_period) + 1; i < fr.right_start + static_cast<long>(fr.right_period); ++i)
    if (f.ranks(i) > std::min(f.source.dims(i), f.target.dims(i)))
      throw std::invalid_argument("rank " + std::to_string(f.ranks(i)) + " in degree " + std::to_string(i) +
                                  " exceeds a dimension");
}

SlopeObject cone_profile(const RankProfile& f) {
  check_rank_profile(f);
  const CommonFrame fr = common_frame({&f.source.dims, &f.target.dims, &f.ranks});
  return {EPSequence::tabulate(fr.left_end, fr.left_period, fr.right_start, fr.right_period, [&](long i) {
    return (f.target.dims(i) - f.ranks(i)) + (f.source.dims(i + 1) - f.ranks(i + 1));
  })};
}

const char* slope_class_name(SlopeClass c) {
  switch (c) {
    case SlopeClass::D: return "D";
    case SlopeClass::C: return "C";
    case SlopeClass::CPrime: return "C'";
    case SlopeClass::Le0: return "w<=0";
    case SlopeClass::Ge0: return "w>=0";
  }
  return "?";
}

bool membership(const SlopeObject& m, SlopeClass which) {
  const EPSequence& d = m.dims;
  switch (which) {
    case SlopeClass::D:
      return true;
    case SlopeClass::C: {
      const SlopePair s = slopes(m);
      return is_integer(s.alpha) && is_integer(s.beta);
    }
    case SlopeClass::CPrime: {
      const SlopePair s = slopes(m);
      return is_integer(s.beta - s.alpha);
    }
    case SlopeClass::Le0: {
      // The left tail reaches -infinity, so it must vanish outright.
      const auto& l = d.left().vals;
      if (std::any_of(l.begin(), l.end(), [](long v) { return v != 0; })) return false;
      for (long i = d.left_end() + 1; i < 0; ++i)
        if (d(i) != 0) return false;
      return true;
    }
    case SlopeClass::Ge0: {
      const auto& r = d.right().vals;
      if (std::any_of(r.begin(), r.end(), [](long v) { return v != 0; })) return false;
      for (long i = 1; i < d.right_start(); ++i)
        if (d(i) != 0) return false;
      return true;
    }
  }
  return false;
}

std::pair<SlopeObject, SlopeObject> truncate(const SlopeObject& m, long index) {
  const long c = -index;
  const EPSequence& d = m.dims;
  const long le = std::min(d.left_end(), c - 1), rs = std::max(d.right_start(), c);
  const std::size_t pl = d.left().period(), pr = d.right().period();
  SlopeObject low{EPSequence::tabulate(le, pl, rs, pr, [&](long i) { return i >= c ? d(i) : 0; })};
  SlopeObject high{EPSequence::tabulate(le, pl, rs, pr, [&](long i) { return i < c ? d(i) : 0; })};
  return {low, high};
}

bool dominated(const SlopeObject& a, const SlopeObject& b) {
  const CommonFrame f = common_frame({&a.dims, &b.dims});
  return all_in_frame(f, [&](long i) { return a.dims(i) <= b.dims(i); });
}

SlopeObject pad_to_C(const SlopeObject& m) {
  if (membership(m, SlopeClass::C)) return m;
  const EPSequence& d = m.dims;
  // Raise the alternating period sum to the next multiple of the period on a '+' slot.
  auto pad = [](Tail t, long anchor) {
    const long p = static_cast<long>(t.period());
    long s = 0;
    for (long k = 0; k < p; ++k) s += sign(anchor + k) * t.vals[static_cast<std::size_t>(k)];
    const long deficit = pmod(-s, p);
    const long slot = pmod(anchor, 2) == 0 ? 0 : 1;
    t.vals[static_cast<std::size_t>(slot)] += deficit;
    return t;
  };
  return {EPSequence(d.left_end(), pad(d.left(), d.left_end()), d.core(), d.right_start(),
                     pad(d.right(), d.right_start()))};
}

// ---------------------------------------------------------------------------
// Random generation

SlopeObject random_slope_object(Rng& rng, const RandomSlopeOptions& opt) {
  auto tail = [&]() {
    const std::size_t p = opt.periods[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(opt.periods.size()) - 1))];
    Tail t;
    const bool zero = rng.chance(opt.bounded_percent);
    for (std::size_t k = 0; k < p; ++k) t.vals.push_back(zero ? 0 : rng.uniform(0, opt.max_value));
    return t;
  };
  const long le = rng.uniform(-opt.window, 0);
  const long rs = rng.uniform(le + 1, opt.window + 1);
  std::vector<long> core;
  for (long i = le + 1; i < rs; ++i) core.push_back(rng.uniform(0, opt.max_value));
  Tail l = tail(), r = tail();
  return {EPSequence(le, std::move(l), std::move(core), rs, std::move(r))};
}

SlopeObject random_c_object(Rng& rng, const RandomSlopeOptions& opt) { return pad_to_C(random_slope_object(rng, opt)); }

RankProfile random_rank_profile(const SlopeObject& source, const SlopeObject& target, Rng& rng) {
  const CommonFrame f = common_frame({&source.dims, &target.dims});
  auto draw = [&](long i) { return rng.uniform(0, std::min(source.dims(i), target.dims(i))); };
  Tail l, r;
  for (std::size_t t = 0; t < f.left_period; ++t) l.vals.push_back(draw(f.left_end - static_cast<long>(t)));
  for (std::size_t t = 0; t < f.right_period; ++t) r.vals.push_back(draw(f.right_start + static_cast<long>(t)));
  std::vector<long> core;
  for (long i = f.left_end + 1; i < f.right_start; ++i) core.push_back(draw(i));
  return {source, target, EPSequence(f.left_end, std::move(l), std::move(core), f.right_start, std::move(r))};
}

SlopeObject slope_object_with(const mpq_class& alpha, const mpq_class& beta) {
  auto tail_for = [](const mpq_class& q) {
    mpz_class p = q.get_den();
    if (p % 2 != 0) p *= 2;
    const mpz_class s = q.get_num() * (p / q.get_den());
    Tail t;
    t.vals.assign(p.get_ui(), 0);
    // Anchors are even, so slot 0 counts with sign + and slot 1 with sign -.
    if (s >= 0)
      t.vals[0] = s.get_si();
    else
      t.vals[1] = -s.get_si();
    return t;
  };
  return {EPSequence(-2, tail_for(beta), {0}, 0, tail_for(alpha))};
}

// ---------------------------------------------------------------------------
// Obstruction

ObstructionCertificate no_decomposition_witness(const SlopeObject& m, std::uint64_t seed) {
  if (!membership(m, SlopeClass::CPrime)) throw std::invalid_argument("object is not in C'");
  if (membership(m, SlopeClass::C)) throw std::invalid_argument("object is in C; no obstruction");
  ObstructionCertificate c;
  c.object = m;
  c.slopes = slopes(m);
  c.beta_minus_alpha = c.slopes.beta - c.slopes.alpha;
  const EPSequence& d = m.dims;
  for (long idx = -d.right_start() - 1; idx <= -d.left_end() + 1; ++idx) {
    const auto [low, high] = truncate(m, idx);
    c.cuts.push_back({idx, slopes(low), slopes(high)});
  }
  Rng rng(seed);
  for (int t = 0; t < 50; ++t) {
    const SlopeObject a = random_slope_object(rng), b = random_slope_object(rng);
    const RankProfile f = random_rank_profile(a, b, rng);
    ++c.additivity_samples;
    if (slopes(cone_profile(f)) != slopes(b) - slopes(a)) ++c.additivity_failures;
  }
  return c;
}

std::string check_certificate(const ObstructionCertificate& c) {
  if (c.additivity_samples == 0 || c.additivity_failures != 0) return "slope additivity not established";
  if (slopes(c.object) != c.slopes) return "recorded slopes do not match the object";
  if (!is_integer(c.beta_minus_alpha) || c.beta_minus_alpha != c.slopes.beta - c.slopes.alpha)
    return "object is not in C'";
  if (is_integer(c.slopes.alpha)) return "alpha is an integer";
  for (const auto& cut : c.cuts) {
    const auto [low, high] = truncate(c.object, cut.index);
    if (slopes(low) != cut.low || slopes(high) != cut.high) return "cut slopes do not re-derive";
    // X in degrees >= 0 has beta = 0, Y in degrees <= -1 has alpha = 0.
    if (cut.low.beta != 0 || cut.high.alpha != 0) return "truncation part has the wrong vanishing slope";
    if (cut.low.alpha + cut.high.alpha != c.slopes.alpha) return "alpha is not additive on the cut";
    // X ∈ C′ would force alpha_X = alpha_M ∈ Z.
    if (membership(low, SlopeClass::CPrime) && membership(high, SlopeClass::CPrime))
      return "cut " + std::to_string(cut.index) + " stays inside C'";
  }
  return {};
}

OracleResult exhaustive_oracle(const SlopeObject& m, long m_lo, long m_hi, long bound) {
  OracleResult out;
  const EPSequence& d = m.dims;
  const std::size_t p = d.right().period();
  for (long idx = m_lo; idx <= m_hi; ++idx) {
    const long c = -idx;
    const long rs = std::max(d.right_start(), c);
    const std::size_t core_n = static_cast<std::size_t>(rs - c);
    const std::size_t vars = core_n + p;
    std::vector<long> xv(vars, 0);
    // Odometer over X values in [0, bound].
    for (bool more = true; more;) {
      std::vector<long> core(xv.begin(), xv.begin() + static_cast<std::ptrdiff_t>(core_n));
      const SlopeObject x{EPSequence(c - 1, Tail{{0, 0}}, core, rs,
                                     Tail{std::vector<long>(xv.begin() + static_cast<std::ptrdiff_t>(core_n), xv.end())})};
      // Ranks live where X does; enumerate each slot up to the pointwise minimum.
      std::vector<long> cap(vars), rv(vars, 0);
      for (std::size_t k = 0; k < vars; ++k) {
        const long i = k < core_n ? c + static_cast<long>(k) : rs + static_cast<long>(k - core_n);
        cap[k] = std::min(x.dims(i), d(i));
      }
      for (bool rmore = true; rmore;) {
        std::vector<long> rcore(rv.begin(), rv.begin() + static_cast<std::ptrdiff_t>(core_n));
        const EPSequence ranks(c - 1, Tail{{0, 0}}, rcore, rs,
                               Tail{std::vector<long>(rv.begin() + static_cast<std::ptrdiff_t>(core_n), rv.end())});
        const SlopeObject y = cone_profile({x, m, ranks});
        // Y ∈ w≥idx+1: supported in degrees <= c - 1.
        if (membership(shift_slope(y, c - 1), SlopeClass::Ge0)) {
          ++out.decompositions;
          if (membership(x, SlopeClass::CPrime) && membership(y, SlopeClass::CPrime)) ++out.inside;
        }
        rmore = false;
        for (std::size_t k = 0; k < vars; ++k) {
          if (rv[k] < cap[k]) {
            ++rv[k];
            rmore = true;
            break;
          }
          rv[k] = 0;
        }
      }
      more = false;
      for (std::size_t k = 0; k < vars; ++k) {
        if (xv[k] < bound) {
          ++xv[k];
          more = true;
          break;
        }
        xv[k] = 0;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Extension claims

ExtensionReport verify_extension_claims(SlopeClass sub, const std::vector<SlopeObject>& samples) {
  if (sub != SlopeClass::C && sub != SlopeClass::CPrime) throw std::invalid_argument("sub must be C or C'");
  ExtensionReport rep;
  rep.samples = samples.size();
  auto bounded_above = [](const SlopeObject& o) {
    return std::all_of(o.dims.left().vals.begin(), o.dims.left().vals.end(), [](long v) { return v == 0; });
  };
  auto bounded_below = [](const SlopeObject& o) {
    return std::all_of(o.dims.right().vals.begin(), o.dims.right().vals.end(), [](long v) { return v == 0; });
  };
  for (const auto& m : samples) {
    const SlopeObject n = pad_to_C(m);
    if (!membership(n, SlopeClass::C) || !dominated(m, n)) {
      ++rep.class_failures;
      continue;
    }
    // M lies in a class of D iff it is a retract of a member of the small class;
    // the padded N is the candidate, and a nonzero dim outside the class rules out any other.
    for (SlopeClass side : {SlopeClass::Le0, SlopeClass::Ge0})
      if (membership(m, side) != membership(n, side)) ++rep.class_failures;
    if (membership(m, SlopeClass::Le0) && membership(m, SlopeClass::Ge0) && !membership(m, SlopeClass::C))
      ++rep.heart_failures;
    if (bounded_above(m) != bounded_above(n) || bounded_below(m) != bounded_below(n)) ++rep.boundedness_failures;
    if (membership(m, sub)) {
      const auto [low, high] = truncate(m, 0);
      if (!membership(low, sub) || !membership(high, sub)) {
        ++rep.restriction_failures;
        if (!rep.witness) rep.witness = m;
      }
    }
  }
  return rep;
}

}  // namespace wstruct
