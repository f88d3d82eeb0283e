#include "wstruct/scalar.hpp"

#include <cctype>

namespace wstruct {

namespace {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::int64_t reduce_mod(const mpz_class& z, std::uint32_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
  return static_cast<std::int64_t>(r.get_ui());
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = a;
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (t < 0) t += p;
  return t;
}

}  // namespace

Field Field::prime(std::uint32_t p) {
  if (p >= (1u << 31) || !is_prime(p))
    throw std::invalid_argument("field characteristic " + std::to_string(p) +
                                " is not a prime below 2^31");
  return Field(p);
}

Field Field::parse(const std::string& text) {
  if (text == "q" || text == "Q") return rationals();
  if (text.rfind("fp:", 0) == 0) {
    const std::string digits = text.substr(3);
    if (digits.empty() || digits.size() > 10) throw std::invalid_argument("bad field '" + text + "'");
    for (char c : digits)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw std::invalid_argument("bad field '" + text + "'");
    return prime(static_cast<std::uint32_t>(std::stoull(digits)));
  }
  throw std::invalid_argument("bad field '" + text + "' (expected q or fp:P)");
}

std::string Field::name() const { return p_ == 0 ? "q" : "fp:" + std::to_string(p_); }

Scalar::Scalar(Field f, long value) : p_(f.characteristic()) {
  if (p_ == 0) {
    q_ = value;
  } else {
    std::int64_t r = value % static_cast<std::int64_t>(p_);
    r_ = r < 0 ? r + p_ : r;
  }
}

Scalar::Scalar(Field f, const mpq_class& value) : p_(f.characteristic()) {
  if (p_ == 0) {
    q_ = value;
    q_.canonicalize();
  } else {
    const std::int64_t den = reduce_mod(value.get_den(), p_);
    if (den == 0) throw std::domain_error("denominator vanishes modulo p");
    r_ = (reduce_mod(value.get_num(), p_) * inv_mod(den, p_)) % p_;
  }
}

Scalar Scalar::parse(Field f, const std::string& text) { return Scalar(f, parse_rational(text)); }

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  Scalar out = *this;
  if (p_ == 0)
    out.q_ = 1 / q_;
  else
    out.r_ = inv_mod(r_, p_);
  return out;
}

Scalar Scalar::operator-() const {
  Scalar out = *this;
  if (p_ == 0)
    out.q_ = -q_;
  else if (r_ != 0)
    out.r_ = p_ - r_;
  return out;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same(o);
  if (p_ == 0) {
    q_ += o.q_;
  } else {
    r_ += o.r_;
    if (r_ >= p_) r_ -= p_;
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_same(o);
  if (p_ == 0) {
    q_ -= o.q_;
  } else {
    r_ -= o.r_;
    if (r_ < 0) r_ += p_;
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same(o);
  if (p_ == 0)
    q_ *= o.q_;
  else
    r_ = (r_ * o.r_) % p_;
  return *this;
}

std::string Scalar::to_string() const {
  return p_ == 0 ? rational_to_string(q_) : std::to_string(r_);
}

std::string rational_to_string(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

mpq_class parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  auto parse_int = [&](const std::string& s) {
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (s.size() == start) throw std::invalid_argument("bad rational '" + text + "'");
    for (std::size_t i = start; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        throw std::invalid_argument("bad rational '" + text + "'");
    return mpz_class(s[0] == '+' ? s.substr(1) : s);
  };
  if (slash == std::string::npos) return mpq_class(parse_int(text));
  mpz_class num = parse_int(text.substr(0, slash));
  mpz_class den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace wstruct
