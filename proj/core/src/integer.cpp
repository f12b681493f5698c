#include "blockforge/integer.hpp"

#include <limits>
#include <ostream>

#include "blockforge/error.hpp"

namespace blockforge {

namespace {

mpz_class from_int64(std::int64_t v) {
  mpz_class r;
  mpz_set_si(r.get_mpz_t(), static_cast<long>(v));
  return r;
}

}  // namespace

Integer::Integer(const mpz_class& v) { *this = normalize(v); }

Integer Integer::normalize(mpz_class v) {
  Integer r;
  if (mpz_fits_slong_p(v.get_mpz_t())) {
    r.small_ = mpz_get_si(v.get_mpz_t());
  } else {
    r.big_ = std::make_shared<const mpz_class>(std::move(v));
  }
  return r;
}

Integer Integer::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty integer literal", 0);
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) throw ParseError("malformed integer literal '" + s + "'", 0);
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw ParseError("malformed integer literal '" + s + "'", 0);
  }
  if (s[0] == '+') s.erase(0, 1);
  return normalize(mpz_class(s, 10));
}

std::int64_t Integer::to_int64() const {
  if (big_) throw BoundExceeded("integer " + to_string() + " does not fit in 64 bits");
  return small_;
}

mpz_class Integer::to_mpz() const { return big_ ? *big_ : from_int64(small_); }

int Integer::sign() const noexcept {
  if (big_) return mpz_sgn(big_->get_mpz_t());
  return (small_ > 0) - (small_ < 0);
}

bool Integer::is_odd() const {
  if (big_) return mpz_odd_p(big_->get_mpz_t()) != 0;
  return (small_ & 1) != 0;
}

std::uint64_t Integer::mod(std::uint64_t m) const {
  if (m == 0) throw InvalidArgument("modulus must be positive");
  if (!big_) {
    auto r = static_cast<__int128>(small_) % static_cast<__int128>(m);
    if (r < 0) r += m;
    return static_cast<std::uint64_t>(r);
  }
  mpz_class mm;
  mpz_set_ui(mm.get_mpz_t(), m);
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), big_->get_mpz_t(), mm.get_mpz_t());
  return mpz_get_ui(r.get_mpz_t());
}

bool Integer::divisible_by(const Integer& d) const {
  if (d.is_zero()) return is_zero();
  if (!big_ && !d.big_) {
    if (d.small_ == -1) return true;
    return small_ % d.small_ == 0;
  }
  return mpz_divisible_p(to_mpz().get_mpz_t(), d.to_mpz().get_mpz_t()) != 0;
}

Integer Integer::divexact(const Integer& d) const {
  if (!divisible_by(d) || d.is_zero()) {
    throw IntegrityError(to_string() + " is not divisible by " + d.to_string());
  }
  if (!big_ && !d.big_ && !(small_ == std::numeric_limits<std::int64_t>::min() && d.small_ == -1)) {
    return Integer(small_ / d.small_);
  }
  mpz_class r;
  mpz_divexact(r.get_mpz_t(), to_mpz().get_mpz_t(), d.to_mpz().get_mpz_t());
  return normalize(std::move(r));
}

Integer Integer::abs() const { return sign() < 0 ? -*this : *this; }

std::string Integer::to_string() const { return big_ ? big_->get_str(10) : std::to_string(small_); }

std::size_t Integer::hash() const noexcept {
  if (!big_) return std::hash<std::int64_t>{}(small_);
  return std::hash<std::string>{}(big_->get_str(16));
}

Integer Integer::operator-() const {
  if (!big_ && small_ != std::numeric_limits<std::int64_t>::min()) return Integer(-small_);
  return normalize(-to_mpz());
}

Integer& Integer::operator+=(const Integer& o) {
  if (!big_ && !o.big_) {
    std::int64_t r;
    if (!__builtin_add_overflow(small_, o.small_, &r)) {
      small_ = r;
      return *this;
    }
  }
  *this = normalize(to_mpz() + o.to_mpz());
  return *this;
}

Integer& Integer::operator-=(const Integer& o) {
  if (!big_ && !o.big_) {
    std::int64_t r;
    if (!__builtin_sub_overflow(small_, o.small_, &r)) {
      small_ = r;
      return *this;
    }
  }
  *this = normalize(to_mpz() - o.to_mpz());
  return *this;
}

Integer& Integer::operator*=(const Integer& o) {
  if (!big_ && !o.big_) {
    std::int64_t r;
    if (!__builtin_mul_overflow(small_, o.small_, &r)) {
      small_ = r;
      return *this;
    }
  }
  *this = normalize(to_mpz() * o.to_mpz());
  return *this;
}

bool operator==(const Integer& a, const Integer& b) {
  if (!a.big_ && !b.big_) return a.small_ == b.small_;
  if (!a.big_ || !b.big_) return false;  // normalized: big values never fit int64
  return *a.big_ == *b.big_;
}

std::strong_ordering operator<=>(const Integer& a, const Integer& b) {
  if (!a.big_ && !b.big_) return a.small_ <=> b.small_;
  int c = cmp(a.to_mpz(), b.to_mpz());
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::ostream& operator<<(std::ostream& os, const Integer& v) { return os << v.to_string(); }

Integer gcd(const Integer& a, const Integer& b) {
  mpz_class r;
  mpz_gcd(r.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return Integer(r);
}

Integer pow(const Integer& base, unsigned exponent) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.to_mpz().get_mpz_t(), exponent);
  return Integer(r);
}

}  // namespace blockforge
