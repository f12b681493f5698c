#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace blockforge {

/// Exact signed integer. Values that fit in 64 bits stay inline; anything larger
/// is promoted to a shared, immutable GMP integer.
class Integer {
 public:
  Integer() = default;
  Integer(std::int64_t v) : small_(v) {}  // NOLINT(google-explicit-constructor)
  Integer(int v) : small_(v) {}           // NOLINT(google-explicit-constructor)
  explicit Integer(const mpz_class& v);

  static Integer parse(std::string_view text);

  bool is_small() const noexcept { return big_ == nullptr; }
  bool fits_int64() const noexcept { return big_ == nullptr; }
  std::int64_t to_int64() const;
  mpz_class to_mpz() const;

  bool is_zero() const noexcept { return big_ == nullptr && small_ == 0; }
  int sign() const noexcept;
  bool is_odd() const;

  /// Non-negative remainder modulo m > 0.
  std::uint64_t mod(std::uint64_t m) const;

  /// Exact division; throws IntegrityError when d does not divide *this.
  Integer divexact(const Integer& d) const;
  bool divisible_by(const Integer& d) const;

  Integer abs() const;
  std::string to_string() const;
  std::size_t hash() const noexcept;

  Integer operator-() const;
  Integer& operator+=(const Integer& o);
  Integer& operator-=(const Integer& o);
  Integer& operator*=(const Integer& o);

  friend Integer operator+(Integer a, const Integer& b) { return a += b; }
  friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
  friend Integer operator*(Integer a, const Integer& b) { return a *= b; }

  friend bool operator==(const Integer& a, const Integer& b);
  friend std::strong_ordering operator<=>(const Integer& a, const Integer& b);

 private:
  static Integer normalize(mpz_class v);

  std::int64_t small_ = 0;
  std::shared_ptr<const mpz_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Integer& v);

Integer gcd(const Integer& a, const Integer& b);
Integer pow(const Integer& base, unsigned exponent);

}  // namespace blockforge
