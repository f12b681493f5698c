#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace blockforge {

/// Elements of GF(p^k) are encoded as integers sum(c_i * p^i) where c_i are the
/// coefficients of the residue polynomial modulo the field's defining modulus.
using FieldCode = std::uint64_t;

inline constexpr std::uint64_t kDefaultFieldBound = std::uint64_t{1} << 63;

/// GF(p^k) with a fixed primitive defining polynomial. Instances are owned by a
/// process-wide registry and are immutable once published.
class FieldDescriptor {
 public:
  FieldDescriptor(std::uint64_t p, unsigned k, std::vector<std::uint64_t> modulus, bool conway);
  FieldDescriptor(const FieldDescriptor&) = delete;
  FieldDescriptor& operator=(const FieldDescriptor&) = delete;

  std::uint64_t p() const noexcept { return p_; }
  unsigned k() const noexcept { return k_; }
  std::uint64_t q() const noexcept { return q_; }
  /// Monic modulus, coefficients c_0..c_k.
  const std::vector<std::uint64_t>& modulus() const noexcept { return modulus_; }
  bool is_conway() const noexcept { return conway_; }
  bool is_prime_field() const noexcept { return k_ == 1; }
  std::string label() const;

  /// The class of x modulo the defining polynomial; generates the multiplicative group.
  FieldCode generator() const noexcept { return generator_; }

  FieldCode from_integer(std::int64_t v) const;
  FieldCode add(FieldCode a, FieldCode b) const;
  FieldCode sub(FieldCode a, FieldCode b) const;
  FieldCode neg(FieldCode a) const;
  FieldCode mul(FieldCode a, FieldCode b) const;
  FieldCode inv(FieldCode a) const;
  FieldCode div(FieldCode a, FieldCode b) const { return mul(a, inv(b)); }
  FieldCode pow(FieldCode a, std::uint64_t e) const;
  /// x -> x^(p^times).
  FieldCode frobenius(FieldCode a, unsigned times = 1) const;

  std::vector<std::uint64_t> digits(FieldCode a) const;
  FieldCode from_digits(std::span<const std::uint64_t> digits) const;

  /// Multiplicative order of a nonzero element.
  std::uint64_t order(FieldCode a) const;
  /// True iff a lies in the subfield GF(p^d) (d divides k).
  bool in_subfield(FieldCode a, unsigned d) const { return frobenius(a, d) == a; }

  bool has_tables() const noexcept { return !exp_.empty(); }

 private:
  FieldCode generic_mul(FieldCode a, FieldCode b) const;
  FieldCode generic_add(FieldCode a, FieldCode b, bool subtract) const;

  std::uint64_t p_;
  unsigned k_;
  std::uint64_t q_;
  std::vector<std::uint64_t> modulus_;
  bool conway_;
  FieldCode generator_;
  std::vector<std::uint64_t> q_minus_1_primes_;
  // Exp/log/Zech tables, present for q <= kTableBound.
  std::vector<FieldCode> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> zech_;
};

using FieldRef = const FieldDescriptor*;

/// Deterministic field lookup/creation. The modulus is the bundled Conway polynomial
/// when available, otherwise the least (by code order) primitive irreducible polynomial.
const FieldDescriptor& field_create(std::uint64_t p, unsigned k, std::uint64_t bound = kDefaultFieldBound);

/// Field with q elements (q a prime power).
const FieldDescriptor& field_of_order(std::uint64_t q);

class FieldElement {
 public:
  FieldElement(const FieldDescriptor& f, FieldCode c) : field_(&f), code_(c) {}

  static FieldElement zero(const FieldDescriptor& f) { return {f, 0}; }
  static FieldElement one(const FieldDescriptor& f) { return {f, 1}; }
  static FieldElement from_integer(const FieldDescriptor& f, std::int64_t v) { return {f, f.from_integer(v)}; }

  const FieldDescriptor& field() const noexcept { return *field_; }
  FieldCode code() const noexcept { return code_; }
  bool is_zero() const noexcept { return code_ == 0; }
  bool is_one() const noexcept { return code_ == 1; }
  std::vector<std::uint64_t> coefficients() const { return field_->digits(code_); }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const { return {*field_, field_->neg(code_)}; }
  FieldElement inverse() const { return {*field_, field_->inv(code_)}; }
  FieldElement pow(std::int64_t e) const;
  FieldElement frobenius(unsigned times = 1) const { return {*field_, field_->frobenius(code_, times)}; }
  std::uint64_t order() const { return field_->order(code_); }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.field_ == b.field_ && a.code_ == b.code_;
  }
  friend std::strong_ordering operator<=>(const FieldElement& a, const FieldElement& b) {
    return a.code_ <=> b.code_;
  }

 private:
  void check_same(const FieldElement& o) const;

  const FieldDescriptor* field_;
  FieldCode code_;
};

std::ostream& operator<<(std::ostream& os, const FieldElement& x);

/// Element of multiplicative order exactly m, computed as g^((q-1)/m) for the field generator g.
FieldElement primitive_root_of_unity(const FieldDescriptor& f, std::uint64_t m);

/// Image of the generator of `sub` in `super` under the fixed embedding (sub.k | super.k).
FieldElement embedding_image(const FieldDescriptor& sub, const FieldDescriptor& super);

/// Embeds x into `super` (x's field degree must divide super's).
FieldElement embed(const FieldElement& x, const FieldDescriptor& super);

/// True iff x lies in the image of `sub` under the fixed embedding.
bool lies_in(const FieldElement& x, const FieldDescriptor& sub);
/// Preimage of x in `sub`; throws InvalidArgument when x is not in the image.
FieldElement restrict_to(const FieldElement& x, const FieldDescriptor& sub);

struct ConwayEntry {
  std::uint64_t p;
  unsigned k;
  std::vector<std::uint64_t> coefficients;  // c_0..c_k
};

/// Parses the Conway fixture format: lines "p k c0 c1 ... ck", '#' comments.
std::vector<ConwayEntry> parse_conway_table(std::string_view text);

/// The bundled table compiled into the library.
const std::vector<ConwayEntry>& bundled_conway_table();

}  // namespace blockforge
