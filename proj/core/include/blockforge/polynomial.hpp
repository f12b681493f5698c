#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "blockforge/finite_field.hpp"

namespace blockforge {

/// Univariate polynomial over a finite field; coefficients low degree first, trimmed.
class Polynomial {
 public:
  Polynomial(const FieldDescriptor& f, std::vector<FieldCode> coeffs);
  static Polynomial zero(const FieldDescriptor& f) { return {f, {}}; }
  static Polynomial constant(const FieldDescriptor& f, FieldCode c) { return {f, {c}}; }
  static Polynomial x(const FieldDescriptor& f) { return {f, {0, 1}}; }
  /// x - a
  static Polynomial linear(const FieldElement& a);

  const FieldDescriptor& field() const noexcept { return *field_; }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  FieldCode coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
  FieldCode leading() const noexcept { return c_.empty() ? 0 : c_.back(); }
  const std::vector<FieldCode>& coefficients() const noexcept { return c_; }

  Polynomial monic() const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(FieldCode s) const;
  /// Quotient and remainder.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const;
  Polynomial operator%(const Polynomial& d) const { return divmod(d).second; }
  Polynomial operator/(const Polynomial& d) const { return divmod(d).first; }
  Polynomial derivative() const;
  FieldElement evaluate(const FieldElement& x) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.field_ == b.field_ && a.c_ == b.c_;
  }

 private:
  void trim();

  const FieldDescriptor* field_;
  std::vector<FieldCode> c_;
};

Polynomial gcd(Polynomial a, Polynomial b);
Polynomial powmod(Polynomial base, std::uint64_t e, const Polynomial& mod);

/// Roots in the coefficient field with multiplicities, sorted by element code.
std::vector<std::pair<FieldElement, unsigned>> roots(const Polynomial& f);

/// Degrees of the distinct irreducible factors of f (f nonzero), ascending.
std::vector<unsigned> irreducible_factor_degrees(const Polynomial& f);

/// Coefficients mapped into a larger field through the fixed embedding.
Polynomial embed(const Polynomial& f, const FieldDescriptor& super);

}  // namespace blockforge
