#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "blockforge/finite_field.hpp"
#include "blockforge/integer.hpp"
#include "blockforge/polynomial.hpp"

namespace blockforge {

/// Coefficients of the n-th cyclotomic polynomial, low degree first.
const std::vector<std::int64_t>& cyclotomic_polynomial(std::uint64_t n);

/// Element of Z[zeta_n] in the power basis {zeta_n^i : 0 <= i < phi(n)}.
/// Each value carries its own conductor; binary operations lift to the lcm.
/// Rational values are normalised to conductor 1.
class CycInt {
 public:
  CycInt() : n_(1), c_{Integer(0)} {}
  CycInt(const Integer& v) : n_(1), c_{v} {}  // NOLINT(google-explicit-constructor)
  CycInt(std::int64_t v) : n_(1), c_{Integer(v)} {}  // NOLINT(google-explicit-constructor)

  /// zeta_n^e.
  static CycInt zeta(std::uint64_t n, std::uint64_t e = 1);
  /// Coefficients in the power basis of conductor n (length phi(n)).
  static CycInt from_coefficients(std::uint64_t n, std::vector<Integer> coeffs);
  /// sum_e a_e zeta_n^e for an arbitrary exponent vector (length n).
  static CycInt from_exponent_vector(std::uint64_t n, const std::vector<Integer>& a);

  std::uint64_t conductor() const noexcept { return n_; }
  const std::vector<Integer>& coefficients() const noexcept { return c_; }
  bool is_rational() const noexcept { return n_ == 1; }
  bool is_zero() const noexcept { return n_ == 1 && c_[0].is_zero(); }
  /// Throws InvalidArgument when not rational.
  const Integer& rational_value() const;

  /// The same element written at conductor N (n must divide N).
  CycInt lifted(std::uint64_t big_n) const;
  /// Exponent-space vector of length N representing this element.
  std::vector<Integer> exponent_vector(std::uint64_t big_n) const;

  CycInt operator-() const;
  CycInt& operator+=(const CycInt& o);
  CycInt& operator-=(const CycInt& o);
  friend CycInt operator+(CycInt a, const CycInt& b) { return a += b; }
  friend CycInt operator-(CycInt a, const CycInt& b) { return a -= b; }
  friend CycInt operator*(const CycInt& a, const CycInt& b);

  /// Exact division by a rational integer; throws IntegrityError if not integral.
  CycInt divexact(const Integer& d) const;
  bool divisible_by(const Integer& d) const;

  /// sigma_k : zeta -> zeta^k, k coprime to the conductor.
  CycInt galois(std::int64_t k) const;
  CycInt conjugate() const { return galois(-1); }

  std::string to_string() const;

  friend bool operator==(const CycInt& a, const CycInt& b);

 private:
  CycInt(std::uint64_t n, std::vector<Integer> c) : n_(n), c_(std::move(c)) { normalize(); }
  void normalize();

  std::uint64_t n_;
  std::vector<Integer> c_;
};

std::ostream& operator<<(std::ostream& os, const CycInt& x);

CycInt cyc_conjugate(const CycInt& x);

/// Total order used for canonical sorting: both values are compared coefficientwise
/// at the common conductor N (each conductor must divide N).
int compare_at(const CycInt& a, const CycInt& b, std::uint64_t big_n);

/// A ring homomorphism Z[zeta_N] -> GF(l^d) with kernel a maximal ideal above l.
/// For N = l^a m (m prime to l) the ideal is fixed by an irreducible factor f of
/// Phi_m over GF(l); zeta_{l^a} maps to 1 and zeta_m to a fixed root of f.
class IdealReduction {
 public:
  /// factor_index selects among the irreducible factors of Phi_m mod l in
  /// lexicographic order of their coefficient vectors (c_0, c_1, ...); 0 is the least.
  explicit IdealReduction(std::uint64_t conductor, std::uint64_t ell = 2, std::size_t factor_index = 0);

  static std::size_t factor_count(std::uint64_t conductor, std::uint64_t ell = 2);

  std::uint64_t conductor() const noexcept { return n_; }
  std::uint64_t ell() const noexcept { return ell_; }
  std::size_t factor_index() const noexcept { return index_; }
  const FieldDescriptor& target() const noexcept { return *target_; }
  /// The chosen factor f of Phi_m over GF(l).
  const Polynomial& factor() const noexcept { return factor_; }
  /// Image of zeta_N.
  FieldElement zeta_image() const { return {*target_, images_.size() > 1 ? images_[1] : 1}; }

  FieldElement reduce(const CycInt& x) const;

 private:
  std::uint64_t n_;
  std::uint64_t ell_;
  std::size_t index_;
  const FieldDescriptor* target_;
  Polynomial factor_;
  std::vector<FieldCode> images_;
};

/// Reduction modulo the chosen maximal ideal above 2.
FieldElement reduce_mod2(const CycInt& x, const IdealReduction& r);

}  // namespace blockforge
