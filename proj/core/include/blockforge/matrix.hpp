#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "blockforge/finite_field.hpp"
#include "blockforge/polynomial.hpp"

namespace blockforge {

/// Dense square matrix over a finite field, row-major codes.
class Matrix {
 public:
  Matrix(const FieldDescriptor& f, std::size_t n);
  Matrix(const FieldDescriptor& f, std::size_t n, std::vector<FieldCode> entries);

  static Matrix identity(const FieldDescriptor& f, std::size_t n);
  static Matrix scalar(const FieldDescriptor& f, std::size_t n, FieldCode c);
  static Matrix diagonal(const FieldDescriptor& f, const std::vector<FieldCode>& d);
  /// Antidiagonal permutation matrix j_n.
  static Matrix antidiagonal(const FieldDescriptor& f, std::size_t n);

  const FieldDescriptor& field() const noexcept { return *field_; }
  std::size_t size() const noexcept { return n_; }
  FieldCode at(std::size_t i, std::size_t j) const noexcept { return a_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, FieldCode v) noexcept { a_[i * n_ + j] = v; }
  FieldElement element(std::size_t i, std::size_t j) const { return {*field_, at(i, j)}; }
  const std::vector<FieldCode>& entries() const noexcept { return a_; }

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(FieldCode s) const;
  Matrix transpose() const;
  /// Throws InvalidArgument when singular.
  Matrix inverse() const;
  FieldCode det() const;
  Matrix pow(std::uint64_t e) const;
  /// Entrywise x -> x^(p^times).
  Matrix frobenius(unsigned times) const;
  /// Entrywise power map x -> x^e (e.g. the q-power on GF(q^2)).
  Matrix entry_power(std::uint64_t e) const;
  Matrix embedded(const FieldDescriptor& super) const;
  /// Entries mapped to `sub` (each entry must lie in it).
  Matrix restricted(const FieldDescriptor& sub) const;

  bool is_identity() const noexcept;
  bool is_scalar() const noexcept;
  std::size_t rank() const;

  Polynomial characteristic_polynomial() const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.n_ == b.n_ && a.a_ == b.a_;
  }

 private:
  void check_compatible(const Matrix& o) const;

  const FieldDescriptor* field_;
  std::size_t n_;
  std::vector<FieldCode> a_;
};

std::ostream& operator<<(std::ostream& os, const Matrix& m);

/// Places `block` at the given coordinates (0-based) of an identity matrix of size n.
Matrix corner_embed(const Matrix& block, std::size_t n, const std::vector<std::size_t>& coords);

/// Block-diagonal matrix.
Matrix block_diagonal(const std::vector<Matrix>& blocks);

/// Nullspace of the (rows x cols) row-major system over f, as basis vectors.
std::vector<std::vector<FieldCode>> nullspace(const FieldDescriptor& f, std::size_t rows, std::size_t cols,
                                              std::vector<FieldCode> a);

/// Least extension of M's entry field containing every eigenvalue of M.
const FieldDescriptor& splitting_field(const Matrix& m);

/// Eigenvalues with multiplicity (sorted by code) in E, which must contain the entry field
/// and split the characteristic polynomial.
std::vector<FieldElement> eigenvalue_multiset(const Matrix& m, const FieldDescriptor& e);

}  // namespace blockforge
