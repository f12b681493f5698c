#include "blockforge/matrix.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include "blockforge/error.hpp"
#include "blockforge/number_theory.hpp"

namespace blockforge {

Matrix::Matrix(const FieldDescriptor& f, std::size_t n) : field_(&f), n_(n), a_(n * n, 0) {}

Matrix::Matrix(const FieldDescriptor& f, std::size_t n, std::vector<FieldCode> entries)
    : field_(&f), n_(n), a_(std::move(entries)) {
  if (a_.size() != n * n) throw InvalidArgument("matrix entry count does not match size");
  for (FieldCode c : a_) {
    if (c >= f.q()) throw InvalidArgument("matrix entry out of range for " + f.label());
  }
}

Matrix Matrix::identity(const FieldDescriptor& f, std::size_t n) { return scalar(f, n, 1); }

Matrix Matrix::scalar(const FieldDescriptor& f, std::size_t n, FieldCode c) {
  Matrix m(f, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, c);
  return m;
}

Matrix Matrix::diagonal(const FieldDescriptor& f, const std::vector<FieldCode>& d) {
  Matrix m(f, d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m.set(i, i, d[i]);
  return m;
}

Matrix Matrix::antidiagonal(const FieldDescriptor& f, std::size_t n) {
  Matrix m(f, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, n - 1 - i, 1);
  return m;
}

void Matrix::check_compatible(const Matrix& o) const {
  if (field_ != o.field_ || n_ != o.n_) throw InvalidArgument("matrix size or field mismatch");
}

Matrix Matrix::operator*(const Matrix& o) const {
  check_compatible(o);
  Matrix r(*field_, n_);
  const auto& f = *field_;
  if (f.is_prime_field() && f.p() < (std::uint64_t{1} << 31)) {
    const std::uint64_t p = f.p();
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        std::uint64_t acc = 0;
        for (std::size_t k = 0; k < n_; ++k) {
          acc += a_[i * n_ + k] * o.a_[k * n_ + j];
          if (acc >= (std::uint64_t{1} << 62)) acc %= p;
        }
        r.a_[i * n_ + j] = acc % p;
      }
    }
    return r;
  }
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = 0; k < n_; ++k) {
      FieldCode x = a_[i * n_ + k];
      if (x == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        FieldCode y = o.a_[k * n_ + j];
        if (y != 0) r.a_[i * n_ + j] = f.add(r.a_[i * n_ + j], f.mul(x, y));
      }
    }
  }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  check_compatible(o);
  Matrix r(*field_, n_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = field_->add(a_[i], o.a_[i]);
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  check_compatible(o);
  Matrix r(*field_, n_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = field_->sub(a_[i], o.a_[i]);
  return r;
}

Matrix Matrix::scaled(FieldCode s) const {
  Matrix r(*field_, n_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = field_->mul(a_[i], s);
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(*field_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) r.a_[j * n_ + i] = a_[i * n_ + j];
  return r;
}

Matrix Matrix::inverse() const {
  const auto& f = *field_;
  std::vector<FieldCode> m = a_;
  Matrix inv = identity(f, n_);
  for (std::size_t c = 0; c < n_; ++c) {
    std::size_t piv = c;
    while (piv < n_ && m[piv * n_ + c] == 0) ++piv;
    if (piv == n_) throw InvalidArgument("matrix is singular");
    if (piv != c) {
      for (std::size_t j = 0; j < n_; ++j) {
        std::swap(m[piv * n_ + j], m[c * n_ + j]);
        std::swap(inv.a_[piv * n_ + j], inv.a_[c * n_ + j]);
      }
    }
    FieldCode s = f.inv(m[c * n_ + c]);
    for (std::size_t j = 0; j < n_; ++j) {
      m[c * n_ + j] = f.mul(m[c * n_ + j], s);
      inv.a_[c * n_ + j] = f.mul(inv.a_[c * n_ + j], s);
    }
    for (std::size_t i = 0; i < n_; ++i) {
      if (i == c) continue;
      FieldCode t = m[i * n_ + c];
      if (t == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        m[i * n_ + j] = f.sub(m[i * n_ + j], f.mul(t, m[c * n_ + j]));
        inv.a_[i * n_ + j] = f.sub(inv.a_[i * n_ + j], f.mul(t, inv.a_[c * n_ + j]));
      }
    }
  }
  return inv;
}

FieldCode Matrix::det() const {
  const auto& f = *field_;
  std::vector<FieldCode> m = a_;
  FieldCode d = 1;
  for (std::size_t c = 0; c < n_; ++c) {
    std::size_t piv = c;
    while (piv < n_ && m[piv * n_ + c] == 0) ++piv;
    if (piv == n_) return 0;
    if (piv != c) {
      for (std::size_t j = 0; j < n_; ++j) std::swap(m[piv * n_ + j], m[c * n_ + j]);
      d = f.neg(d);
    }
    FieldCode pv = m[c * n_ + c];
    d = f.mul(d, pv);
    FieldCode s = f.inv(pv);
    for (std::size_t i = c + 1; i < n_; ++i) {
      FieldCode t = m[i * n_ + c];
      if (t == 0) continue;
      t = f.mul(t, s);
      for (std::size_t j = c; j < n_; ++j) m[i * n_ + j] = f.sub(m[i * n_ + j], f.mul(t, m[c * n_ + j]));
    }
  }
  return d;
}

Matrix Matrix::pow(std::uint64_t e) const {
  Matrix result = identity(*field_, n_);
  Matrix base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

Matrix Matrix::frobenius(unsigned times) const {
  Matrix r(*field_, n_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = field_->frobenius(a_[i], times);
  return r;
}

Matrix Matrix::entry_power(std::uint64_t e) const {
  Matrix r(*field_, n_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = field_->pow(a_[i], e);
  return r;
}

Matrix Matrix::embedded(const FieldDescriptor& super) const {
  if (&super == field_) return *this;
  Matrix r(super, n_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = embed(FieldElement(*field_, a_[i]), super).code();
  return r;
}

Matrix Matrix::restricted(const FieldDescriptor& sub) const {
  if (&sub == field_) return *this;
  Matrix r(sub, n_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = restrict_to(FieldElement(*field_, a_[i]), sub).code();
  return r;
}

bool Matrix::is_identity() const noexcept {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (a_[i * n_ + j] != (i == j ? 1u : 0u)) return false;
  return true;
}

bool Matrix::is_scalar() const noexcept {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      if (i != j && a_[i * n_ + j] != 0) return false;
      if (i == j && a_[i * n_ + j] != a_[0]) return false;
    }
  return true;
}

std::size_t Matrix::rank() const {
  return n_ - nullspace(*field_, n_, n_, a_).size();
}

Polynomial Matrix::characteristic_polynomial() const {
  const auto& f = *field_;
  const std::size_t n = n_;
  std::vector<FieldCode> h = a_;
  auto H = [&](std::size_t i, std::size_t j) -> FieldCode& { return h[i * n + j]; };
  // Reduce to upper Hessenberg form by similarity.
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t i = m;
    while (i < n && H(i, m - 1) == 0) ++i;
    if (i == n) continue;
    if (i != m) {
      for (std::size_t j = 0; j < n; ++j) std::swap(H(i, j), H(m, j));
      for (std::size_t j = 0; j < n; ++j) std::swap(H(j, i), H(j, m));
    }
    FieldCode piv_inv = f.inv(H(m, m - 1));
    for (std::size_t r = m + 1; r < n; ++r) {
      FieldCode u = f.mul(H(r, m - 1), piv_inv);
      if (u == 0) continue;
      for (std::size_t j = 0; j < n; ++j) H(r, j) = f.sub(H(r, j), f.mul(u, H(m, j)));
      for (std::size_t j = 0; j < n; ++j) H(j, m) = f.add(H(j, m), f.mul(u, H(j, r)));
    }
  }
  // p_k = (x - h_kk) p_{k-1} - sum_{i<k} h_ik (prod_{j=i+1..k} h_{j,j-1}) p_{i-1}, 1-based.
  std::vector<Polynomial> p;
  p.push_back(Polynomial::constant(f, 1));
  for (std::size_t k = 1; k <= n; ++k) {
    Polynomial next = Polynomial(f, {f.neg(H(k - 1, k - 1)), 1}) * p[k - 1];
    FieldCode prod = 1;
    for (std::size_t i = k - 1; i >= 1; --i) {
      prod = f.mul(prod, H(i, i - 1));
      if (prod == 0) break;
      FieldCode coef = f.mul(H(i - 1, k - 1), prod);
      if (coef != 0) next = next - p[i - 1].scaled(coef);
    }
    p.push_back(std::move(next));
  }
  return p[n];
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.size(); ++i) {
    os << (i ? " [" : "[");
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j) os << ' ';
      os << m.element(i, j);
    }
    os << ']';
  }
  return os << ']';
}

Matrix corner_embed(const Matrix& block, std::size_t n, const std::vector<std::size_t>& coords) {
  if (coords.size() != block.size()) throw InvalidArgument("coordinate count does not match block size");
  Matrix r = Matrix::identity(block.field(), n);
  for (std::size_t i = 0; i < coords.size(); ++i)
    for (std::size_t j = 0; j < coords.size(); ++j) r.set(coords[i], coords[j], block.at(i, j));
  return r;
}

Matrix block_diagonal(const std::vector<Matrix>& blocks) {
  if (blocks.empty()) throw InvalidArgument("no blocks");
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.size();
  Matrix r(blocks.front().field(), n);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    if (&b.field() != &r.field()) throw InvalidArgument("block field mismatch");
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) r.set(off + i, off + j, b.at(i, j));
    off += b.size();
  }
  return r;
}

std::vector<std::vector<FieldCode>> nullspace(const FieldDescriptor& f, std::size_t rows, std::size_t cols,
                                              std::vector<FieldCode> a) {
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
    FieldCode s = f.inv(a[r * cols + c]);
    for (std::size_t j = 0; j < cols; ++j) a[r * cols + j] = f.mul(a[r * cols + j], s);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      FieldCode t = a[i * cols + c];
      if (t == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) a[i * cols + j] = f.sub(a[i * cols + j], f.mul(t, a[r * cols + j]));
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<FieldCode>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<FieldCode> v(cols, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = f.neg(a[i * cols + free]);
    basis.push_back(std::move(v));
  }
  return basis;
}

const FieldDescriptor& splitting_field(const Matrix& m) {
  const auto& f = m.field();
  auto degs = irreducible_factor_degrees(m.characteristic_polynomial());
  std::uint64_t d = 1;
  for (unsigned x : degs) d = lcm_u64(d, x);
  return field_create(f.p(), static_cast<unsigned>(f.k() * d));
}

std::vector<FieldElement> eigenvalue_multiset(const Matrix& m, const FieldDescriptor& e) {
  const auto& f = m.field();
  if (e.p() != f.p() || e.k() % f.k() != 0) {
    throw InvalidArgument(e.label() + " does not contain " + f.label());
  }
  Polynomial cp = embed(m.characteristic_polynomial(), e);
  std::vector<FieldElement> out;
  for (auto& [r, mult] : roots(cp)) out.insert(out.end(), mult, r);
  if (out.size() != m.size()) {
    throw InvalidArgument(e.label() + " does not split the characteristic polynomial");
  }
  return out;
}

}  // namespace blockforge
