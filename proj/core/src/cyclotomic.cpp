#include "blockforge/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <shared_mutex>
#include <sstream>

#include "blockforge/error.hpp"
#include "blockforge/number_theory.hpp"

namespace blockforge {

namespace {

struct PhiCache {
  std::shared_mutex mutex;
  std::map<std::uint64_t, std::unique_ptr<std::vector<std::int64_t>>> polys;
};

PhiCache& phi_cache() {
  static PhiCache c;
  return c;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw BoundExceeded("cyclotomic coefficient overflow");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw BoundExceeded("cyclotomic coefficient overflow");
  return r;
}

std::vector<std::int64_t> compute_phi(std::uint64_t n) {
  std::vector<std::int64_t> num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (std::uint64_t d : divisors(n)) {
    if (d == n) continue;
    const auto& den = cyclotomic_polynomial(d);
    const std::size_t dd = den.size() - 1;
    std::vector<std::int64_t> quo(num.size() - dd, 0);
    for (std::size_t i = num.size(); i-- > dd;) {
      std::int64_t c = num[i];
      if (c == 0) continue;
      quo[i - dd] = c;
      for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] = checked_sub(num[i - dd + j], checked_mul(c, den[j]));
    }
    num = std::move(quo);
  }
  return num;
}

// Nonzero terms of Phi_n below the leading one.
struct SparsePhi {
  std::size_t degree;
  std::vector<std::pair<std::size_t, std::int64_t>> terms;
};

const SparsePhi& sparse_phi(std::uint64_t n) {
  static std::shared_mutex mutex;
  static std::map<std::uint64_t, std::unique_ptr<SparsePhi>> cache;
  {
    std::shared_lock lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return *it->second;
  }
  const auto& phi = cyclotomic_polynomial(n);
  auto sp = std::make_unique<SparsePhi>();
  sp->degree = phi.size() - 1;
  for (std::size_t j = 0; j + 1 < phi.size(); ++j) {
    if (phi[j] != 0) sp->terms.emplace_back(j, phi[j]);
  }
  std::unique_lock lock(mutex);
  auto [it, ok] = cache.try_emplace(n, std::move(sp));
  return *it->second;
}

// Reduces an exponent-space vector (length >= phi(n)) modulo Phi_n in place and
// truncates it to phi(n) entries.
void reduce_exponents(std::uint64_t n, std::vector<Integer>& v) {
  const SparsePhi& sp = sparse_phi(n);
  for (std::size_t d = v.size(); d-- > sp.degree;) {
    if (v[d].is_zero()) continue;
    Integer c = v[d];
    for (auto [j, pj] : sp.terms) v[d - sp.degree + j] -= c * Integer(pj);
  }
  v.resize(sp.degree);
}

bool reduce_exponents_small(std::uint64_t n, std::vector<std::int64_t>& v) {
  const SparsePhi& sp = sparse_phi(n);
  for (std::size_t d = v.size(); d-- > sp.degree;) {
    std::int64_t c = v[d];
    if (c == 0) continue;
    for (auto [j, pj] : sp.terms) {
      std::int64_t t;
      if (__builtin_mul_overflow(c, pj, &t)) return false;
      if (__builtin_sub_overflow(v[d - sp.degree + j], t, &v[d - sp.degree + j])) return false;
    }
  }
  v.resize(sp.degree);
  return true;
}

}  // namespace

const std::vector<std::int64_t>& cyclotomic_polynomial(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("cyclotomic polynomial of index 0");
  PhiCache& c = phi_cache();
  {
    std::shared_lock lock(c.mutex);
    auto it = c.polys.find(n);
    if (it != c.polys.end()) return *it->second;
  }
  auto made = std::make_unique<std::vector<std::int64_t>>(compute_phi(n));
  std::unique_lock lock(c.mutex);
  auto [it, ok] = c.polys.try_emplace(n, std::move(made));
  return *it->second;
}

void CycInt::normalize() {
  if (n_ == 1) return;
  for (std::size_t i = 1; i < c_.size(); ++i) {
    if (!c_[i].is_zero()) return;
  }
  c_.resize(1);
  n_ = 1;
}

CycInt CycInt::zeta(std::uint64_t n, std::uint64_t e) {
  if (n == 0) throw InvalidArgument("conductor must be positive");
  std::vector<Integer> a(n, Integer(0));
  a[e % n] = Integer(1);
  return from_exponent_vector(n, a);
}

CycInt CycInt::from_coefficients(std::uint64_t n, std::vector<Integer> coeffs) {
  if (n == 0) throw InvalidArgument("conductor must be positive");
  if (coeffs.size() != euler_phi(n)) {
    throw InvalidArgument("expected " + std::to_string(euler_phi(n)) + " coefficients for conductor " +
                          std::to_string(n));
  }
  return CycInt(n, std::move(coeffs));
}

CycInt CycInt::from_exponent_vector(std::uint64_t n, const std::vector<Integer>& a) {
  if (a.size() != n) throw InvalidArgument("exponent vector length must equal the conductor");
  std::vector<Integer> v = a;
  reduce_exponents(n, v);
  return CycInt(n, std::move(v));
}

const Integer& CycInt::rational_value() const {
  if (n_ != 1) throw InvalidArgument("cyclotomic value " + to_string() + " is not rational");
  return c_[0];
}

std::vector<Integer> CycInt::exponent_vector(std::uint64_t big_n) const {
  if (big_n % n_ != 0) throw InvalidArgument("conductor " + std::to_string(n_) + " does not divide " + std::to_string(big_n));
  std::vector<Integer> v(big_n, Integer(0));
  const std::uint64_t step = big_n / n_;
  for (std::size_t i = 0; i < c_.size(); ++i) v[i * step] = c_[i];
  return v;
}

CycInt CycInt::lifted(std::uint64_t big_n) const {
  if (big_n == n_) return *this;
  auto v = exponent_vector(big_n);
  reduce_exponents(big_n, v);
  CycInt r;
  r.n_ = big_n;
  r.c_ = std::move(v);
  return r;
}

CycInt CycInt::operator-() const {
  CycInt r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

CycInt& CycInt::operator+=(const CycInt& o) {
  if (o.n_ == 1) {
    c_[0] += o.c_[0];
    normalize();
    return *this;
  }
  const std::uint64_t l = lcm_u64(n_, o.n_);
  if (l != n_) *this = lifted(l);
  const CycInt& rhs = o.n_ == l ? o : o.lifted(l);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += rhs.c_[i];
  normalize();
  return *this;
}

CycInt& CycInt::operator-=(const CycInt& o) { return *this += -o; }

CycInt operator*(const CycInt& a, const CycInt& b) {
  if (a.n_ == 1 || b.n_ == 1) {
    const CycInt& v = a.n_ == 1 ? b : a;
    const Integer& s = a.n_ == 1 ? a.c_[0] : b.c_[0];
    std::vector<Integer> c = v.c_;
    for (auto& x : c) x *= s;
    return CycInt(v.n_, std::move(c));
  }
  const std::uint64_t l = lcm_u64(a.n_, b.n_);
  const std::uint64_t sa = l / a.n_, sb = l / b.n_;
  bool small = std::all_of(a.c_.begin(), a.c_.end(), [](const Integer& x) { return x.fits_int64(); }) &&
               std::all_of(b.c_.begin(), b.c_.end(), [](const Integer& x) { return x.fits_int64(); });
  if (small) {
    std::vector<std::int64_t> acc(l, 0);
    bool ok = true;
    for (std::size_t i = 0; i < a.c_.size() && ok; ++i) {
      std::int64_t x = a.c_[i].to_int64();
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        std::int64_t y = b.c_[j].to_int64();
        if (y == 0) continue;
        std::int64_t t;
        std::size_t e = (i * sa + j * sb) % l;
        if (__builtin_mul_overflow(x, y, &t) || __builtin_add_overflow(acc[e], t, &acc[e])) {
          ok = false;
          break;
        }
      }
    }
    if (ok && reduce_exponents_small(l, acc)) {
      std::vector<Integer> c(acc.begin(), acc.end());
      return CycInt(l, std::move(c));
    }
  }
  std::vector<Integer> acc(l, Integer(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j].is_zero()) continue;
      acc[(i * sa + j * sb) % l] += a.c_[i] * b.c_[j];
    }
  }
  reduce_exponents(l, acc);
  return CycInt(l, std::move(acc));
}

CycInt CycInt::divexact(const Integer& d) const {
  CycInt r = *this;
  for (auto& c : r.c_) c = c.divexact(d);
  return r;
}

bool CycInt::divisible_by(const Integer& d) const {
  return std::all_of(c_.begin(), c_.end(), [&](const Integer& c) { return c.divisible_by(d); });
}

CycInt CycInt::galois(std::int64_t k) const {
  if (n_ == 1) return *this;
  std::int64_t km = k % static_cast<std::int64_t>(n_);
  if (km < 0) km += static_cast<std::int64_t>(n_);
  if (gcd_u64(static_cast<std::uint64_t>(km), n_) != 1) {
    throw InvalidArgument(std::to_string(k) + " is not a unit modulo " + std::to_string(n_));
  }
  std::vector<Integer> v(n_, Integer(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (!c_[i].is_zero()) v[(i * static_cast<std::uint64_t>(km)) % n_] += c_[i];
  }
  return from_exponent_vector(n_, v);
}

std::string CycInt::to_string() const {
  if (n_ == 1) return c_[0].to_string();
  std::string s = "c(" + std::to_string(n_) + ":";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) s += ',';
    s += c_[i].to_string();
  }
  return s + ")";
}

bool operator==(const CycInt& a, const CycInt& b) {
  if (a.n_ == b.n_) return a.c_ == b.c_;
  if (a.n_ == 1 || b.n_ == 1) return false;
  const std::uint64_t l = lcm_u64(a.n_, b.n_);
  return a.lifted(l).c_ == b.lifted(l).c_;
}

std::ostream& operator<<(std::ostream& os, const CycInt& x) { return os << x.to_string(); }

CycInt cyc_conjugate(const CycInt& x) { return x.conjugate(); }

int compare_at(const CycInt& a, const CycInt& b, std::uint64_t big_n) {
  CycInt la = a.lifted(big_n), lb = b.lifted(big_n);
  const auto& ca = la.coefficients();
  const auto& cb = lb.coefficients();
  // Rational values stay at conductor 1 after lifting only when big_n == 1.
  std::size_t len = std::max(ca.size(), cb.size());
  for (std::size_t i = 0; i < len; ++i) {
    Integer x = i < ca.size() ? ca[i] : Integer(0);
    Integer y = i < cb.size() ? cb[i] : Integer(0);
    if (x < y) return -1;
    if (y < x) return 1;
  }
  return 0;
}

// ---------------------------------------------------------------------------

namespace {

struct FactorData {
  const FieldDescriptor* field;
  FieldCode beta0;
  std::vector<Polynomial> factors;
  std::vector<std::uint64_t> root_exponents;  // beta = beta0^e for each factor
};

FactorData factor_data(std::uint64_t m, std::uint64_t ell) {
  const unsigned d = static_cast<unsigned>(multiplicative_order_mod(ell % m, m));
  const FieldDescriptor& f = field_create(ell, d);
  const FieldDescriptor& base = field_create(ell, 1);
  FieldCode beta0 = primitive_root_of_unity(f, m).code();
  std::vector<bool> seen(m, false);
  std::vector<std::pair<std::vector<FieldCode>, std::uint64_t>> found;
  for (std::uint64_t i = 1; i < m; ++i) {
    if (seen[i] || gcd_u64(i, m) != 1) continue;
    Polynomial prod = Polynomial::constant(f, 1);
    std::uint64_t j = i;
    do {
      seen[j] = true;
      prod = prod * Polynomial::linear(FieldElement(f, f.pow(beta0, j)));
      j = mulmod(j, ell, m);
    } while (j != i);
    std::vector<FieldCode> coeffs;
    for (FieldCode c : prod.coefficients()) {
      // the prime field sits inside f as the constants
      if (c >= ell) throw IntegrityError("cyclotomic factor has a coefficient outside GF(" + std::to_string(ell) + ")");
      coeffs.push_back(c);
    }
    found.emplace_back(std::move(coeffs), i);
  }
  if (m == 1) found.push_back({{base.neg(1), 1}, 0});
  std::sort(found.begin(), found.end());
  FactorData out{&f, beta0, {}, {}};
  for (auto& [c, e] : found) {
    out.factors.emplace_back(base, c);
    out.root_exponents.push_back(e);
  }
  return out;
}

const FactorData& cached_factor_data(std::uint64_t m, std::uint64_t ell) {
  static std::mutex mutex;
  static std::map<std::pair<std::uint64_t, std::uint64_t>, std::unique_ptr<FactorData>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{m, ell}];
  if (!slot) slot = std::make_unique<FactorData>(factor_data(m, ell));
  return *slot;
}

}  // namespace

std::size_t IdealReduction::factor_count(std::uint64_t conductor, std::uint64_t ell) {
  if (!is_prime(ell)) throw InvalidArgument(std::to_string(ell) + " is not prime");
  std::uint64_t m = conductor;
  while (m % ell == 0) m /= ell;
  if (m == 1) return 1;
  return euler_phi(m) / multiplicative_order_mod(ell % m, m);
}

IdealReduction::IdealReduction(std::uint64_t conductor, std::uint64_t ell, std::size_t factor_index)
    : n_(conductor), ell_(ell), index_(factor_index), target_(nullptr), factor_(Polynomial::zero(field_create(2, 1))) {
  if (conductor == 0) throw InvalidArgument("conductor must be positive");
  if (!is_prime(ell)) throw InvalidArgument(std::to_string(ell) + " is not prime");
  std::uint64_t m = conductor, la = 1;
  while (m % ell == 0) {
    m /= ell;
    la *= ell;
  }
  if (m == 1) {
    if (factor_index != 0) throw InvalidArgument("factor index out of range");
    target_ = &field_create(ell, 1);
    factor_ = Polynomial(*target_, {target_->neg(1), 1});
    images_.assign(conductor, 1);
    return;
  }
  const FactorData& fd = cached_factor_data(m, ell);
  if (factor_index >= fd.factors.size()) throw InvalidArgument("factor index out of range");
  target_ = fd.field;
  factor_ = fd.factors[factor_index];
  const FieldDescriptor& f = *target_;
  FieldCode beta = f.pow(fd.beta0, fd.root_exponents[factor_index]);
  // zeta_N = zeta_{l^a}^u zeta_m^v with zeta_N^{l^a} = zeta_m; the l-power part dies.
  std::uint64_t t = powmod(la % m, euler_phi(m) - 1, m);
  FieldCode gamma = f.pow(beta, t);
  images_.resize(conductor);
  FieldCode x = 1;
  for (std::uint64_t e = 0; e < conductor; ++e) {
    images_[e] = x;
    x = f.mul(x, gamma);
  }
}

FieldElement IdealReduction::reduce(const CycInt& x) const {
  const std::uint64_t n = x.conductor();
  if (n_ % n != 0) {
    throw InvalidArgument("conductor " + std::to_string(n) + " does not divide reduction conductor " +
                          std::to_string(n_));
  }
  const FieldDescriptor& f = *target_;
  const std::uint64_t step = n_ / n;
  FieldCode acc = 0;
  const auto& c = x.coefficients();
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::uint64_t r = c[i].mod(ell_);
    if (r == 0) continue;
    FieldCode img = images_[i * step];
    acc = f.add(acc, r == 1 ? img : f.mul(f.from_integer(static_cast<std::int64_t>(r)), img));
  }
  return {f, acc};
}

FieldElement reduce_mod2(const CycInt& x, const IdealReduction& r) {
  if (r.ell() != 2) throw InvalidArgument("reduction is not above 2");
  return r.reduce(x);
}

}  // namespace blockforge
