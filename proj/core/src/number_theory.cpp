#include "blockforge/number_theory.hpp"

#include <algorithm>
#include <numeric>

#include "blockforge/error.hpp"

namespace blockforge {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace {

std::uint64_t pollard_rho(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t x = 2, y = 2, d = 1;
    auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

void factor_into(std::uint64_t n, std::map<std::uint64_t, unsigned>& out) {
  if (n == 1) return;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  std::uint64_t d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::map<std::uint64_t, unsigned> factorize(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("cannot factorize 0");
  std::map<std::uint64_t, unsigned> out;
  factor_into(n, out);
  return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> ds{1};
  for (auto [p, e] : factorize(n)) {
    std::size_t base = ds.size();
    std::uint64_t pk = 1;
    for (unsigned i = 0; i < e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) ds.push_back(ds[j] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t r = n;
  for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
  return r;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  std::uint64_t g = std::gcd(a, b);
  std::uint64_t r;
  if (__builtin_mul_overflow(a / g, b, &r)) throw BoundExceeded("lcm overflows 64 bits");
  return r;
}

std::uint64_t multiplicative_order_mod(std::uint64_t a, std::uint64_t m) {
  if (m == 1) return 1;
  if (std::gcd(a % m, m) != 1) throw InvalidArgument("element is not a unit modulo m");
  std::uint64_t order = euler_phi(m);
  for (auto [p, e] : factorize(order)) {
    for (unsigned i = 0; i < e && order % p == 0 && powmod(a, order / p, m) == 1; ++i) order /= p;
  }
  return order;
}

std::pair<std::uint64_t, unsigned> prime_power_decompose(std::uint64_t q) {
  if (q < 2) return {0, 0};
  auto f = factorize(q);
  if (f.size() != 1) return {0, 0};
  return {f.begin()->first, f.begin()->second};
}

std::uint64_t odd_part(std::uint64_t n) {
  if (n == 0) return 0;
  while ((n & 1) == 0) n >>= 1;
  return n;
}

unsigned valuation(std::uint64_t n, std::uint64_t l) {
  unsigned v = 0;
  while (n != 0 && n % l == 0) {
    n /= l;
    ++v;
  }
  return v;
}

std::uint64_t checked_pow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(r, base, &r)) throw BoundExceeded("integer power overflows 64 bits");
  }
  return r;
}

}  // namespace blockforge
