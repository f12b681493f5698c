#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace blockforge {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Deterministic Miller-Rabin for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Prime factorisation (Pollard rho), as prime -> exponent.
std::map<std::uint64_t, unsigned> factorize(std::uint64_t n);

std::vector<std::uint64_t> divisors(std::uint64_t n);
std::uint64_t euler_phi(std::uint64_t n);
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);

/// Order of a modulo m (gcd(a, m) = 1 required).
std::uint64_t multiplicative_order_mod(std::uint64_t a, std::uint64_t m);

/// Returns (p, k) with q = p^k, or (0, 0) when q is not a prime power.
std::pair<std::uint64_t, unsigned> prime_power_decompose(std::uint64_t q);

/// Largest odd divisor of n.
std::uint64_t odd_part(std::uint64_t n);

/// Exponent of the prime l in n (n > 0).
unsigned valuation(std::uint64_t n, std::uint64_t l);

/// Checked integer power; throws BoundExceeded on 64-bit overflow.
std::uint64_t checked_pow(std::uint64_t base, unsigned exp);

}  // namespace blockforge
