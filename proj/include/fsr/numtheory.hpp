#pragma once

#include <cstdint>
#include <vector>

namespace fsr::nt {

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;
};

/// Prime factorization by trial division, primes ascending. factorize(1) is empty.
std::vector<PrimePower> factorize(std::uint64_t n);

std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

/// All positive divisors of n, ascending.
std::vector<std::uint64_t> divisors(std::uint64_t n);

std::uint64_t totient(std::uint64_t n);

bool is_prime(std::uint64_t n);

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm(std::uint64_t a, std::uint64_t b);

/// Canonical residue of a in [0, m). m must be positive.
std::uint64_t mod(std::int64_t a, std::uint64_t m);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Multiplicative order of a modulo n: the least k >= 1 with a^k = 1 (mod n).
/// Scans the divisors of phi(n) in ascending order.
/// Throws DomainError if n == 0 or gcd(a, n) != 1.
std::uint64_t ord_mod(std::int64_t a, std::uint64_t n);

}  // namespace fsr::nt
