#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

// Exact integer helpers shared by the field and family code.
namespace ppforge::num {

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;
};

using Factorization = std::vector<PrimePower>;

bool is_prime(std::uint64_t n);

/// Trial-division factorization, primes ascending. factorize(1) is empty.
Factorization factorize(std::uint64_t n);

std::uint64_t expand(const Factorization& f);

/// Returns (p, h) with n = p^h, or nullopt when n is not a prime power.
std::optional<std::pair<std::uint64_t, unsigned>> as_prime_power(std::uint64_t n);

/// gcd on signed values; gcd(0, n) = |n|.
std::uint64_t gcd(std::int64_t a, std::int64_t b);

/// Least non-negative residue of a modulo m (m > 0).
std::int64_t mod(std::int64_t a, std::int64_t m);

/// Divisors of n in ascending order.
std::vector<std::uint64_t> divisors(std::uint64_t n);

/// Exact p^h, or nullopt on overflow past `limit`.
std::optional<std::uint64_t> checked_pow(std::uint64_t p, unsigned h, std::uint64_t limit);

}  // namespace ppforge::num
