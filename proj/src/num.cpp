#include "ppforge/num.hpp"

#include <numeric>

#include "ppforge/error.hpp"

namespace ppforge {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotPrime: return "NotPrime";
    case ErrorCode::kSizeExceeded: return "SizeExceeded";
    case ErrorCode::kDivisionByZero: return "DivisionByZero";
    case ErrorCode::kFieldMismatch: return "FieldMismatch";
    case ErrorCode::kNotInMu: return "NotInMu";
    case ErrorCode::kNotADivisor: return "NotADivisor";
    case ErrorCode::kPartitionNotDisjoint: return "PartitionNotDisjoint";
    case ErrorCode::kNegativeExponent: return "NegativeExponent";
    case ErrorCode::kHypothesesNotSatisfied: return "HypothesesNotSatisfied";
    case ErrorCode::kBadCongruence: return "BadCongruence";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

namespace num {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

Factorization factorize(std::uint64_t n) {
  Factorization out;
  for (std::uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    if (n % d != 0) continue;
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.push_back({d, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

std::uint64_t expand(const Factorization& f) {
  std::uint64_t n = 1;
  for (const auto& [prime, e] : f) {
    for (unsigned i = 0; i < e; ++i) n *= prime;
  }
  return n;
}

std::optional<std::pair<std::uint64_t, unsigned>> as_prime_power(std::uint64_t n) {
  const auto f = factorize(n);
  if (f.size() != 1) return std::nullopt;
  return std::pair{f.front().prime, f.front().exponent};
}

std::uint64_t gcd(std::int64_t a, std::int64_t b) {
  const auto ua = static_cast<std::uint64_t>(a < 0 ? -a : a);
  const auto ub = static_cast<std::uint64_t>(b < 0 ? -b : b);
  return std::gcd(ua, ub);
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> small, large;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

std::optional<std::uint64_t> checked_pow(std::uint64_t p, unsigned h, std::uint64_t limit) {
  std::uint64_t out = 1;
  for (unsigned i = 0; i < h; ++i) {
    if (out > limit / p) return std::nullopt;
    out *= p;
  }
  return out;
}

}  // namespace num
}  // namespace ppforge
