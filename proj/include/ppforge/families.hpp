#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ppforge/ffcore.hpp"
#include "ppforge/poly.hpp"
#include "ppforge/unity.hpp"

// The six trinomial families f(x) = x^r h(x^{q-1}) over F_{q^2}, their
// hypotheses, their gcd permutation criteria and the exponent identities
// the criteria rest on.
//
//   T1  h = c + x^{v1+k} + x^{qv+k}      d even, k odd
//   T2  h = c + x^{u1+k} + x^{qu+2+k}    d odd,  k odd
//   T3  h = c + x^{v1+k} - x^{qv+k}      any d | q+1
//   T4  h = c + x^{u1+k} - x^{qu+2+k}    any d | q+1
//   T5  h = c + x^{u+k} + x^{qu+k+2}     d = 4, q = 3 mod 8, k even
//   T6  h = c + x^u (x^{(q+1)v/2} - 1)   d = 2, u and v odd
//
// with v = (q+1)/d, v1 = (d-1)v, u = v+1, u1 = v1+1.
namespace ppforge::families {

enum class Family { kT1, kT2, kT3, kT4, kT5, kT6 };

inline constexpr Family kAllFamilies[] = {Family::kT1, Family::kT2, Family::kT3,
                                          Family::kT4, Family::kT5, Family::kT6};

std::string_view family_name(Family f);
std::optional<Family> parse_family(std::string_view name);

struct FamilyParams {
  Family tag;
  ff::Field field;
  std::uint64_t d;
  std::int64_t k;
  std::int64_t r;
  ff::Element c;
  // T6 only: the outer exponent u and the multiplier v of (q+1)/2.
  std::int64_t u6 = 1;
  std::int64_t v6 = 1;
};

/// Fills in d for the fixed-d families (T5: 4, T6: 2) and k = 0 for T6.
FamilyParams make_params(Family tag, ff::Field field, std::uint64_t d, std::int64_t k,
                         std::int64_t r, ff::Element c, std::int64_t u6 = 1, std::int64_t v6 = 1);

/// Exponents derived from (q, d); absent when d does not divide q + 1.
struct Exponents {
  std::uint64_t v;
  std::uint64_t v1;
  std::uint64_t u;
  std::uint64_t u1;
  /// (q+1)/d mod d in [1, d].
  std::uint64_t s;
};

std::optional<Exponents> derived_exponents(std::uint64_t q, std::uint64_t d);

struct HypothesisReport {
  bool satisfied;
  std::vector<std::string> violations;
};

/// Checks every hypothesis of the family and reports all violations.
HypothesisReport validate(const FamilyParams& params);

/// The literal h of the family (like exponents merged). Throws
/// NegativeExponent if k or u pushes an exponent below zero.
SparsePoly build_h(const FamilyParams& params);

struct BuiltF {
  SparsePoly literal;
  /// Exponents folded into [1, q^2 - 1]; same function on all of F_{q^2}.
  SparsePoly reduced;
};

/// f = x^r h(x^{q-1}). Requires r >= 1.
BuiltF build_f(const FamilyParams& params);

/// The family's gcd criterion. Throws HypothesesNotSatisfied when validate
/// fails.
bool predicate(const FamilyParams& params);

/// (c/2)^{(q+1)/m} = 1 exactly for c in 2 * mu_{(q+1)/m}; returns
/// 2 gamma^{mj}, j < (q+1)/m, sorted by canonical code.
std::vector<ff::Element> valid_c_values(const unity::MuContext& mu, std::uint64_t m);

/// m in (c/2)^{(q+1)/m} = 1 for families with a c hypothesis; 0 for T3/T4.
std::uint64_t c_root_index(Family tag);

/// One full period of k with the parity the family requires.
std::vector<std::int64_t> default_k_window(Family tag, std::uint64_t d);

/// x^{v1+k} = x^{qv+k} and x^{-v1} = omega^{is} on all of mu_{q+1}.
bool lemma_v_identity(const ff::Field& field, std::uint64_t d, std::int64_t k);

/// x^{u1+k} = x^{qu+k+2} and x^{-u1} = omega^{is} x^{-1} on all of mu_{q+1}.
bool lemma_u_identity(const ff::Field& field, std::uint64_t d, std::int64_t k);

enum class D4Class { kMu, kMinusMu, kMuPrime, kMinusMuPrime };

/// Class of x in mu_{q+1} by x^{(q+1)/4} in {1, -1, omega, -omega}.
/// Throws BadCongruence unless 4 | q+1, NotInMu for x outside mu_{q+1}.
D4Class d4_class(const unity::MuContext& mu, const ff::Element& x);

/// With u = (q+5)/4: x^u = x^{2+qu} = x^{2-u} on the classes +-mu and
/// x^u = -x^{2+qu} = -x^{2-u} on the primed classes. Requires q = 3 mod 8.
bool lemma_d4_identity(const ff::Field& field);

/// For q = 3 mod 4 and the T6 shape: true iff no r in [r_lo, r_hi] gives a
/// permutation of F_{q^2} (oracle). Also asserts the parity argument that
/// makes the T6 criterion false for every r.
bool corollary_negative(const ff::Field& field, std::int64_t u, std::int64_t v,
                        const ff::Element& c, std::int64_t r_lo, std::int64_t r_hi);

}  // namespace ppforge::families
