#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ppforge/ffcore.hpp"
#include "ppforge/poly.hpp"

// The norm-one subgroup mu_{q+1} of F_{q^2}^*, its coset decomposition by a
// primitive d-th root of unity, and permutation criteria on it.
namespace ppforge::unity {

struct MuContext {
  ff::Field field;
  /// generator^{q-1}; exact order q + 1.
  ff::Element gamma;
  std::uint64_t order;

  /// gamma^0, gamma^1, ..., gamma^q.
  std::vector<ff::Element> elements() const;
  bool contains(const ff::Element& x) const;
};

MuContext make_mu(ff::Field field);

/// mu_{q+1} = union of omega^i * mu_{(q+1)/d}, i in [0, d). The cosets are
/// pairwise disjoint exactly when gcd(d, (q+1)/d) = 1; otherwise the
/// partition is flagged and coset-based operations refuse it.
struct CosetPartition {
  MuContext mu;
  std::uint64_t d;
  /// gamma^{(q+1)/d}, order exactly d.
  ff::Element omega;
  /// (q+1)/d mod d, normalized into [1, d].
  std::uint64_t s;
  std::uint64_t subgroup_order;
  bool disjoint;
};

/// Throws NotADivisor unless d | q+1.
CosetPartition make_partition(const MuContext& mu, std::uint64_t d);

/// i with x * omega^{-i} in mu_{(q+1)/d}. Uses x^{(q+1)/d} = omega^{i*s}
/// and a linear scan over <omega>.
std::uint64_t coset_index(const CosetPartition& part, const ff::Element& x);

enum class AgwReason {
  kPermutes,
  kExponentNotCoprime,  // gcd(r, q - 1) != 1
  kHVanishesOnMu,
  kNotBijectiveOnMu,
};

struct AgwVerdict {
  bool permutes;
  AgwReason reason;

  explicit operator bool() const { return permutes; }
};

/// x^r h(x^{q-1}) permutes F_{q^2} iff gcd(r, q-1) = 1 and
/// x -> x^r h(x)^{q-1} permutes mu_{q+1}. The second condition is decided
/// by enumerating all q + 1 images; h vanishing somewhere on mu_{q+1}
/// counts as failure.
AgwVerdict agw_check(const ff::FieldSpec& field, std::int64_t r, const SparsePoly& h);

struct MonomialPiece {
  ff::Element A;
  std::int64_t exponent;
};

/// g(x) = A_i x^{r_i} on the i-th coset. True iff gcd(r_i, (q+1)/d) = 1 for
/// all i and the q + 1 images are pairwise distinct.
bool piecewise_check(const CosetPartition& part, std::span<const MonomialPiece> pieces);

/// g(omega^i y) = A omega^{ik} y^n permutes mu_{q+1} iff
/// gcd((q+1)/d, n) = 1 and gcd(k, d) = 1.
bool omega_monomial_check(const CosetPartition& part, const ff::Element& A, std::int64_t k,
                          std::int64_t n);

/// The map checked by omega_monomial_check, evaluated pointwise from the
/// (i, y) decomposition of its argument.
std::function<ff::Element(const ff::Element&)> materialize_omega_monomial(
    const CosetPartition& part, const ff::Element& A, std::int64_t k, std::int64_t n);

/// The same map written as pieces A_i x^n on each coset, A_i = A omega^{i(k-n)}.
std::vector<MonomialPiece> omega_monomial_pieces(const CosetPartition& part, const ff::Element& A,
                                                 std::int64_t k, std::int64_t n);

}  // namespace ppforge::unity
