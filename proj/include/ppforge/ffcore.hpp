#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ppforge/num.hpp"

// Exact arithmetic in F_{q^2}, q = p^h odd, represented as a single
// degree-2h extension F_p[t]/(m(t)) in polynomial basis.
namespace ppforge::ff {

inline constexpr std::uint64_t kDefaultMaxFieldSize = std::uint64_t{1} << 26;

// 3^16 is the largest odd-characteristic extension degree under the cap.
inline constexpr std::size_t kMaxDegree = 16;

class FieldSpec;

/// One residue of F_{q^2}. Coefficient i multiplies t^i. Holds a
/// non-owning pointer to its field; the FieldSpec must outlive it.
class Element {
 public:
  Element() = default;

  const FieldSpec* field() const { return field_; }
  std::span<const std::uint32_t> coeffs() const { return {c_.data(), degree_}; }
  bool is_zero() const;

  Element& operator+=(const Element& rhs);
  Element& operator-=(const Element& rhs);
  Element& operator*=(const Element& rhs);

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(Element a, const Element& b) { return a *= b; }
  friend Element operator-(const Element& a);

  friend bool operator==(const Element& a, const Element& b) {
    return a.field_ == b.field_ && a.degree_ == b.degree_ && a.c_ == b.c_;
  }

 private:
  friend class FieldSpec;

  const FieldSpec* field_ = nullptr;
  std::uint8_t degree_ = 0;
  std::array<std::uint32_t, kMaxDegree> c_{};
};

/// The field F_{q^2} together with its cached structure: the monic
/// irreducible modulus of degree 2h, a generator of the multiplicative
/// group and the factorization of q^2 - 1. Immutable after construction.
class FieldSpec {
 public:
  FieldSpec(const FieldSpec&) = delete;
  FieldSpec& operator=(const FieldSpec&) = delete;

  std::uint64_t p() const { return p_; }
  unsigned h() const { return h_; }
  std::uint64_t q() const { return q_; }
  std::size_t degree() const { return 2 * h_; }
  /// q^2.
  std::uint64_t size() const { return size_; }
  /// q^2 - 1.
  std::uint64_t order() const { return size_ - 1; }
  /// Monic modulus, little-endian, degree() + 1 coefficients.
  std::span<const std::uint32_t> modulus() const { return modulus_; }
  const num::Factorization& order_factorization() const { return order_factors_; }
  const Element& generator() const { return generator_; }

  Element zero() const;
  Element one() const;
  /// Image of an integer under Z -> F_p -> F_{q^2}.
  Element from_int(std::int64_t v) const;
  /// Inverse of to_canonical(); code must be < size().
  Element element(std::uint64_t canonical) const;
  Element from_coeffs(std::span<const std::uint32_t> coeffs) const;

  // Raw kernels used by Element.
  void add_into(Element& a, const Element& b) const;
  void sub_into(Element& a, const Element& b) const;
  void mul_into(Element& a, const Element& b) const;

 private:
  FieldSpec(std::uint64_t p, unsigned h, std::vector<std::uint32_t> modulus);

  friend std::shared_ptr<const FieldSpec> make_field(std::uint64_t, unsigned,
                                                     std::vector<std::uint32_t>,
                                                     std::uint64_t, std::uint64_t);
  friend std::shared_ptr<const FieldSpec> build_field(std::uint64_t, unsigned,
                                                      std::uint64_t, std::uint64_t);

  std::uint64_t p_;
  unsigned h_;
  std::uint64_t q_;
  std::uint64_t size_;
  std::vector<std::uint32_t> modulus_;
  num::Factorization order_factors_;
  Element generator_;
};

using Field = std::shared_ptr<const FieldSpec>;

/// Finds an irreducible modulus and a generator by seeded random search.
/// Deterministic for a fixed seed. Throws NotPrime, SizeExceeded,
/// InvalidArgument (p = 2 or h = 0).
Field build_field(std::uint64_t p, unsigned h, std::uint64_t seed = 0,
                  std::uint64_t max_size = kDefaultMaxFieldSize);

/// build_field for q = p^h given as a single integer.
Field field_for_q(std::uint64_t q, std::uint64_t seed = 0,
                  std::uint64_t max_size = kDefaultMaxFieldSize);

/// Validating constructor from an explicit modulus and generator.
Field make_field(std::uint64_t p, unsigned h, std::vector<std::uint32_t> modulus,
                 std::uint64_t generator_canonical,
                 std::uint64_t max_size = kDefaultMaxFieldSize);

/// Square-and-multiply. Negative e inverts; pow(0, 0) = 1.
Element pow(const Element& a, std::int64_t e);
Element inv(const Element& a);
/// a^q.
Element frobenius_q(const Element& a);
std::uint64_t multiplicative_order(const Element& a);

/// sum coeffs[i] * p^i, in [0, q^2).
std::uint64_t to_canonical(const Element& a);

/// Ben-Or test over F_p: monic f of degree n is irreducible iff
/// gcd(x^{p^i} - x mod f, f) = 1 for every 1 <= i <= n/2.
bool is_irreducible(std::span<const std::uint32_t> monic, std::uint64_t p);

/// Text form: `p=`, `h=`, `modulus=` (little-endian, comma separated,
/// including the leading 1) and `generator=` (canonical integer).
std::string format_field_description(const FieldSpec& field);
Field parse_field_description(std::string_view text,
                              std::uint64_t max_size = kDefaultMaxFieldSize);

}  // namespace ppforge::ff
