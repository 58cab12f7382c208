#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ppforge/ffcore.hpp"

namespace ppforge {

struct Term {
  std::uint64_t exponent;
  ff::Element coeff;
};

/// Sparse polynomial over F_{q^2}: terms with strictly increasing
/// exponents and no zero coefficients.
class SparsePoly {
 public:
  SparsePoly() = default;
  /// Terms in any order; equal exponents are merged and zeros dropped.
  explicit SparsePoly(std::vector<Term> terms);

  static SparsePoly monomial(const ff::Element& coeff, std::uint64_t exponent);

  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Exponents reduced into [1, q^2 - 1] for every non-constant term and
  /// merged. Agrees with the original at every point of F_{q^2},
  /// including 0, because a^{q^2-1} = 1 only for a != 0.
  SparsePoly reduced(const ff::FieldSpec& field) const;

  /// "c0 + c1*x^e1 + ..." with coefficients as canonical integers; "0"
  /// for the zero polynomial.
  std::string to_string() const;

  friend bool operator==(const SparsePoly& a, const SparsePoly& b);

 private:
  std::vector<Term> terms_;
};

/// sum c_i * x^{e_i}, with 0^0 = 1.
ff::Element evaluate(const SparsePoly& poly, const ff::Element& x);

}  // namespace ppforge
