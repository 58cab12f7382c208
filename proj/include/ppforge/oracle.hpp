#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "ppforge/ffcore.hpp"
#include "ppforge/poly.hpp"
#include "ppforge/unity.hpp"

// Ground truth by exhaustion: every decision here evaluates the map at
// every point of its domain.
namespace ppforge::oracle {

struct PermutationReport {
  bool is_bijection;
  /// Lexicographically least pair of inputs (canonical order) with equal
  /// images. Absent iff is_bijection, except when image_outside_mu is set.
  std::optional<std::pair<ff::Element, ff::Element>> first_collision;
  /// For mu_{q+1} maps: the first input whose image left mu_{q+1}.
  std::optional<ff::Element> image_outside_mu;
  std::uint64_t domain_size;
};

ff::Element eval(const SparsePoly& poly, const ff::Element& x);

/// Discrete logarithms of every nonzero element to the field generator,
/// indexed by canonical code. Turns each term of an evaluation into one
/// table lookup instead of a square-and-multiply.
class LogTable {
 public:
  explicit LogTable(ff::Field field);

  const ff::Field& field() const { return field_; }
  /// log_g(x) for x != 0.
  std::uint32_t log(std::uint64_t code) const { return log_[code]; }
  /// Canonical code of g^e, e in [0, q^2 - 1).
  std::uint32_t exp(std::uint64_t e) const { return exp_[e]; }

  ff::Element eval(const SparsePoly& poly, std::uint64_t x_code) const;

 private:
  ff::Field field_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> exp_;
};

/// Evaluates poly at all q^2 points and tests for repeated images with a
/// presence table indexed by canonical code.
PermutationReport is_permutation_of_field(const ff::FieldSpec& field, const SparsePoly& poly);

/// Same decision with evaluation through a prebuilt log table.
PermutationReport is_permutation_of_field(const LogTable& table, const SparsePoly& poly);

PermutationReport is_permutation_of_mu(const unity::MuContext& mu,
                                       const std::function<ff::Element(const ff::Element&)>& map);

/// Functional equality on F_{q^2}, i.e. congruence mod x^{q^2} - x.
bool pointwise_equal(const ff::FieldSpec& field, const SparsePoly& f1, const SparsePoly& f2);

}  // namespace ppforge::oracle
