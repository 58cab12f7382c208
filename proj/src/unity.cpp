#include "ppforge/unity.hpp"

#include <algorithm>

#include "ppforge/error.hpp"

namespace ppforge::unity {
namespace {

std::int64_t as_signed(std::uint64_t v) { return static_cast<std::int64_t>(v); }

void require_disjoint(const CosetPartition& part) {
  if (!part.disjoint) {
    throw Error(ErrorCode::kPartitionNotDisjoint,
                "gcd(d, (q+1)/d) != 1 for d = " + std::to_string(part.d));
  }
}

void require_in_mu(const MuContext& mu, const ff::Element& x, const char* what) {
  if (!mu.contains(x)) throw Error(ErrorCode::kNotInMu, std::string(what) + " is not in mu_{q+1}");
}

bool all_distinct(const std::vector<ff::Element>& images) {
  std::vector<std::uint64_t> codes;
  codes.reserve(images.size());
  for (const auto& e : images) codes.push_back(ff::to_canonical(e));
  std::sort(codes.begin(), codes.end());
  return std::adjacent_find(codes.begin(), codes.end()) == codes.end();
}

}  // namespace

std::vector<ff::Element> MuContext::elements() const {
  std::vector<ff::Element> out;
  out.reserve(order);
  ff::Element x = field->one();
  for (std::uint64_t j = 0; j < order; ++j) {
    out.push_back(x);
    x *= gamma;
  }
  return out;
}

bool MuContext::contains(const ff::Element& x) const {
  return x.field() == field.get() && !x.is_zero() &&
         ff::pow(x, as_signed(order)) == field->one();
}

MuContext make_mu(ff::Field field) {
  const std::uint64_t q = field->q();
  ff::Element gamma = ff::pow(field->generator(), as_signed(q - 1));
  return MuContext{std::move(field), gamma, q + 1};
}

CosetPartition make_partition(const MuContext& mu, std::uint64_t d) {
  if (d == 0 || mu.order % d != 0) {
    throw Error(ErrorCode::kNotADivisor,
                std::to_string(d) + " does not divide " + std::to_string(mu.order));
  }
  const std::uint64_t v = mu.order / d;
  std::uint64_t s = v % d;
  if (s == 0) s = d;
  return CosetPartition{mu, d, ff::pow(mu.gamma, as_signed(v)), s, v, num::gcd(as_signed(d), as_signed(v)) == 1};
}

std::uint64_t coset_index(const CosetPartition& part, const ff::Element& x) {
  require_disjoint(part);
  require_in_mu(part.mu, x, "argument");
  const ff::Element target = ff::pow(x, as_signed(part.subgroup_order));
  const ff::Element step = ff::pow(part.omega, as_signed(part.s));
  ff::Element acc = part.mu.field->one();
  for (std::uint64_t i = 0; i < part.d; ++i) {
    if (acc == target) return i;
    acc *= step;
  }
  // unreachable when the partition is disjoint: omega^s generates <omega>
  throw Error(ErrorCode::kPartitionNotDisjoint, "coset lookup failed");
}

AgwVerdict agw_check(const ff::FieldSpec& field, std::int64_t r, const SparsePoly& h) {
  const std::uint64_t q = field.q();
  if (num::gcd(r, as_signed(q - 1)) != 1) return {false, AgwReason::kExponentNotCoprime};

  // gamma is derived locally so that agw_check only needs the field.
  const ff::Element gamma = ff::pow(field.generator(), as_signed(q - 1));
  std::vector<ff::Element> images;
  images.reserve(q + 1);
  ff::Element x = field.one();
  for (std::uint64_t j = 0; j <= q; ++j) {
    const ff::Element hx = evaluate(h, x);
    if (hx.is_zero()) return {false, AgwReason::kHVanishesOnMu};
    images.push_back(ff::pow(x, r) * ff::pow(hx, as_signed(q - 1)));
    x *= gamma;
  }
  if (!all_distinct(images)) return {false, AgwReason::kNotBijectiveOnMu};
  return {true, AgwReason::kPermutes};
}

bool piecewise_check(const CosetPartition& part, std::span<const MonomialPiece> pieces) {
  require_disjoint(part);
  if (pieces.size() != part.d) {
    throw Error(ErrorCode::kInvalidArgument, "expected one piece per coset");
  }
  for (const auto& piece : pieces) require_in_mu(part.mu, piece.A, "piece coefficient");

  for (const auto& piece : pieces) {
    if (num::gcd(piece.exponent, as_signed(part.subgroup_order)) != 1) return false;
  }
  std::vector<ff::Element> images;
  images.reserve(part.mu.order);
  for (const auto& x : part.mu.elements()) {
    const auto& piece = pieces[coset_index(part, x)];
    images.push_back(piece.A * ff::pow(x, piece.exponent));
  }
  return all_distinct(images);
}

bool omega_monomial_check(const CosetPartition& part, const ff::Element& A, std::int64_t k,
                          std::int64_t n) {
  require_disjoint(part);
  require_in_mu(part.mu, A, "A");
  return num::gcd(as_signed(part.subgroup_order), n) == 1 && num::gcd(k, as_signed(part.d)) == 1;
}

std::function<ff::Element(const ff::Element&)> materialize_omega_monomial(
    const CosetPartition& part, const ff::Element& A, std::int64_t k, std::int64_t n) {
  require_disjoint(part);
  require_in_mu(part.mu, A, "A");
  return [part, A, k, n](const ff::Element& x) {
    const auto i = as_signed(coset_index(part, x));
    const ff::Element y = x * ff::pow(part.omega, -i);
    return A * ff::pow(part.omega, i * k) * ff::pow(y, n);
  };
}

std::vector<MonomialPiece> omega_monomial_pieces(const CosetPartition& part, const ff::Element& A,
                                                 std::int64_t k, std::int64_t n) {
  std::vector<MonomialPiece> pieces;
  pieces.reserve(part.d);
  for (std::uint64_t i = 0; i < part.d; ++i) {
    // A omega^{ik} y^n = (A omega^{i(k-n)}) x^n for x = omega^i y
    pieces.push_back({A * ff::pow(part.omega, as_signed(i) * (k - n)), n});
  }
  return pieces;
}

}  // namespace ppforge::unity
