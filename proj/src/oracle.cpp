#include "ppforge/oracle.hpp"

#include <vector>

#include "collision.hpp"

namespace ppforge::oracle {

ff::Element eval(const SparsePoly& poly, const ff::Element& x) { return evaluate(poly, x); }

namespace {

// Scans inputs in ascending canonical order; image_of(code) returns the
// canonical code of the image.
template <typename ImageOf>
PermutationReport scan_field(const ff::FieldSpec& field, ImageOf&& image_of) {
  constexpr std::uint32_t kUnseen = UINT32_MAX;
  constexpr std::uint32_t kPaired = UINT32_MAX - 1;
  const std::uint64_t n = field.size();
  // first_seen[image] = least preimage so far
  std::vector<std::uint32_t> first_seen(n, kUnseen);
  std::optional<std::pair<std::uint64_t, std::uint64_t>> best;
  for (std::uint64_t code = 0; code < n; ++code) {
    auto& slot = first_seen[image_of(code)];
    if (slot == kPaired) continue;
    if (slot == kUnseen) {
      slot = static_cast<std::uint32_t>(code);
      continue;
    }
    // The first repeat of an image pairs its two least preimages.
    const std::pair<std::uint64_t, std::uint64_t> candidate{slot, code};
    if (!best || candidate.first < best->first) best = candidate;
    slot = kPaired;
    if (best->first == 0) break;
  }
  PermutationReport report{!best.has_value(), std::nullopt, std::nullopt, n};
  if (best) report.first_collision = std::pair{field.element(best->first), field.element(best->second)};
  return report;
}

}  // namespace

LogTable::LogTable(ff::Field field) : field_(std::move(field)) {
  const std::uint64_t n = field_->order();
  log_.assign(field_->size(), 0);
  exp_.resize(n);
  ff::Element x = field_->one();
  for (std::uint64_t e = 0; e < n; ++e) {
    const auto code = ff::to_canonical(x);
    exp_[e] = static_cast<std::uint32_t>(code);
    log_[code] = static_cast<std::uint32_t>(e);
    x *= field_->generator();
  }
}

ff::Element LogTable::eval(const SparsePoly& poly, std::uint64_t x_code) const {
  ff::Element acc = field_->zero();
  if (x_code == 0) {
    // only a constant term survives at 0
    if (!poly.empty() && poly.terms().front().exponent == 0) acc = poly.terms().front().coeff;
    return acc;
  }
  const std::uint64_t n = field_->order();
  const std::uint64_t lx = log_[x_code];
  for (const auto& t : poly.terms()) {
    const std::uint64_t e = (log_[ff::to_canonical(t.coeff)] + (t.exponent % n) * lx) % n;
    acc += field_->element(exp_[e]);
  }
  return acc;
}

PermutationReport is_permutation_of_field(const ff::FieldSpec& field, const SparsePoly& poly) {
  return scan_field(field, [&](std::uint64_t code) {
    return ff::to_canonical(evaluate(poly, field.element(code)));
  });
}

PermutationReport is_permutation_of_field(const LogTable& table, const SparsePoly& poly) {
  const ff::FieldSpec& field = *table.field();
  const std::uint64_t n = field.order();
  const std::uint64_t at_zero = ff::to_canonical(table.eval(poly, 0));
  // (log c_i, e_i mod n) per term
  std::vector<std::pair<std::uint64_t, std::uint64_t>> terms;
  terms.reserve(poly.size());
  for (const auto& t : poly.terms()) {
    terms.emplace_back(table.log(ff::to_canonical(t.coeff)), t.exponent % n);
  }
  return scan_field(field, [&](std::uint64_t code) -> std::uint64_t {
    if (code == 0) return at_zero;
    const std::uint64_t lx = table.log(code);
    ff::Element acc = field.zero();
    for (const auto& [log_c, e] : terms) acc += field.element(table.exp((log_c + e * lx) % n));
    return ff::to_canonical(acc);
  });
}

PermutationReport is_permutation_of_mu(const unity::MuContext& mu,
                                       const std::function<ff::Element(const ff::Element&)>& map) {
  PermutationReport report{true, std::nullopt, std::nullopt, mu.order};
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  pairs.reserve(mu.order);
  for (const auto& x : mu.elements()) {
    const ff::Element y = map(x);
    if (!mu.contains(y) && !report.image_outside_mu) report.image_outside_mu = x;
    pairs.emplace_back(ff::to_canonical(x), ff::to_canonical(y));
  }
  if (const auto c = detail::least_collision(std::move(pairs))) {
    report.first_collision = std::pair{mu.field->element(c->first), mu.field->element(c->second)};
  }
  report.is_bijection = !report.first_collision && !report.image_outside_mu;
  return report;
}

bool pointwise_equal(const ff::FieldSpec& field, const SparsePoly& f1, const SparsePoly& f2) {
  for (std::uint64_t code = 0; code < field.size(); ++code) {
    const ff::Element x = field.element(code);
    if (evaluate(f1, x) != evaluate(f2, x)) return false;
  }
  return true;
}

}  // namespace ppforge::oracle
