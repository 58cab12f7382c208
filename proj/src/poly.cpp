#include "ppforge/poly.hpp"

#include <algorithm>
#include <sstream>

#include "ppforge/error.hpp"

namespace ppforge {

SparsePoly::SparsePoly(std::vector<Term> terms) {
  std::stable_sort(terms.begin(), terms.end(),
                   [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
  for (auto& t : terms) {
    if (!terms_.empty() && terms_.back().exponent == t.exponent) {
      terms_.back().coeff += t.coeff;
      if (terms_.back().coeff.is_zero()) terms_.pop_back();
    } else if (!t.coeff.is_zero()) {
      terms_.push_back(std::move(t));
    }
  }
}

SparsePoly SparsePoly::monomial(const ff::Element& coeff, std::uint64_t exponent) {
  return SparsePoly({Term{exponent, coeff}});
}

SparsePoly SparsePoly::reduced(const ff::FieldSpec& field) const {
  const std::uint64_t n = field.order();
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    const std::uint64_t e = t.exponent == 0 ? 0 : (t.exponent - 1) % n + 1;
    out.push_back({e, t.coeff});
  }
  return SparsePoly(std::move(out));
}

std::string SparsePoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) out << " + ";
    first = false;
    const std::uint64_t c = ff::to_canonical(t.coeff);
    if (t.exponent == 0) {
      out << c;
      continue;
    }
    if (c != 1) out << c << "*";
    out << "x";
    if (t.exponent != 1) out << "^" << t.exponent;
  }
  return out.str();
}

bool operator==(const SparsePoly& a, const SparsePoly& b) {
  return std::equal(a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end(),
                    [](const Term& x, const Term& y) {
                      return x.exponent == y.exponent && x.coeff == y.coeff;
                    });
}

ff::Element evaluate(const SparsePoly& poly, const ff::Element& x) {
  if (x.field() == nullptr) throw Error(ErrorCode::kFieldMismatch, "unbound element");
  ff::Element acc = x.field()->zero();
  for (const auto& t : poly.terms()) {
    acc += t.coeff * ff::pow(x, static_cast<std::int64_t>(t.exponent));
  }
  return acc;
}

}  // namespace ppforge
