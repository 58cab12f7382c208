#include "ppforge/families.hpp"

#include <algorithm>
#include <stdexcept>

#include "ppforge/error.hpp"
#include "ppforge/oracle.hpp"

namespace ppforge::families {
namespace {

std::int64_t as_signed(std::uint64_t v) { return static_cast<std::int64_t>(v); }

bool is_odd(std::int64_t v) { return num::mod(v, 2) == 1; }

bool c_root_condition(const ff::FieldSpec& field, const ff::Element& c, std::uint64_t m) {
  if (c.is_zero()) return false;
  const ff::Element half_c = c * ff::inv(field.from_int(2));
  return ff::pow(half_c, as_signed((field.q() + 1) / m)) == field.one();
}

std::uint64_t checked_exponent(std::int64_t e) {
  if (e < 0) {
    throw Error(ErrorCode::kNegativeExponent, "exponent " + std::to_string(e) + " is negative");
  }
  return static_cast<std::uint64_t>(e);
}

bool coprime(std::int64_t a, std::int64_t b) { return num::gcd(a, b) == 1; }

}  // namespace

std::string_view family_name(Family f) {
  switch (f) {
    case Family::kT1: return "T1";
    case Family::kT2: return "T2";
    case Family::kT3: return "T3";
    case Family::kT4: return "T4";
    case Family::kT5: return "T5";
    case Family::kT6: return "T6";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view name) {
  for (Family f : kAllFamilies) {
    if (family_name(f) == name) return f;
  }
  return std::nullopt;
}

FamilyParams make_params(Family tag, ff::Field field, std::uint64_t d, std::int64_t k,
                         std::int64_t r, ff::Element c, std::int64_t u6, std::int64_t v6) {
  if (tag == Family::kT5) d = 4;
  if (tag == Family::kT6) {
    d = 2;
    k = 0;
  }
  return FamilyParams{tag, std::move(field), d, k, r, c, u6, v6};
}

std::optional<Exponents> derived_exponents(std::uint64_t q, std::uint64_t d) {
  if (d == 0 || (q + 1) % d != 0) return std::nullopt;
  const std::uint64_t v = (q + 1) / d;
  const std::uint64_t v1 = (d - 1) * v;
  std::uint64_t s = v % d;
  if (s == 0) s = d;
  return Exponents{v, v1, v + 1, v1 + 1, s};
}

std::uint64_t c_root_index(Family tag) {
  switch (tag) {
    case Family::kT1:
    case Family::kT2:
    case Family::kT6: return 2;
    case Family::kT5: return 4;
    case Family::kT3:
    case Family::kT4: return 0;
  }
  return 0;
}

HypothesisReport validate(const FamilyParams& params) {
  HypothesisReport report{true, {}};
  auto violated = [&report](std::string what) { report.violations.push_back(std::move(what)); };

  const ff::FieldSpec& field = *params.field;
  const std::uint64_t q = field.q();
  const bool c_ok = params.c.field() == &field;
  if (!c_ok) violated("c not in F_{q^2}");

  switch (params.tag) {
    case Family::kT1:
    case Family::kT2: {
      const bool even_family = params.tag == Family::kT1;
      if (params.d == 0) {
        violated("d not positive");
        break;
      }
      if ((params.d % 2 == 0) != even_family) violated(even_family ? "d not even" : "d not odd");
      const auto ex = derived_exponents(q, params.d);
      if (!ex) {
        violated("q ≢ -1 mod d");
      } else if (num::gcd(as_signed(ex->v), as_signed(params.d)) != 1) {
        violated("gcd((q+1)/d,d) ≠ 1");
      }
      if (q % 4 != 1) violated("q ≢ 1 mod 4");
      if (c_ok && !c_root_condition(field, params.c, 2)) violated("(c/2)^{(q+1)/2} ≠ 1");
      if (!is_odd(params.k)) violated("k not odd");
      break;
    }
    case Family::kT3:
    case Family::kT4:
      if (!derived_exponents(q, params.d)) violated("q ≢ -1 mod d");
      if (c_ok && params.c.is_zero()) violated("c = 0");
      break;
    case Family::kT5:
      if (params.d != 4) violated("d ≠ 4");
      if (q % 8 != 3) violated("q ≢ 3 mod 8");
      if (c_ok && (q + 1) % 4 == 0 && !c_root_condition(field, params.c, 4)) {
        violated("(c/2)^{(q+1)/4} ≠ 1");
      }
      if (is_odd(params.k)) violated("k not even");
      break;
    case Family::kT6:
      if (params.d != 2) violated("d ≠ 2");
      if (q % 2 != 1) violated("q ≢ 1 mod 2");
      if (c_ok && !c_root_condition(field, params.c, 2)) violated("(c/2)^{(q+1)/2} ≠ 1");
      if (!is_odd(params.u6)) violated("u not odd");
      if (!is_odd(params.v6)) violated("v not odd");
      break;
  }
  report.satisfied = report.violations.empty();
  return report;
}

SparsePoly build_h(const FamilyParams& params) {
  const ff::FieldSpec& field = *params.field;
  const std::uint64_t q = field.q();
  const auto ex = derived_exponents(q, params.d);
  if (!ex) {
    throw Error(ErrorCode::kNotADivisor,
                std::to_string(params.d) + " does not divide " + std::to_string(q + 1));
  }
  const auto v = as_signed(ex->v), v1 = as_signed(ex->v1);
  const auto u = as_signed(ex->u), u1 = as_signed(ex->u1);
  const auto qq = as_signed(q);
  const std::int64_t k = params.k;
  const ff::Element one = field.one();
  const ff::Element minus_one = -one;

  std::int64_t e1 = 0, e2 = 0;
  ff::Element s1 = one, s2 = one;
  switch (params.tag) {
    case Family::kT1: e1 = v1 + k; e2 = qq * v + k; break;
    case Family::kT2: e1 = u1 + k; e2 = qq * u + 2 + k; break;
    case Family::kT3: e1 = v1 + k; e2 = qq * v + k; s2 = minus_one; break;
    case Family::kT4: e1 = u1 + k; e2 = qq * u + 2 + k; s2 = minus_one; break;
    case Family::kT5: e1 = u + k; e2 = qq * u + k + 2; break;
    case Family::kT6:
      // c + x^{u + (q+1)v/2} - x^u
      e1 = params.u6 + as_signed((q + 1) / 2) * params.v6;
      e2 = params.u6;
      s2 = minus_one;
      if (params.v6 < 0) checked_exponent(params.v6);
      break;
  }
  return SparsePoly({Term{0, params.c}, Term{checked_exponent(e1), s1},
                     Term{checked_exponent(e2), s2}});
}

BuiltF build_f(const FamilyParams& params) {
  if (params.r < 1) {
    throw Error(ErrorCode::kInvalidArgument, "r must be >= 1, got " + std::to_string(params.r));
  }
  const SparsePoly h = build_h(params);
  const std::uint64_t q = params.field->q();
  std::vector<Term> terms;
  for (const auto& t : h.terms()) {
    terms.push_back({static_cast<std::uint64_t>(params.r) + t.exponent * (q - 1), t.coeff});
  }
  SparsePoly literal(std::move(terms));
  SparsePoly reduced = literal.reduced(*params.field);
  return BuiltF{std::move(literal), std::move(reduced)};
}

bool predicate(const FamilyParams& params) {
  const auto report = validate(params);
  if (!report.satisfied) {
    std::string detail;
    for (const auto& v : report.violations) detail += (detail.empty() ? "" : "; ") + v;
    throw Error(ErrorCode::kHypothesesNotSatisfied, detail);
  }
  const std::uint64_t q = params.field->q();
  const auto qq = as_signed(q);
  const std::int64_t r = params.r, k = params.k;
  const auto d = as_signed(params.d);

  switch (params.tag) {
    case Family::kT1: {
      const auto ex = *derived_exponents(q, params.d);
      const auto v = as_signed(ex.v), s = as_signed(ex.s);
      return coprime(r - k, v) && coprime(r, qq - 1) && coprime(s + r - k, d);
    }
    case Family::kT2: {
      const auto ex = *derived_exponents(q, params.d);
      const auto v = as_signed(ex.v), s = as_signed(ex.s);
      return coprime(r - k - 1, v) && coprime(r, qq - 1) && coprime(s + r - k - 1, d);
    }
    case Family::kT3:
    case Family::kT4:
      return coprime(r, qq * qq - 1);
    case Family::kT5:
      return coprime(r, (qq * qq - 1) / 4) && coprime(r - k - 1, (qq + 1) / 4);
    case Family::kT6:
      return coprime(r, (qq * qq - 1) / 2) && coprime(r - params.u6, (qq + 1) / 2);
  }
  return false;
}

std::vector<ff::Element> valid_c_values(const unity::MuContext& mu, std::uint64_t m) {
  if (m == 0 || mu.order % m != 0) {
    throw Error(ErrorCode::kNotADivisor,
                std::to_string(m) + " does not divide " + std::to_string(mu.order));
  }
  const ff::FieldSpec& field = *mu.field;
  const ff::Element two = field.from_int(2);
  const ff::Element step = ff::pow(mu.gamma, as_signed(m));
  std::vector<ff::Element> out;
  ff::Element y = field.one();
  for (std::uint64_t j = 0; j < mu.order / m; ++j) {
    out.push_back(two * y);
    y *= step;
  }
  std::sort(out.begin(), out.end(), [](const ff::Element& a, const ff::Element& b) {
    return ff::to_canonical(a) < ff::to_canonical(b);
  });
  return out;
}

std::vector<std::int64_t> default_k_window(Family tag, std::uint64_t d) {
  std::vector<std::int64_t> out;
  const auto span = as_signed(2 * d);
  switch (tag) {
    case Family::kT1:
    case Family::kT2:
      for (std::int64_t k = 1; k < 1 + span; k += 2) out.push_back(k);
      break;
    case Family::kT5:
      for (std::int64_t k = 0; k < span; k += 2) out.push_back(k);
      break;
    case Family::kT3:
    case Family::kT4:
      for (std::int64_t k = 0; k < span; ++k) out.push_back(k);
      break;
    case Family::kT6:
      out.push_back(0);
      break;
  }
  return out;
}

namespace {

// Shared body of the two coset lemmas: x^{a+k} = x^{b+k} and
// x^{-a} = omega^{is} x^{-shift} on every x in mu_{q+1}.
bool coset_lemma(const ff::Field& field, std::uint64_t d, std::int64_t k, bool shifted) {
  const unity::MuContext mu = unity::make_mu(field);
  const unity::CosetPartition part = unity::make_partition(mu, d);
  if (!part.disjoint) {
    throw Error(ErrorCode::kPartitionNotDisjoint,
                "gcd(d, (q+1)/d) != 1 for d = " + std::to_string(d));
  }
  const auto ex = *derived_exponents(field->q(), d);
  const auto q = as_signed(field->q());
  const std::int64_t lhs = as_signed(shifted ? ex.u1 : ex.v1);
  const std::int64_t rhs = shifted ? q * as_signed(ex.u) + 2 : q * as_signed(ex.v);
  const std::int64_t shift = shifted ? 1 : 0;

  for (const auto& x : mu.elements()) {
    if (ff::pow(x, lhs + k) != ff::pow(x, rhs + k)) return false;
    const auto i = as_signed(unity::coset_index(part, x));
    if (ff::pow(x, -lhs) != ff::pow(part.omega, i * as_signed(part.s)) * ff::pow(x, -shift)) {
      return false;
    }
  }
  return true;
}

void require_d4_congruence(std::uint64_t q, bool need_odd_quotient) {
  const bool ok = (q + 1) % 4 == 0 && (!need_odd_quotient || ((q + 1) / 4) % 2 == 1);
  if (!ok) {
    throw Error(ErrorCode::kBadCongruence,
                "q = " + std::to_string(q) + (need_odd_quotient ? " is not 3 mod 8" : " is not 3 mod 4"));
  }
}

}  // namespace

bool lemma_v_identity(const ff::Field& field, std::uint64_t d, std::int64_t k) {
  return coset_lemma(field, d, k, false);
}

bool lemma_u_identity(const ff::Field& field, std::uint64_t d, std::int64_t k) {
  return coset_lemma(field, d, k, true);
}

D4Class d4_class(const unity::MuContext& mu, const ff::Element& x) {
  require_d4_congruence(mu.field->q(), false);
  if (!mu.contains(x)) throw Error(ErrorCode::kNotInMu, "argument is not in mu_{q+1}");
  const auto quarter = as_signed(mu.order / 4);
  const ff::Element omega = ff::pow(mu.gamma, quarter);
  const ff::Element value = ff::pow(x, quarter);
  const ff::Element one = mu.field->one();
  if (value == one) return D4Class::kMu;
  if (value == -one) return D4Class::kMinusMu;
  if (value == omega) return D4Class::kMuPrime;
  return D4Class::kMinusMuPrime;
}

bool lemma_d4_identity(const ff::Field& field) {
  const std::uint64_t q = field->q();
  require_d4_congruence(q, true);
  const unity::MuContext mu = unity::make_mu(field);
  const auto u = as_signed((q + 5) / 4);
  const auto qq = as_signed(q);
  for (const auto& x : mu.elements()) {
    const ff::Element lhs = ff::pow(x, u);
    ff::Element a = ff::pow(x, 2 + qq * u);
    ff::Element b = ff::pow(x, 2 - u);
    const D4Class cls = d4_class(mu, x);
    if (cls == D4Class::kMuPrime || cls == D4Class::kMinusMuPrime) {
      a = -a;
      b = -b;
    }
    if (lhs != a || lhs != b) return false;
  }
  return true;
}

bool corollary_negative(const ff::Field& field, std::int64_t u, std::int64_t v,
                        const ff::Element& c, std::int64_t r_lo, std::int64_t r_hi) {
  const std::uint64_t q = field->q();
  require_d4_congruence(q, false);
  FamilyParams params = make_params(Family::kT6, field, 2, 0, r_lo, c, u, v);
  const auto report = validate(params);
  if (!report.satisfied) {
    throw Error(ErrorCode::kHypothesesNotSatisfied, report.violations.front());
  }
  bool none_permute = true;
  for (std::int64_t r = std::max<std::int64_t>(r_lo, 1); r <= r_hi; ++r) {
    params.r = r;
    // (q+1)/2 even forces r odd, so r - u is even and shares 2 with (q+1)/2.
    if (predicate(params)) throw std::logic_error("T6 criterion holds for q = 3 mod 4");
    if (oracle::is_permutation_of_field(*field, build_f(params).literal).is_bijection) {
      none_permute = false;
    }
  }
  return none_permute;
}

}  // namespace ppforge::families
