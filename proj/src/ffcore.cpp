#include "ppforge/ffcore.hpp"

#include <algorithm>
#include <charconv>
#include <random>
#include <sstream>

#include "ppforge/error.hpp"

namespace ppforge::ff {
namespace {

// Dense polynomials over F_p, little-endian, trailing zeros trimmed.
using Poly = std::vector<std::uint64_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t inv_mod_p(std::uint64_t a, std::uint64_t p) {
  // p prime, a != 0 mod p
  std::uint64_t result = 1, base = a % p, e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

Poly poly_mod(Poly a, const Poly& m, std::uint64_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint64_t lead_inv = inv_mod_p(m.back(), p);
  while (a.size() > dm) {
    const std::uint64_t factor = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = (a[shift + i] + (p - factor) * m[i]) % p;
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    }
  }
  return poly_mod(std::move(out), m, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m, std::uint64_t p) {
  Poly result{1};
  base = poly_mod(std::move(base), m, p);
  while (e) {
    if (e & 1) result = poly_mulmod(result, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return result;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

bool has_order(const Element& g, const FieldSpec& field) {
  if (g.is_zero()) return false;
  for (const auto& [ell, e] : field.order_factorization()) {
    if (pow(g, static_cast<std::int64_t>(field.order() / ell)) == field.one()) return false;
  }
  return true;
}

void check_same(const Element& a, const Element& b) {
  if (a.field() == nullptr || a.field() != b.field()) {
    throw Error(ErrorCode::kFieldMismatch, "operands belong to different fields");
  }
}

std::uint64_t validated_size(std::uint64_t p, unsigned h, std::uint64_t max_size) {
  if (!num::is_prime(p)) throw Error(ErrorCode::kNotPrime, std::to_string(p) + " is not prime");
  if (p == 2) throw Error(ErrorCode::kInvalidArgument, "characteristic 2 is not supported");
  if (h == 0) throw Error(ErrorCode::kInvalidArgument, "extension degree must be >= 1");
  const auto size = num::checked_pow(p, 2 * h, max_size);
  if (!size) {
    throw Error(ErrorCode::kSizeExceeded,
                std::to_string(p) + "^" + std::to_string(2 * h) + " exceeds " +
                    std::to_string(max_size));
  }
  return *size;
}

}  // namespace

bool Element::is_zero() const {
  return std::all_of(c_.begin(), c_.begin() + degree_, [](std::uint32_t v) { return v == 0; });
}

Element& Element::operator+=(const Element& rhs) {
  check_same(*this, rhs);
  field_->add_into(*this, rhs);
  return *this;
}

Element& Element::operator-=(const Element& rhs) {
  check_same(*this, rhs);
  field_->sub_into(*this, rhs);
  return *this;
}

Element& Element::operator*=(const Element& rhs) {
  check_same(*this, rhs);
  field_->mul_into(*this, rhs);
  return *this;
}

Element operator-(const Element& a) {
  if (a.field_ == nullptr) throw Error(ErrorCode::kFieldMismatch, "unbound element");
  return a.field_->zero() - a;
}

FieldSpec::FieldSpec(std::uint64_t p, unsigned h, std::vector<std::uint32_t> modulus)
    : p_(p), h_(h), modulus_(std::move(modulus)) {
  q_ = *num::checked_pow(p, h, UINT64_MAX);
  size_ = q_ * q_;
  order_factors_ = num::factorize(size_ - 1);
}

Element FieldSpec::zero() const {
  Element e;
  e.field_ = this;
  e.degree_ = static_cast<std::uint8_t>(degree());
  return e;
}

Element FieldSpec::one() const { return from_int(1); }

Element FieldSpec::from_int(std::int64_t v) const {
  Element e = zero();
  e.c_[0] = static_cast<std::uint32_t>(num::mod(v, static_cast<std::int64_t>(p_)));
  return e;
}

Element FieldSpec::element(std::uint64_t canonical) const {
  if (canonical >= size_) {
    throw Error(ErrorCode::kInvalidArgument,
                "canonical code " + std::to_string(canonical) + " out of range");
  }
  Element e = zero();
  for (std::size_t i = 0; i < degree(); ++i) {
    e.c_[i] = static_cast<std::uint32_t>(canonical % p_);
    canonical /= p_;
  }
  return e;
}

Element FieldSpec::from_coeffs(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() > degree()) {
    throw Error(ErrorCode::kFieldMismatch, "too many coefficients for this field");
  }
  Element e = zero();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    e.c_[i] = static_cast<std::uint32_t>(coeffs[i] % p_);
  }
  return e;
}

void FieldSpec::add_into(Element& a, const Element& b) const {
  const auto n = degree();
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t s = std::uint64_t{a.c_[i]} + b.c_[i];
    a.c_[i] = static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
  }
}

void FieldSpec::sub_into(Element& a, const Element& b) const {
  const auto n = degree();
  for (std::size_t i = 0; i < n; ++i) {
    a.c_[i] = static_cast<std::uint32_t>(a.c_[i] >= b.c_[i] ? a.c_[i] - b.c_[i]
                                                            : a.c_[i] + p_ - b.c_[i]);
  }
}

void FieldSpec::mul_into(Element& a, const Element& b) const {
  const std::size_t n = degree();
  // Every partial sum stays below 2 * n * p^2 < 2^36.
  std::array<std::uint64_t, 2 * kMaxDegree - 1> t{};
  for (std::size_t i = 0; i < n; ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) t[i + j] += std::uint64_t{a.c_[i]} * b.c_[j];
  }
  for (std::size_t k = 2 * n - 2; k >= n; --k) {
    const std::uint64_t lead = t[k] % p_;
    if (lead != 0) {
      // t^n = -(m_0 + ... + m_{n-1} t^{n-1})
      for (std::size_t j = 0; j < n; ++j) {
        t[k - n + j] += (p_ - modulus_[j]) % p_ * lead;
      }
    }
    t[k - n] %= p_;
    if (k == n) break;
  }
  for (std::size_t i = 0; i < n; ++i) a.c_[i] = static_cast<std::uint32_t>(t[i] % p_);
}

bool is_irreducible(std::span<const std::uint32_t> monic, std::uint64_t p) {
  if (monic.size() < 2 || monic.back() != 1) return false;
  const std::size_t n = monic.size() - 1;
  const Poly m(monic.begin(), monic.end());
  Poly x_pow{0, 1};  // x^{p^i} mod m, starting at i = 0
  for (std::size_t i = 1; i <= n / 2; ++i) {
    x_pow = poly_powmod(x_pow, p, m, p);
    Poly diff = x_pow;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    if (diff.empty()) return false;
    if (poly_gcd(diff, m, p).size() != 1) return false;
  }
  return true;
}

Field build_field(std::uint64_t p, unsigned h, std::uint64_t seed, std::uint64_t max_size) {
  validated_size(p, h, max_size);
  const std::size_t n = 2 * h;
  std::mt19937_64 rng(seed);

  std::vector<std::uint32_t> modulus(n + 1, 0);
  modulus[n] = 1;
  do {
    for (std::size_t i = 0; i < n; ++i) modulus[i] = static_cast<std::uint32_t>(rng() % p);
  } while (modulus[0] == 0 || !is_irreducible(modulus, p));

  auto field = std::shared_ptr<FieldSpec>(new FieldSpec(p, h, std::move(modulus)));
  Element candidate;
  do {
    candidate = field->element(rng() % field->size());
  } while (!has_order(candidate, *field));
  field->generator_ = candidate;
  return field;
}

Field field_for_q(std::uint64_t q, std::uint64_t seed, std::uint64_t max_size) {
  const auto pp = num::as_prime_power(q);
  if (!pp) throw Error(ErrorCode::kNotPrime, std::to_string(q) + " is not a prime power");
  return build_field(pp->first, pp->second, seed, max_size);
}

Field make_field(std::uint64_t p, unsigned h, std::vector<std::uint32_t> modulus,
                 std::uint64_t generator_canonical, std::uint64_t max_size) {
  const std::uint64_t size = validated_size(p, h, max_size);
  if (modulus.size() != 2 * h + 1 ||
      std::any_of(modulus.begin(), modulus.end(), [p](std::uint32_t c) { return c >= p; })) {
    throw Error(ErrorCode::kInvalidArgument, "modulus must have 2h+1 coefficients in [0, p)");
  }
  if (!is_irreducible(modulus, p)) {
    throw Error(ErrorCode::kInvalidArgument, "modulus is not monic irreducible");
  }
  if (generator_canonical >= size) {
    throw Error(ErrorCode::kInvalidArgument, "generator out of range");
  }
  auto field = std::shared_ptr<FieldSpec>(new FieldSpec(p, h, std::move(modulus)));
  Element g = field->element(generator_canonical);
  if (!has_order(g, *field)) {
    throw Error(ErrorCode::kInvalidArgument, "generator does not have order q^2 - 1");
  }
  field->generator_ = g;
  return field;
}

Element pow(const Element& a, std::int64_t e) {
  const FieldSpec* field = a.field();
  if (field == nullptr) throw Error(ErrorCode::kFieldMismatch, "unbound element");
  if (a.is_zero()) {
    if (e < 0) throw Error(ErrorCode::kDivisionByZero, "negative power of zero");
    return e == 0 ? field->one() : field->zero();
  }
  auto u = static_cast<std::uint64_t>(num::mod(e, static_cast<std::int64_t>(field->order())));
  Element result = field->one();
  Element base = a;
  while (u) {
    if (u & 1) result *= base;
    u >>= 1;
    if (u) base *= base;
  }
  return result;
}

Element inv(const Element& a) {
  if (a.field() != nullptr && a.is_zero()) {
    throw Error(ErrorCode::kDivisionByZero, "inverse of zero");
  }
  return pow(a, -1);
}

Element frobenius_q(const Element& a) {
  if (a.field() == nullptr) throw Error(ErrorCode::kFieldMismatch, "unbound element");
  return pow(a, static_cast<std::int64_t>(a.field()->q()));
}

std::uint64_t multiplicative_order(const Element& a) {
  if (a.field() == nullptr) throw Error(ErrorCode::kFieldMismatch, "unbound element");
  if (a.is_zero()) throw Error(ErrorCode::kDivisionByZero, "zero has no multiplicative order");
  const FieldSpec& field = *a.field();
  std::uint64_t e = field.order();
  for (const auto& [ell, mult] : field.order_factorization()) {
    for (unsigned i = 0; i < mult; ++i) {
      if (pow(a, static_cast<std::int64_t>(e / ell)) != field.one()) break;
      e /= ell;
    }
  }
  return e;
}

std::uint64_t to_canonical(const Element& a) {
  if (a.field() == nullptr) throw Error(ErrorCode::kFieldMismatch, "unbound element");
  const auto c = a.coeffs();
  const std::uint64_t p = a.field()->p();
  std::uint64_t out = 0;
  for (std::size_t i = c.size(); i-- > 0;) out = out * p + c[i];
  return out;
}

std::string format_field_description(const FieldSpec& field) {
  std::ostringstream out;
  out << "p=" << field.p() << "\n";
  out << "h=" << field.h() << "\n";
  out << "modulus=";
  const auto m = field.modulus();
  for (std::size_t i = 0; i < m.size(); ++i) out << (i ? "," : "") << m[i];
  out << "\n";
  out << "generator=" << to_canonical(field.generator()) << "\n";
  return out.str();
}

namespace {

std::uint64_t parse_u64(std::string_view text, std::string_view what) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw Error(ErrorCode::kParseError, "bad integer for " + std::string(what) + ": '" +
                                            std::string(text) + "'");
  }
  return v;
}

}  // namespace

Field parse_field_description(std::string_view text, std::uint64_t max_size) {
  std::optional<std::uint64_t> p, h, generator;
  std::optional<std::vector<std::uint32_t>> modulus;

  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::kParseError, "expected key=value: " + line);
    const std::string key = line.substr(0, eq);
    const std::string_view value = std::string_view(line).substr(eq + 1);
    if (key == "p") {
      p = parse_u64(value, key);
    } else if (key == "h") {
      h = parse_u64(value, key);
    } else if (key == "generator") {
      generator = parse_u64(value, key);
    } else if (key == "modulus") {
      std::vector<std::uint32_t> coeffs;
      std::size_t start = 0;
      while (start <= value.size()) {
        const auto comma = value.find(',', start);
        const auto part = value.substr(start, comma == std::string_view::npos ? value.npos
                                                                               : comma - start);
        coeffs.push_back(static_cast<std::uint32_t>(parse_u64(part, key)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
      modulus = std::move(coeffs);
    } else {
      throw Error(ErrorCode::kParseError, "unknown key: " + key);
    }
  }
  if (!p || !h || !modulus || !generator) {
    throw Error(ErrorCode::kParseError, "field description needs p, h, modulus and generator");
  }
  if (*h > 64) throw Error(ErrorCode::kSizeExceeded, "extension degree too large");
  return make_field(*p, static_cast<unsigned>(*h), std::move(*modulus), *generator, max_size);
}

}  // namespace ppforge::ff
