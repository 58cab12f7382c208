#include "ppforge/oracle.hpp"

#include <gtest/gtest.h>

#include <random>

namespace ppforge::oracle {
namespace {

using ff::Element;

// Least pair a < b (canonical) with f(a) = f(b), by checking all pairs.
std::optional<std::pair<std::uint64_t, std::uint64_t>> brute_collision(const ff::FieldSpec& f,
                                                                       const SparsePoly& poly) {
  std::vector<Element> images;
  for (std::uint64_t a = 0; a < f.size(); ++a) images.push_back(evaluate(poly, f.element(a)));
  for (std::uint64_t a = 0; a < f.size(); ++a) {
    for (std::uint64_t b = a + 1; b < f.size(); ++b) {
      if (images[a] == images[b]) return std::pair{a, b};
    }
  }
  return std::nullopt;
}

TEST(Eval, Examples) {
  const ff::Field f = ff::field_for_q(13);
  const Element c = f->from_int(9);
  EXPECT_EQ(eval(SparsePoly::monomial(c, 0), f->generator()), c);
  EXPECT_EQ(eval(SparsePoly::monomial(f->one(), 33), f->generator()), ff::pow(f->generator(), 33));
  const SparsePoly h({Term{0, f->from_int(2)}, Term{8, f->one()}, Term{92, f->one()}});
  EXPECT_EQ(eval(h, f->one()), f->from_int(4));
}

TEST(FieldPermutation, Examples) {
  const ff::Field f25 = ff::field_for_q(5);
  const auto id = is_permutation_of_field(*f25, SparsePoly::monomial(f25->one(), 1));
  EXPECT_TRUE(id.is_bijection);
  EXPECT_FALSE(id.first_collision);
  EXPECT_EQ(id.domain_size, 25u);

  const SparsePoly square = SparsePoly::monomial(f25->one(), 2);
  const auto sq = is_permutation_of_field(*f25, square);
  EXPECT_FALSE(sq.is_bijection);
  ASSERT_TRUE(sq.first_collision);
  const Element a = sq.first_collision->first, b = sq.first_collision->second;
  EXPECT_EQ(a, -b);
  const auto expected = brute_collision(*f25, square);
  EXPECT_EQ(ff::to_canonical(a), expected->first);
  EXPECT_EQ(ff::to_canonical(b), expected->second);

  const ff::Field f169 = ff::field_for_q(13);
  EXPECT_TRUE(is_permutation_of_field(*f169, SparsePoly::monomial(f169->one(), 5)).is_bijection);
}

TEST(FieldPermutation, CollisionIsLexicographicallyLeast) {
  const ff::Field f = ff::field_for_q(5);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Term> terms;
    for (int i = 0; i < 3; ++i) terms.push_back({rng() % 60, f->element(rng() % 25)});
    const SparsePoly poly(terms);
    const auto report = is_permutation_of_field(*f, poly);
    const auto expected = brute_collision(*f, poly);
    ASSERT_EQ(report.is_bijection, !expected.has_value());
    if (expected) {
      ASSERT_EQ(ff::to_canonical(report.first_collision->first), expected->first) << poly.to_string();
      ASSERT_EQ(ff::to_canonical(report.first_collision->second), expected->second);
    }
  }
}

TEST(FieldPermutation, MonomialCriterion) {
  for (const std::uint64_t q : {5u, 7u}) {
    const ff::Field f = ff::field_for_q(q);
    for (std::uint64_t n = 1; n < f->size(); ++n) {
      const bool coprime = num::gcd(static_cast<std::int64_t>(n), static_cast<std::int64_t>(f->order())) == 1;
      ASSERT_EQ(is_permutation_of_field(*f, SparsePoly::monomial(f->one(), n)).is_bijection, coprime)
          << "q=" << q << " n=" << n;
    }
  }
}

TEST(LogTable, AgreesWithReferenceOracle) {
  for (const std::uint64_t q : {5u, 9u}) {
    const ff::Field f = ff::field_for_q(q);
    const LogTable table(f);
    EXPECT_EQ(table.exp(table.log(7)), 7u);
    std::mt19937_64 rng(q);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<Term> terms;
      for (int i = 0; i < 3; ++i) terms.push_back({rng() % (3 * f->size()), f->element(rng() % f->size())});
      const SparsePoly poly(terms);
      for (std::uint64_t code = 0; code < f->size(); ++code) {
        ASSERT_EQ(table.eval(poly, code), evaluate(poly, f->element(code)));
      }
      const auto slow = is_permutation_of_field(*f, poly);
      const auto fast = is_permutation_of_field(table, poly);
      ASSERT_EQ(slow.is_bijection, fast.is_bijection) << poly.to_string();
      ASSERT_EQ(slow.first_collision, fast.first_collision);
    }
  }
}

TEST(MuPermutation, Examples) {
  const unity::MuContext mu6 = unity::make_mu(ff::field_for_q(5));
  const auto id = is_permutation_of_mu(mu6, [](const Element& x) { return x; });
  EXPECT_TRUE(id.is_bijection);
  EXPECT_EQ(id.domain_size, 6u);

  const auto sq = is_permutation_of_mu(mu6, [](const Element& x) { return x * x; });
  EXPECT_FALSE(sq.is_bijection);
  ASSERT_TRUE(sq.first_collision);
  EXPECT_EQ(sq.first_collision->first, -sq.first_collision->second);

  const auto out = is_permutation_of_mu(mu6, [&](const Element& x) { return x * mu6.field->from_int(2); });
  EXPECT_FALSE(out.is_bijection);
  EXPECT_TRUE(out.image_outside_mu);
  EXPECT_FALSE(out.first_collision);

  const ff::Field f13 = ff::field_for_q(13);
  const unity::MuContext mu14 = unity::make_mu(f13);
  const SparsePoly h({Term{0, f13->from_int(2)}, Term{8, f13->one()}, Term{92, f13->one()}});
  const auto g = [&](const Element& x) { return ff::pow(x, 5) * ff::pow(evaluate(h, x), 12); };
  EXPECT_TRUE(is_permutation_of_mu(mu14, g).is_bijection);
}

TEST(PointwiseEqual, Examples) {
  const ff::Field f = ff::field_for_q(5);
  const SparsePoly x = SparsePoly::monomial(f->one(), 1);
  EXPECT_TRUE(pointwise_equal(*f, x, x));
  EXPECT_TRUE(pointwise_equal(*f, SparsePoly::monomial(f->one(), 25), x));
  EXPECT_FALSE(pointwise_equal(*f, SparsePoly::monomial(f->one(), 24), SparsePoly::monomial(f->one(), 0)));

  // q = 5, d = 3, k = 0, r = 1: h = c + x^4 - x^10, f = x h(x^4) ~ c x
  for (std::uint64_t code = 1; code < 25; ++code) {
    const Element c = f->element(code);
    const SparsePoly tri({Term{1, c}, Term{17, f->one()}, Term{41, -f->one()}});
    EXPECT_TRUE(pointwise_equal(*f, tri, SparsePoly::monomial(c, 1)));
  }
}

TEST(AgwAgreement, RandomTrinomialsQ5) {
  const ff::Field f = ff::field_for_q(5);
  std::mt19937_64 rng(5);
  int positives = 0;
  for (int trial = 0; trial < 150; ++trial) {
    std::vector<Term> terms;
    for (int i = 0; i < 3; ++i) terms.push_back({rng() % 12, f->element(1 + rng() % 24)});
    const SparsePoly h(terms);
    const auto r = static_cast<std::int64_t>(1 + rng() % 24);
    std::vector<Term> fterms;
    for (const auto& t : h.terms()) fterms.push_back({static_cast<std::uint64_t>(r) + 4 * t.exponent, t.coeff});
    const bool expected = is_permutation_of_field(*f, SparsePoly(fterms)).is_bijection;
    ASSERT_EQ(static_cast<bool>(unity::agw_check(*f, r, h)), expected) << h.to_string() << " r=" << r;
    positives += expected;
  }
  EXPECT_GT(positives, 0);
}

}  // namespace
}  // namespace ppforge::oracle
