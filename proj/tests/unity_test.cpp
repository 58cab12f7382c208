#include "ppforge/unity.hpp"

#include <gtest/gtest.h>

#include <set>

#include "ppforge/error.hpp"

namespace ppforge::unity {
namespace {

using ff::Element;
using ff::pow;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no ppforge::Error thrown";
  return ErrorCode::kParseError;
}

std::set<std::uint64_t> codes(const std::vector<Element>& xs) {
  std::set<std::uint64_t> out;
  for (const auto& x : xs) out.insert(ff::to_canonical(x));
  return out;
}

TEST(Mu, ElementsAreExactlyTheRootsOfUnity) {
  for (const std::uint64_t q : {5u, 9u, 13u}) {
    const MuContext mu = make_mu(ff::field_for_q(q));
    EXPECT_EQ(mu.order, q + 1);
    const auto elems = codes(mu.elements());
    EXPECT_EQ(elems.size(), q + 1);
    std::set<std::uint64_t> roots;
    for (std::uint64_t code = 1; code < mu.field->size(); ++code) {
      const Element x = mu.field->element(code);
      if (pow(x, static_cast<std::int64_t>(q + 1)) == mu.field->one()) roots.insert(code);
      EXPECT_EQ(mu.contains(x), roots.count(code) == 1);
    }
    EXPECT_EQ(elems, roots);
  }
}

TEST(Mu, RationalRootsArePlusMinusOne) {
  const MuContext mu = make_mu(ff::field_for_q(5));
  std::set<std::uint64_t> rational;
  for (const auto& x : mu.elements()) {
    if (ff::frobenius_q(x) == x) rational.insert(ff::to_canonical(x));
  }
  EXPECT_EQ(rational, (std::set<std::uint64_t>{1, 4}));
}

TEST(Mu, GammaOrderQ13) {
  const MuContext mu = make_mu(ff::field_for_q(13));
  Element x = mu.gamma;
  int e = 1;
  while (x != mu.field->one()) {
    x *= mu.gamma;
    ++e;
  }
  EXPECT_EQ(e, 14);
  EXPECT_EQ(mu.gamma, pow(mu.field->generator(), 12));
}

TEST(Partition, Examples) {
  const MuContext mu5 = make_mu(ff::field_for_q(5));
  const CosetPartition p = make_partition(mu5, 3);
  EXPECT_EQ(p.subgroup_order, 2u);
  EXPECT_TRUE(p.disjoint);
  EXPECT_EQ(p.s, 2u);
  EXPECT_EQ(ff::multiplicative_order(p.omega), 3u);

  // Three cosets of size two, enumerated directly.
  std::set<std::set<std::uint64_t>> cosets;
  const Element minus_one = -mu5.field->one();
  for (int i = 0; i < 3; ++i) {
    const Element w = pow(p.omega, i);
    cosets.insert({ff::to_canonical(w), ff::to_canonical(w * minus_one)});
  }
  std::set<std::uint64_t> all;
  for (const auto& c : cosets) all.insert(c.begin(), c.end());
  EXPECT_EQ(cosets.size(), 3u);
  EXPECT_EQ(all, codes(mu5.elements()));

  const CosetPartition p7 = make_partition(make_mu(ff::field_for_q(7)), 4);
  EXPECT_FALSE(p7.disjoint);
  const CosetPartition p13 = make_partition(make_mu(ff::field_for_q(13)), 2);
  EXPECT_EQ(p13.subgroup_order, 7u);
  EXPECT_EQ(p13.s, 1u);

  EXPECT_EQ(code_of([&] { make_partition(mu5, 4); }), ErrorCode::kNotADivisor);
  EXPECT_EQ(code_of([&] { make_partition(mu5, 0); }), ErrorCode::kNotADivisor);
  // s lands in [1, d]: d = 1 gives s = 1
  EXPECT_EQ(make_partition(mu5, 1).s, 1u);
}

TEST(CosetIndex, ExhaustiveQ5D3) {
  const MuContext mu = make_mu(ff::field_for_q(5));
  const CosetPartition p = make_partition(mu, 3);
  EXPECT_EQ(coset_index(p, mu.field->one()), 0u);
  const Element minus_one = -mu.field->one();  // mu_2 = {1, -1}
  for (int i = 0; i < 3; ++i) {
    for (const Element& y : {mu.field->one(), minus_one}) {
      EXPECT_EQ(coset_index(p, pow(p.omega, i) * y), static_cast<std::uint64_t>(i));
    }
  }
}

TEST(CosetIndex, MinusGammaSquaredQ13) {
  const MuContext mu = make_mu(ff::field_for_q(13));
  const CosetPartition p = make_partition(mu, 2);
  const Element z = -(mu.gamma * mu.gamma);
  const bool in_mu7 = pow(z, 7) == mu.field->one();
  EXPECT_EQ(coset_index(p, z), in_mu7 ? 0u : 1u);
  EXPECT_FALSE(in_mu7);  // -1 = gamma^7, so z = gamma^9
}

TEST(CosetIndex, Errors) {
  const MuContext mu = make_mu(ff::field_for_q(7));
  const CosetPartition bad = make_partition(mu, 4);
  EXPECT_EQ(code_of([&] { coset_index(bad, mu.field->one()); }), ErrorCode::kPartitionNotDisjoint);
  const CosetPartition good = make_partition(mu, 1);
  EXPECT_EQ(code_of([&] { coset_index(good, mu.field->from_int(3)); }), ErrorCode::kNotInMu);
  EXPECT_EQ(code_of([&] { coset_index(good, mu.field->zero()); }), ErrorCode::kNotInMu);
}

TEST(CosetIndex, PartitionCompletenessProperty) {
  for (const std::uint64_t q : {5u, 9u, 13u, 17u, 25u, 29u}) {
    const MuContext mu = make_mu(ff::field_for_q(q));
    for (const auto d : num::divisors(q + 1)) {
      const CosetPartition p = make_partition(mu, d);
      if (!p.disjoint) continue;
      std::vector<std::uint64_t> sizes(d, 0);
      for (const auto& x : mu.elements()) {
        const auto i = coset_index(p, x);
        ASSERT_LT(i, d);
        ++sizes[i];
        const Element y = x * pow(p.omega, -static_cast<std::int64_t>(i));
        ASSERT_EQ(pow(y, static_cast<std::int64_t>(p.subgroup_order)), mu.field->one());
      }
      for (const auto size : sizes) EXPECT_EQ(size, p.subgroup_order) << "q=" << q << " d=" << d;
    }
  }
}

TEST(Agw, Examples) {
  const ff::Field f5 = ff::field_for_q(5);
  const SparsePoly one = SparsePoly::monomial(f5->one(), 0);
  EXPECT_TRUE(agw_check(*f5, 5, SparsePoly::monomial(f5->from_int(3), 0)));
  EXPECT_TRUE(agw_check(*f5, 7, one));
  const auto fail = agw_check(*f5, 2, one);
  EXPECT_FALSE(fail);
  EXPECT_EQ(fail.reason, AgwReason::kExponentNotCoprime);

  const ff::Field f13 = ff::field_for_q(13);
  const SparsePoly h({Term{0, f13->from_int(2)}, Term{8, f13->one()}, Term{92, f13->one()}});
  EXPECT_TRUE(agw_check(*f13, 5, h));

  // x^{q+1} - 1 vanishes on all of mu_{q+1}
  const SparsePoly vanishing({Term{0, -f5->one()}, Term{6, f5->one()}});
  const auto v = agw_check(*f5, 1, vanishing);
  EXPECT_FALSE(v);
  EXPECT_EQ(v.reason, AgwReason::kHVanishesOnMu);

  // x^r with r = 2: gcd(2, 4) != 1 already; r = 3 with h = x^3 gives x^6 on mu = 1
  const auto collapse = agw_check(*f5, 3, SparsePoly::monomial(f5->one(), 3));
  EXPECT_FALSE(collapse);
  EXPECT_EQ(collapse.reason, AgwReason::kNotBijectiveOnMu);
}

TEST(Piecewise, Examples) {
  const MuContext mu = make_mu(ff::field_for_q(5));
  const Element one = mu.field->one();
  const CosetPartition whole = make_partition(mu, 1);
  const MonomialPiece identity{one, 1};
  EXPECT_TRUE(piecewise_check(whole, std::span(&identity, 1)));

  const CosetPartition p = make_partition(mu, 3);
  const std::vector<MonomialPiece> id3(3, identity);
  EXPECT_TRUE(piecewise_check(p, id3));

  // (1, 1), (omega, 1), (omega^2, 1): decide by listing A_i x for x in coset i.
  const std::vector<MonomialPiece> twisted{{one, 1}, {p.omega, 1}, {pow(p.omega, 2), 1}};
  std::set<std::uint64_t> images;
  for (int i = 0; i < 3; ++i) {
    for (const Element& y : {one, -one}) {
      images.insert(ff::to_canonical(twisted[i].A * pow(p.omega, i) * y));
    }
  }
  EXPECT_EQ(piecewise_check(p, twisted), images.size() == 6);
  // coset i lands on coset 2i mod 3, a bijection of the cosets
  EXPECT_EQ(images.size(), 6u);

  const std::vector<MonomialPiece> bad_exp{{one, 2}, {one, 1}, {one, 1}};
  EXPECT_FALSE(piecewise_check(p, bad_exp));

  const std::vector<MonomialPiece> not_mu{{mu.field->from_int(2), 1}, identity, identity};
  EXPECT_EQ(code_of([&] { piecewise_check(p, not_mu); }), ErrorCode::kNotInMu);
  EXPECT_EQ(code_of([&] { piecewise_check(p, std::span(&identity, 1)); }),
            ErrorCode::kInvalidArgument);
}

TEST(OmegaMonomial, Examples) {
  const MuContext mu5 = make_mu(ff::field_for_q(5));
  const CosetPartition p = make_partition(mu5, 3);
  const Element one = mu5.field->one();
  EXPECT_TRUE(omega_monomial_check(p, one, 1, 1));
  EXPECT_FALSE(omega_monomial_check(p, one, 3, 1));
  EXPECT_EQ(code_of([&] { omega_monomial_check(p, mu5.field->from_int(2), 1, 1); }),
            ErrorCode::kNotInMu);

  const ff::Field f13 = ff::field_for_q(13);
  const MuContext mu13 = make_mu(f13);
  const CosetPartition p13 = make_partition(mu13, 2);
  const Element c = f13->from_int(2);
  const Element A = f13->from_int(2) * ff::inv(c);
  EXPECT_TRUE(omega_monomial_check(p13, A, 1, 4));
  const auto g = materialize_omega_monomial(p13, A, 1, 4);
  std::vector<Element> images;
  for (const auto& x : mu13.elements()) images.push_back(g(x));
  EXPECT_EQ(codes(images).size(), 14u);
  EXPECT_EQ(codes(images), codes(mu13.elements()));
}

TEST(OmegaMonomial, IffAndPiecewiseConsistency) {
  for (const std::uint64_t q : {5u, 9u, 13u}) {
    const MuContext mu = make_mu(ff::field_for_q(q));
    const auto elems = mu.elements();
    for (const auto d : num::divisors(q + 1)) {
      const CosetPartition p = make_partition(mu, d);
      if (!p.disjoint) continue;
      const Element A = elems[elems.size() / 3];
      const auto n_max = static_cast<std::int64_t>(2 * p.subgroup_order);
      for (std::int64_t k = 0; k <= static_cast<std::int64_t>(2 * d); ++k) {
        for (std::int64_t n = 0; n <= n_max; ++n) {
          const bool claimed = omega_monomial_check(p, A, k, n);
          const auto g = materialize_omega_monomial(p, A, k, n);
          std::vector<Element> images;
          for (const auto& x : elems) images.push_back(g(x));
          const auto image_set = codes(images);
          const bool bijective = image_set.size() == elems.size() && image_set == codes(elems);
          ASSERT_EQ(claimed, bijective) << "q=" << q << " d=" << d << " k=" << k << " n=" << n;

          const auto pieces = omega_monomial_pieces(p, A, k, n);
          for (const auto& x : elems) {
            const auto& piece = pieces[coset_index(p, x)];
            ASSERT_EQ(piece.A * pow(x, piece.exponent), g(x));
          }
          if (claimed) ASSERT_TRUE(piecewise_check(p, pieces));
        }
      }
    }
  }
}

}  // namespace
}  // namespace ppforge::unity
