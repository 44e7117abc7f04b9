#include "infodist/hom.hpp"

#include <gtest/gtest.h>

#include "corpus.hpp"
#include "infodist/category.hpp"

using namespace infodist;

namespace {

Hom join_with(const Monoid& m, Elem a) {
  Hom h;
  h.map.resize(m.size());
  for (Elem x = 0; x < m.size(); ++x) h.map[x] = m.join(x, a);
  h.unital = a == m.neutral();
  return h;
}

}  // namespace

TEST(ValidateHom, IdentityAndConstantsAreHoms) {
  const Monoid m = free_semilattice(2);
  const auto id = validate_hom(m, m, identity_hom(m).map);
  ASSERT_TRUE(id.ok());
  EXPECT_TRUE(id->unital);

  for (Elem a = 0; a < m.size(); ++a) {
    const auto c = validate_hom(m, m, constant_hom(m, m, a).map);
    ASSERT_TRUE(c.ok());
    EXPECT_EQ(c->unital, a == m.neutral());
  }
}

TEST(ValidateHom, JoinWithFixedElementIsANonUnitalHom) {
  const Monoid m = free_semilattice(2);
  for (Elem a = 0; a < m.size(); ++a) {
    const auto h = validate_hom(m, m, join_with(m, a).map);
    ASSERT_TRUE(h.ok());
    EXPECT_EQ(h->unital, a == m.neutral());
  }
}

TEST(ValidateHom, RejectsNonHomsWithWitness) {
  const Monoid m = free_semilattice(2);
  // T{1} = {2}, T{2} = {1}, T{1,2} = {1}: then T({1} v {2}) = {1} but
  // T{1} v T{2} = {1,2}
  std::vector<Elem> map = {m.elem("{}"), m.elem("{2}"), m.elem("{1}"), m.elem("{1}")};
  const auto res = validate_hom(m, m, map);
  ASSERT_FALSE(res.ok());
  EXPECT_EQ(res.violations[0].kind, HomViolation::Kind::NotJoinPreserving);
  EXPECT_FALSE(res.violations[0].witness.empty());
}

TEST(HomOps, JoinIsIdempotentAndComposeHasIdentity) {
  const Monoid m = free_semilattice(2);
  const Hom t1 = join_with(m, m.elem("{1}"));
  EXPECT_EQ(hom_join(m, t1, t1), t1);
  EXPECT_EQ(compose(identity_hom(m), t1), t1);
  EXPECT_EQ(compose(t1, identity_hom(m)), t1);
}

TEST(HomOps, DistributionLaws) {
  const Monoid m = free_semilattice(2);
  std::vector<Hom> homs = enumerate_homs(m, m);
  for (const Hom& u : homs)
    for (const Hom& v : homs) {
      const Hom uv = hom_join(m, u, v);
      for (const Hom& x : homs) {
        EXPECT_EQ(compose(uv, x), hom_join(m, compose(u, x), compose(v, x)));
        EXPECT_EQ(compose(x, uv), hom_join(m, compose(x, u), compose(x, v)));
      }
    }
}

TEST(EnumerateHoms, TwoChainHasExactlyThreeEndomorphisms) {
  const Monoid m = free_semilattice(1);
  const auto homs = enumerate_homs(m, m);
  // constant-bottom, identity, constant-top; the swap breaks joins
  EXPECT_EQ(homs.size(), 3u);
}

TEST(EnumerateHoms, OnlyOneHomIntoTheTrivialMonoid) {
  const Monoid m = free_semilattice(2);
  MonoidSpec s;
  s.elements = {"e"};
  s.neutral = "e";
  s.join = {{"e"}};
  const auto tv = validate_monoid(s);
  ASSERT_TRUE(tv.ok());
  EXPECT_EQ(enumerate_homs(m, *tv).size(), 1u);
}

TEST(EnumerateHoms, PowersetEndomorphismsContainAllJoinTranslations) {
  const Monoid m = free_semilattice(2);
  const auto homs = enumerate_homs(m, m);
  for (Elem a = 0; a < m.size(); ++a) {
    const Hom t = join_with(m, a);
    EXPECT_NE(std::find(homs.begin(), homs.end(), t), homs.end());
  }
}

TEST(EnumerateHoms, RefusesOversizedSearches) {
  const Monoid m = free_semilattice(3);
  EXPECT_THROW(enumerate_homs(m, m, 1000), std::invalid_argument);
}

TEST(EllPrime, IdentityConstantAndZeroTarget) {
  const auto p2 = corpus::fix_p2();
  const Monoid& m = p2.monoid;
  const auto d = distance_table(m, p2.length, DistKind::d);
  EXPECT_EQ(ell_prime(m, m, identity_hom(m), d, d), Ext<Rat>(Rat(1)));
  EXPECT_EQ(ell_prime(m, m, constant_hom(m, m, m.elem("{1,2}")), d, d), Ext<Rat>(Rat(0)));
  const auto zero = DistanceTable<Rat>::zeros(m.size());
  EXPECT_EQ(ell_prime(m, m, identity_hom(m), zero, zero), Ext<Rat>(Rat(0)));
}

TEST(EllPrime, InfiniteWhenSourceCollapsesButTargetDoesNot) {
  const Monoid m = free_semilattice(1);
  const Monoid q = free_semilattice(1);
  auto dm = DistanceTable<Rat>::zeros(m.size());  // source distance zero
  auto dq = DistanceTable<Rat>::zeros(q.size());
  dq.set(0, 1, Rat(1));
  const Ext<Rat> lp = ell_prime(m, q, identity_hom(m), dm, dq);
  EXPECT_TRUE(lp.infinite);
}

TEST(EllPrime, SubmultiplicativeOverComposition) {
  const auto p2 = corpus::fix_p2();
  const Monoid& m = p2.monoid;
  const auto d = distance_table(m, p2.length, DistKind::d);
  const auto homs = enumerate_homs(m, m);
  for (const Hom& u : homs)
    for (const Hom& v : homs) {
      const Ext<Rat> lu = ell_prime(m, m, u, d, d);
      const Ext<Rat> lv = ell_prime(m, m, v, d, d);
      const Ext<Rat> luv = ell_prime(m, m, compose(u, v), d, d);
      EXPECT_LE(luv, lu * lv);
      const Ext<Rat> ljoin = ell_prime(m, m, hom_join(m, u, v), d, d);
      EXPECT_LE(ljoin, lu + lv);
    }
}

TEST(HomLength, EnvelopeOfLipschitzConstants) {
  const auto p2 = corpus::fix_p2();
  const Monoid& m = p2.monoid;
  const auto d = distance_table(m, p2.length, DistKind::d);
  const auto homs = enumerate_homs(m, m);
  std::vector<Rat> raw;
  for (const Hom& h : homs) {
    const Ext<Rat> lp = ell_prime(m, m, h, d, d);
    ASSERT_FALSE(lp.infinite);
    raw.push_back(lp.value);
  }
  const auto ell = hom_length(m, homs, raw);
  // envelope of an already monotone map is itself; here just check laws:
  // ell <= raw entrywise and ell is monotone on the hom monoid
  const Monoid hm = detail::build_hom_monoid(m, homs);
  for (std::size_t i = 0; i < homs.size(); ++i) EXPECT_LE(ell[i], raw[i]);
  EXPECT_TRUE(validate_length(hm, ell, LengthMode::monotone).ok());
}

TEST(HomMonoid, HomSetsFormValidMonoids) {
  const Monoid a = free_semilattice(1);
  const Monoid b = free_semilattice(2);
  for (const auto* src : {&a, &b})
    for (const auto* dst : {&a, &b}) {
      const auto homs = enumerate_homs(*src, *dst);
      const Monoid hm = detail::build_hom_monoid(*dst, homs);
      EXPECT_TRUE(validate_monoid(spec_of(hm)).ok());
      // neutral element is the constant-to-neutral hom
      EXPECT_EQ(homs[hm.neutral()], constant_hom(*src, *dst, dst->neutral()));
    }
}

TEST(HomLength, SingletonIdentityHomset) {
  // hom set {id} on the trivial monoid: length is just the raw value
  MonoidSpec s;
  s.elements = {"e"};
  s.neutral = "e";
  s.join = {{"e"}};
  const auto tv = validate_monoid(s);
  ASSERT_TRUE(tv.ok());
  const auto homs = enumerate_homs(*tv, *tv);
  ASSERT_EQ(homs.size(), 1u);
  const auto ell = hom_length(*tv, homs, std::vector<Rat>{Rat(1)});
  EXPECT_EQ(ell[0], Rat(1));
}
