#include "infodist/quotient.hpp"

#include <gtest/gtest.h>

#include "corpus.hpp"
#include "infodist/fixpoint.hpp"

using namespace infodist;

TEST(Quotient, FaithfulInputGivesIdentityQuotient) {
  const auto p2 = corpus::fix_p2();
  const auto t = distance_table(p2.monoid, p2.length, DistKind::d);
  const auto q = quotient(p2.monoid, t);
  ASSERT_TRUE(q.ok());
  EXPECT_EQ(q->quotient.size(), p2.monoid.size());
  for (Elem x = 0; x < p2.monoid.size(); ++x)
    EXPECT_EQ(q->quotient.label(q->class_of[x]), p2.monoid.label(x));
}

TEST(Quotient, ZeroTableCollapsesToTrivialMonoid) {
  const Monoid m = free_semilattice(2);
  const auto t = DistanceTable<Rat>::zeros(m.size());
  const auto q = quotient(m, t);
  ASSERT_TRUE(q.ok());
  EXPECT_EQ(q->quotient.size(), 1u);
  EXPECT_EQ(q->metric.at(0, 0), Rat(0));
}

TEST(Quotient, RejectsTriangleViolationsWithWitness) {
  const auto fb = corpus::fix_bad();
  const auto t = distance_table(fb.monoid, fb.length, DistKind::d);
  const auto q = quotient(fb.monoid, t);
  ASSERT_FALSE(q.ok());
  EXPECT_EQ(q.violations[0].kind, QuotientViolation::Kind::NotPseudometric);
  EXPECT_EQ(q.violations[0].witness.size(), 3u);
}

TEST(Quotient, RejectsJoinIncompatibleTables) {
  // a pseudometric (triangle holds) that is not join-compatible
  const Monoid m = free_semilattice(2);
  DistanceTable<Rat> t = DistanceTable<Rat>::zeros(m.size());
  const Elem e = m.elem("{}"), a = m.elem("{1}"), b = m.elem("{2}"), ab = m.elem("{1,2}");
  // distance 1 between everything except d(a, ab) = 2 breaks nothing of the
  // triangle at slack 1..2, but join-compat fails: d(a v b, a v a) = d(ab,a)
  t.set(e, a, Rat(1));
  t.set(e, b, Rat(1));
  t.set(e, ab, Rat(1));
  t.set(a, b, Rat(1));
  t.set(a, ab, Rat(2));
  t.set(b, ab, Rat(1));
  ASSERT_TRUE(check_delta_table(t, Rat(0)).holds());
  const auto q = quotient(m, t);
  ASSERT_FALSE(q.ok());
  EXPECT_EQ(q.violations[0].kind, QuotientViolation::Kind::NoNablaInequality);
}

TEST(Quotient, FixBadIdealLimitGivesFaithfulTwoClassQuotient) {
  const auto fb = corpus::fix_bad();
  const auto fix = ideal_length(fb.monoid, fb.length, FixVariant::d);
  const auto q = quotient(fb.monoid, fix.dist);
  ASSERT_TRUE(q.ok());
  const QuotientResult<Rat>& r = *q.value;
  EXPECT_EQ(r.quotient.size(), 2u);

  // faithfulness: zero only on the diagonal
  for (Elem a = 0; a < r.quotient.size(); ++a)
    for (Elem b = 0; b < r.quotient.size(); ++b)
      EXPECT_EQ(r.metric.at(a, b) == Rat(0), a == b);

  // well-definedness over all representative choices
  const Monoid& m = fb.monoid;
  for (Elem x = 0; x < m.size(); ++x)
    for (Elem x2 = 0; x2 < m.size(); ++x2) {
      if (r.class_of[x] != r.class_of[x2]) continue;
      for (Elem y = 0; y < m.size(); ++y)
        for (Elem y2 = 0; y2 < m.size(); ++y2) {
          if (r.class_of[y] != r.class_of[y2]) continue;
          EXPECT_EQ(r.class_of[m.join(x, y)], r.class_of[m.join(x2, y2)]);
          EXPECT_EQ(fix.dist.at(x, y), fix.dist.at(x2, y2));
        }
    }

  // descended metric equals the distance of the induced length
  EXPECT_EQ(r.metric.cells,
            distance_table(r.quotient, r.induced_length, DistKind::d).cells);
  EXPECT_EQ(r.induced_length.mode, LengthMode::monotone);

  // projection is a monoid homomorphism
  for (Elem x = 0; x < m.size(); ++x)
    for (Elem y = 0; y < m.size(); ++y)
      EXPECT_EQ(r.class_of[m.join(x, y)], r.quotient.join(r.class_of[x], r.class_of[y]));
}

TEST(Quotient, InducedMetricSatisfiesBothInequalities) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = corpus::random_monotone_instance(seed + 1000);
    const auto fix = ideal_length(inst.monoid, inst.length, FixVariant::d);
    const auto q = quotient(inst.monoid, fix.dist);
    ASSERT_TRUE(q.ok()) << "seed " << seed;
    EXPECT_TRUE(check_delta_table(q->metric, Rat(0)).holds()) << "seed " << seed;
    EXPECT_TRUE(check_nabla_table(q->quotient, q->metric, Rat(0)).holds()) << "seed " << seed;
    EXPECT_TRUE(validate_monoid(spec_of(q->quotient)).ok()) << "seed " << seed;
  }
}

TEST(Quotient, SecondQuotientIsTrivial) {
  const auto fb = corpus::fix_bad();
  const auto fix = ideal_length(fb.monoid, fb.length, FixVariant::d);
  const auto q1 = quotient(fb.monoid, fix.dist);
  ASSERT_TRUE(q1.ok());
  const auto q2 = quotient(q1->quotient, q1->metric);
  ASSERT_TRUE(q2.ok());
  EXPECT_EQ(q2->quotient.size(), q1->quotient.size());
  for (Elem c = 0; c < q1->quotient.size(); ++c) EXPECT_EQ(q2->class_of[c], c);
}

TEST(Quotient, RepresentativesAreLexicographicallyLeast) {
  const auto fb = corpus::fix_bad();
  const auto fix = ideal_length(fb.monoid, fb.length, FixVariant::d);
  const auto q = quotient(fb.monoid, fix.dist);
  ASSERT_TRUE(q.ok());
  for (Elem c = 0; c < q->quotient.size(); ++c) {
    const std::string& rep = fb.monoid.label(q->representative[c]);
    for (Elem x = 0; x < fb.monoid.size(); ++x)
      if (q->class_of[x] == c) {
        EXPECT_LE(rep, fb.monoid.label(x));
      }
  }
}
