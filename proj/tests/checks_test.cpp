#include "infodist/checks.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "corpus.hpp"
#include "infodist/closures.hpp"
#include "infodist/fixpoint.hpp"

using namespace infodist;

TEST(CheckInequalities, SetModelHasAllFlags) {
  const auto inst = corpus::fix_p2();
  const auto rep = check_inequalities(inst.monoid, inst.length);
  EXPECT_FALSE(rep.sampled);
  EXPECT_TRUE(rep.all_six_hold());
  EXPECT_TRUE(rep.delta_d.holds());
  EXPECT_TRUE(rep.nabla_d.holds());
  EXPECT_TRUE(rep.second_delta_d.holds());
  EXPECT_TRUE(rep.weak_nabla_d.holds());
}

TEST(CheckInequalities, FixBadFailsEverythingWithWitnesses) {
  const auto fb = corpus::fix_bad();
  const auto rep = check_inequalities(fb.monoid, fb.length);
  EXPECT_TRUE(rep.all_six_fail());
  EXPECT_TRUE(rep.delta_d.fails());

  // the triangle witness must re-evaluate to a violation
  const auto& w = rep.delta_d.witness;
  ASSERT_EQ(w.size(), 3u);
  const Rat xz = d_of(fb.monoid, fb.length, w[0], w[2]);
  const Rat xy = d_of(fb.monoid, fb.length, w[0], w[1]);
  const Rat yz = d_of(fb.monoid, fb.length, w[1], w[2]);
  EXPECT_LT(xy + yz, xz);

  // and the canonical singleton triple is itself a violation
  const Elem x = fb.monoid.elem("{1}"), y = fb.monoid.elem("{2}"), z = fb.monoid.elem("{3}");
  EXPECT_LT(d_of(fb.monoid, fb.length, x, y) + d_of(fb.monoid, fb.length, y, z),
            d_of(fb.monoid, fb.length, x, z));
}

TEST(CheckInequalities, SixFlagsAgreeOnRandomInstances) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto inst = corpus::random_monotone_instance(seed);
    const auto rep = check_inequalities(inst.monoid, inst.length);
    const bool first = rep.very_weak_nabla_d.holds();
    for (const IneqFlag* f : rep.six_flags())
      EXPECT_EQ(f->holds(), first) << "seed " << seed;
    // any of the six implies the triangle inequality for d
    if (first) {
      EXPECT_TRUE(rep.delta_d.holds()) << "seed " << seed;
    }
    // join-compatibility for d implies everything
    if (rep.nabla_d.holds()) {
      EXPECT_TRUE(rep.all_six_hold()) << "seed " << seed;
    }
  }
}

TEST(CheckInequalities, SigmaTriangleMatchesLengthCriterion) {
  // sigma satisfies the triangle inequality exactly when
  // l(x v z) + l(y) <= l(x v y) + l(y v z) for all triples
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    const auto inst = corpus::random_monotone_instance(seed);
    const Monoid& m = inst.monoid;
    const auto& l = inst.length.values;
    bool criterion = true;
    for (Elem x = 0; x < m.size() && criterion; ++x)
      for (Elem y = 0; y < m.size() && criterion; ++y)
        for (Elem z = 0; z < m.size() && criterion; ++z)
          if (l[m.join(x, y)] + l[m.join(y, z)] < l[m.join(x, z)] + l[y]) criterion = false;
    const auto rep = check_inequalities(m, inst.length);
    EXPECT_EQ(rep.delta_sigma.holds(), criterion) << "seed " << seed;
  }
}

TEST(CheckInequalities, NonmonotoneModeSkipsMonotoneFlags) {
  const Monoid m = free_semilattice(2);
  std::vector<Rat> v = {Rat(0), Rat(3), Rat(1), Rat(2)};
  const auto res = validate_length(m, v, LengthMode::nonmonotone);
  ASSERT_TRUE(res.ok());
  const auto rep = check_inequalities(m, *res);
  EXPECT_EQ(rep.delta_increasing.state, FlagState::skipped);
  EXPECT_EQ(rep.intersection_increasing.state, FlagState::skipped);
  EXPECT_EQ(rep.delta_sigma.state, FlagState::skipped);
  EXPECT_EQ(rep.nabla_sigma.state, FlagState::skipped);
  EXPECT_NE(rep.delta_d.state, FlagState::skipped);
  EXPECT_NE(rep.nabla_d.state, FlagState::skipped);
  EXPECT_NE(rep.very_weak_nabla_d.state, FlagState::skipped);
  EXPECT_NE(rep.very_weak_nabla_sigma.state, FlagState::skipped);
}

TEST(CheckInequalities, JobCountDoesNotChangeTheReport) {
  const auto fb = corpus::fix_bad();
  CheckOptions one;
  one.jobs = 1;
  CheckOptions four;
  four.jobs = 4;
  const auto a = check_inequalities(fb.monoid, fb.length, one);
  const auto b = check_inequalities(fb.monoid, fb.length, four);
  EXPECT_EQ(a.delta_d.witness, b.delta_d.witness);
  EXPECT_EQ(a.nabla_sigma.witness, b.nabla_sigma.witness);
  EXPECT_EQ(a.delta_increasing.witness, b.delta_increasing.witness);
}

TEST(CheckInequalities, SampledModeAboveThreshold) {
  const Monoid m = free_semilattice(3);  // 8 elements, force sampling via low threshold
  const LengthFn<Rat> l = random_length_fn(m, 4);
  CheckOptions opt;
  opt.exhaustive_threshold = 4;
  opt.samples = 2000;
  opt.seed = 9;
  const auto a = check_inequalities(m, l, opt);
  const auto b = check_inequalities(m, l, opt);
  EXPECT_TRUE(a.sampled);
  EXPECT_EQ(a.delta_d.state, b.delta_d.state);
  EXPECT_EQ(a.delta_d.witness, b.delta_d.witness);
  // sampling never reports a false violation
  const auto exact = check_inequalities(m, l);
  if (a.delta_d.fails()) {
    EXPECT_TRUE(exact.delta_d.fails());
  }
}

TEST(RawTableChecks, SecondTriangleFollowsFromTriangle) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = corpus::random_monotone_instance(seed);
    const auto t = distance_table(inst.monoid, inst.length, DistKind::d);
    if (check_delta_table(t, Rat(0)).holds()) {
      EXPECT_TRUE(check_second_delta_table(t, Rat(0)).holds()) << "seed " << seed;
    }
  }
}

TEST(FloatFallback, ToleranceAbsorbsRoundoff) {
  // the double instantiation compares with absolute slack, so length values
  // carrying sub-tolerance noise still pass the laws they satisfy exactly
  const Monoid m = free_semilattice(2);
  const std::vector<double> noisy = {0.0, 1.0 + 2e-10, 1.0 - 3e-10, 2.0 + 1e-10};
  const auto lr = validate_length(m, noisy, LengthMode::monotone);
  ASSERT_TRUE(lr.ok());
  const auto rep = check_inequalities(m, *lr);
  EXPECT_TRUE(rep.all_six_hold());
  EXPECT_TRUE(rep.delta_d.holds());
  EXPECT_TRUE(rep.nabla_d.holds());
}

TEST(FloatFallback, IrrationalLengthsCloseAndConverge) {
  const Monoid m = free_semilattice(2);
  const double r = std::sqrt(2.0);
  const auto lr = validate_length(m, std::vector<double>{0.0, r, r, 2.0},
                                  LengthMode::monotone);
  ASSERT_TRUE(lr.ok());
  const auto t = distance_table(m, *lr, DistKind::d);
  const auto closed = delta_nabla_closure(m, t);
  EXPECT_TRUE(check_delta_table(closed).holds());
  EXPECT_TRUE(check_nabla_table(m, closed).holds());
  FixpointOptions<double> opt;  // default tol 1e-9
  const auto res = ideal_length(m, *lr, FixVariant::d, opt);
  EXPECT_TRUE(res.converged);
  EXPECT_TRUE(check_delta_table(res.dist).holds());
  EXPECT_TRUE(check_nabla_table(m, res.dist).holds());
}

TEST(RawTableChecks, WitnessesReevaluate) {
  const auto fb = corpus::fix_bad();
  const auto t = distance_table(fb.monoid, fb.length, DistKind::d);
  const auto f = check_delta_table(t, Rat(0));
  ASSERT_TRUE(f.fails());
  EXPECT_LT(t.at(f.witness[0], f.witness[1]) + t.at(f.witness[1], f.witness[2]),
            t.at(f.witness[0], f.witness[2]));
  const auto nf = check_nabla_table(fb.monoid, t, Rat(0));
  ASSERT_TRUE(nf.fails());
  const Elem x = nf.witness[0], y = nf.witness[1], a = nf.witness[2], b = nf.witness[3];
  EXPECT_LT(t.at(x, a) + t.at(y, b), t.at(fb.monoid.join(x, y), fb.monoid.join(a, b)));
}
