#include "infodist/boolexpr.hpp"

#include <gtest/gtest.h>

#include <random>

#include "corpus.hpp"
#include "infodist/checks.hpp"
#include "infodist/set_model.hpp"

using namespace infodist;

using corpus::random_expr;

TEST(Parser, BasicShapes) {
  const Monoid m = free_semilattice(2);
  const BoolExpr a = parse_bool_expr("{1} & {2}", m);
  EXPECT_EQ(a.kind, BoolExpr::Kind::intersection);
  ASSERT_EQ(a.children.size(), 2u);
  EXPECT_EQ(a.children[0].atom_elem, m.elem("{1}"));

  const BoolExpr b = parse_bool_expr("{1} \\ ({2} | {1,2})", m);
  EXPECT_EQ(b.kind, BoolExpr::Kind::difference);
  EXPECT_EQ(b.children[1].kind, BoolExpr::Kind::set_union);

  const BoolExpr c = parse_bool_expr("~{1}", m);
  EXPECT_EQ(c.kind, BoolExpr::Kind::complement);

  const BoolExpr d = parse_bool_expr("0 | 1", m);
  EXPECT_EQ(d.children[0].kind, BoolExpr::Kind::zero);
  EXPECT_EQ(d.children[1].kind, BoolExpr::Kind::one);
}

TEST(Parser, PrecedenceComplementIntersectionDifferenceUnion) {
  const Monoid m = free_semilattice(2);
  // ~a & b \ c | d parses as ((~a & b) \ c) | d
  const BoolExpr e = parse_bool_expr("~{1} & {2} \\ {1,2} | {}", m);
  EXPECT_EQ(e.kind, BoolExpr::Kind::set_union);
  EXPECT_EQ(e.children[0].kind, BoolExpr::Kind::difference);
  EXPECT_EQ(e.children[0].children[0].kind, BoolExpr::Kind::intersection);
  EXPECT_EQ(e.children[0].children[0].children[0].kind, BoolExpr::Kind::complement);
}

TEST(Parser, ErrorsCarryPositions) {
  const Monoid m = free_semilattice(2);
  try {
    parse_bool_expr("{1} & ", m);
    FAIL() << "expected syntax error";
  } catch (const ExprError& e) {
    EXPECT_EQ(e.kind, ExprError::Kind::syntax);
    EXPECT_EQ(e.position, 6u);
  }
  try {
    parse_bool_expr("{1} & {7}", m);
    FAIL() << "expected unknown element";
  } catch (const ExprError& e) {
    EXPECT_EQ(e.kind, ExprError::Kind::unknown_element);
    EXPECT_EQ(e.position, 6u);
  }
  EXPECT_THROW(parse_bool_expr("({1} & {2}", m), ExprError);
  EXPECT_THROW(parse_bool_expr("{1} {2}", m), ExprError);
}

TEST(Zeta, FixP2Examples) {
  const auto inst = corpus::fix_p2();
  const Monoid& m = inst.monoid;
  EXPECT_EQ(zeta(m, inst.length, "{1} & {2}"), Rat(0));
  EXPECT_EQ(zeta(m, inst.length, "{1,2} \\ {2}"), Rat(1));
  EXPECT_EQ(zeta(m, inst.length, "~{2}"), -inst.length.values[m.elem("{2}")]);
  EXPECT_EQ(zeta(m, inst.length, "{1} | {2}"), Rat(2));
  EXPECT_EQ(zeta(m, inst.length, "0"), Rat(0));
  EXPECT_EQ(zeta(m, inst.length, "1"), Rat(0));
}

TEST(Zeta, UnionIdempotenceAndComplementNegation) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto inst = corpus::random_monotone_instance(seed + 60);
    const Monoid& m = inst.monoid;
    for (Elem x = 0; x < m.size(); ++x) {
      const BoolExpr a = BoolExpr::atom(x);
      EXPECT_EQ(zeta(m, inst.length, BoolExpr::set_union(a, a)), zeta(m, inst.length, a));
      EXPECT_EQ(zeta(m, inst.length, BoolExpr::complement(a)), -zeta(m, inst.length, a));
    }
  }
}

TEST(Zeta, SignedMeasureSuite) {
  const auto p2 = corpus::fix_p2();
  const auto rep = check_signed_measure(p2.monoid, p2.length);
  EXPECT_TRUE(rep.ok) << (rep.failures.empty() ? "" : rep.failures.front());
  EXPECT_GT(rep.checked, 0u);

  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto inst = corpus::random_monotone_instance(seed + 77);
    const auto r = check_signed_measure(inst.monoid, inst.length);
    EXPECT_TRUE(r.ok) << "seed " << seed << ": "
                      << (r.failures.empty() ? "" : r.failures.front());
  }
}

TEST(Zeta, SignedMeasureHoldsForNonmonotoneLengths) {
  const Monoid m = free_semilattice(2);
  const auto lr = validate_length(m, std::vector<Rat>{Rat(0), Rat(3), Rat(1), Rat(2)}, LengthMode::nonmonotone);
  ASSERT_TRUE(lr.ok());
  const auto rep = check_signed_measure(m, *lr);
  EXPECT_TRUE(rep.ok) << (rep.failures.empty() ? "" : rep.failures.front());
}

TEST(Zeta, PositivityForMonotoneLengthsOnAtoms) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = corpus::random_monotone_instance(seed + 88);
    const Monoid& m = inst.monoid;
    for (Elem x = 0; x < m.size(); ++x)
      for (Elem y = 0; y < m.size(); ++y) {
        const BoolExpr ax = BoolExpr::atom(x), ay = BoolExpr::atom(y);
        EXPECT_GE(zeta(m, inst.length, BoolExpr::intersection(ax, ay)), Rat(0));
        EXPECT_GE(zeta(m, inst.length, BoolExpr::set_union(ax, ay)), Rat(0));
        EXPECT_GE(zeta(m, inst.length, BoolExpr::difference(ax, ay)), Rat(0));
      }
  }
}

TEST(Zeta, ConfluenceOfNormalizationStrategies) {
  std::mt19937_64 rng(2024);
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const auto inst = corpus::random_monotone_instance(seed + 99);
    std::vector<Elem> atoms;
    for (Elem e = 0; e < std::min<std::size_t>(inst.monoid.size(), 4); ++e) atoms.push_back(e);
    for (int rep = 0; rep < 20; ++rep) {
      const BoolExpr e = random_expr(atoms, rng, 4);
      EXPECT_EQ(zeta(inst.monoid, inst.length, e),
                zeta_by_cofactors(inst.monoid, inst.length, e))
          << "seed " << seed << " rep " << rep;
    }
  }
}

TEST(Zeta, RedundantAtomPaddingIsInvariant) {
  const auto fb = corpus::fix_bad();
  const Monoid& m = fb.monoid;
  const BoolExpr e = parse_bool_expr("{1} & {2}", m);
  const BoolExpr padded = parse_bool_expr("({1} & {2}) & ({3} | ~{3})", m);
  EXPECT_EQ(zeta(m, fb.length, e), zeta(m, fb.length, padded));
}

TEST(DisjointNormalForm, TermsAreDisjointAndReexpandToTheInput) {
  const Monoid m = free_semilattice(3);
  const std::vector<std::string> exprs = {
      "{1} | {2} & {3}", "({1} \\ {2}) | ~{3}", "~({1} & {2}) \\ {3}", "{1} & ~{1}",
      "({1} | {2}) & ({2} | {3})"};
  for (const auto& text : exprs) {
    const BoolExpr e = parse_bool_expr(text, m);
    const std::vector<Elem> atoms = expr_atoms(e);
    const auto terms = disjoint_normal_form(e);
    // each term's positive/negative atom sets are disjoint
    for (const auto& t : terms)
      for (Elem p : t.positives)
        EXPECT_EQ(std::count(t.negatives.begin(), t.negatives.end(), p), 0);
    // terms evaluate as pairwise disjoint minterms and cover the truth table
    const std::uint32_t count = 1u << atoms.size();
    for (std::uint32_t mask = 0; mask < count; ++mask) {
      int sat = 0;
      for (const auto& t : terms) {
        bool match = true;
        for (std::size_t i = 0; i < atoms.size() && match; ++i) {
          const bool bit = (mask >> i) & 1u;
          const bool pos =
              std::count(t.positives.begin(), t.positives.end(), atoms[i]) > 0;
          const bool neg =
              std::count(t.negatives.begin(), t.negatives.end(), atoms[i]) > 0;
          if ((pos && !bit) || (neg && bit)) match = false;
        }
        sat += match;
      }
      EXPECT_LE(sat, 1) << text;  // pairwise disjoint
      EXPECT_EQ(sat == 1, detail::eval_truth(e, atoms, mask)) << text;
    }
  }
}

TEST(Zeta, MatchesSetRealizationOnSupportedExpressions) {
  std::mt19937_64 rng(555);
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto inst = corpus::random_set_instance(seed + 10, 4, 16);
    std::vector<Elem> atoms;
    for (Elem e = 0; e < std::min<std::size_t>(inst.monoid.size(), 4); ++e) atoms.push_back(e);
    int done = 0;
    while (done < 15) {
      const BoolExpr e = random_expr(atoms, rng, 3);
      if (!oracle_supports(e)) continue;
      ++done;
      EXPECT_EQ(zeta(inst.monoid, inst.length, e), oracle_zeta(inst, e)) << "seed " << seed;
    }
  }
}

TEST(Zeta, AtomLimit) {
  const Monoid m = free_semilattice(2);
  // a chain of unions over the same two atoms stays at 2 distinct atoms
  BoolExpr e = BoolExpr::atom(0);
  for (int i = 0; i < 20; ++i) e = BoolExpr::set_union(e, BoolExpr::atom(i % 2));
  EXPECT_NO_THROW(disjoint_normal_form(e));

  // 17 distinct atoms exceed the truth-table cap
  const Monoid big = free_semilattice(5);
  BoolExpr wide = BoolExpr::atom(0);
  for (Elem a = 1; a < 17; ++a) wide = BoolExpr::set_union(wide, BoolExpr::atom(a));
  const LengthFn<Rat> l = random_length_fn(big, 1);
  try {
    zeta(big, l, wide);
    FAIL() << "expected the atom limit to trip";
  } catch (const ExprError& err) {
    EXPECT_EQ(err.kind, ExprError::Kind::too_many_atoms);
  }
  EXPECT_THROW(zeta_by_cofactors(big, l, wide), ExprError);
}

TEST(Zeta, IntersectionMonotonicityMatchesTheInequalityFlag) {
  // the "measure of intersection is increasing" flag of the diagnostic
  // battery must coincide with monotonicity of the two-atom intersection
  // measure evaluated through this module
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const auto inst = corpus::random_monotone_instance(seed + 400);
    const Monoid& m = inst.monoid;
    bool zeta_monotone = true;
    for (Elem a = 0; a < m.size() && zeta_monotone; ++a)
      for (Elem x = 0; x < m.size() && zeta_monotone; ++x) {
        if (!m.leq(a, x)) continue;
        for (Elem b = 0; b < m.size() && zeta_monotone; ++b)
          for (Elem y = 0; y < m.size() && zeta_monotone; ++y) {
            if (!m.leq(b, y)) continue;
            const Rat small = zeta(m, inst.length,
                                   BoolExpr::intersection(BoolExpr::atom(a), BoolExpr::atom(b)));
            const Rat large = zeta(m, inst.length,
                                   BoolExpr::intersection(BoolExpr::atom(x), BoolExpr::atom(y)));
            if (large < small) zeta_monotone = false;
          }
      }
    const auto rep = check_inequalities(m, inst.length);
    EXPECT_EQ(rep.intersection_increasing.holds(), zeta_monotone) << "seed " << seed;
  }
}
