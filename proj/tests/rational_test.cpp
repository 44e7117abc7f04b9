#include "infodist/rational.hpp"

#include <gtest/gtest.h>

#include <limits>

using infodist::Ext;
using infodist::Rat;

TEST(Rat, NormalizesOnConstruction) {
  EXPECT_EQ(Rat(6, 4), Rat(3, 2));
  EXPECT_EQ(Rat(-6, 4), Rat(-3, 2));
  EXPECT_EQ(Rat(6, -4), Rat(-3, 2));
  EXPECT_EQ(Rat(0, 7), Rat(0));
  EXPECT_EQ(Rat(5, 5), Rat(1));
}

TEST(Rat, Arithmetic) {
  EXPECT_EQ(Rat(1, 2) + Rat(1, 3), Rat(5, 6));
  EXPECT_EQ(Rat(1, 2) - Rat(1, 3), Rat(1, 6));
  EXPECT_EQ(Rat(2, 3) * Rat(3, 4), Rat(1, 2));
  EXPECT_EQ(Rat(1, 2) / Rat(1, 4), Rat(2));
  EXPECT_EQ(-Rat(1, 2), Rat(-1, 2));
  EXPECT_THROW(Rat(1) / Rat(0), std::domain_error);
  EXPECT_THROW(Rat(1, 0), std::domain_error);
}

TEST(Rat, Comparisons) {
  EXPECT_LT(Rat(1, 3), Rat(1, 2));
  EXPECT_LT(Rat(-1, 2), Rat(-1, 3));
  EXPECT_LE(Rat(2, 4), Rat(1, 2));
  EXPECT_GT(Rat(7, 6), Rat(1));
  EXPECT_EQ(infodist::vmin(Rat(1, 3), Rat(1, 2)), Rat(1, 3));
  EXPECT_EQ(infodist::vmax(Rat(1, 3), Rat(1, 2)), Rat(1, 2));
  EXPECT_EQ(infodist::abs(Rat(-5, 3)), Rat(5, 3));
}

TEST(Rat, ParseAndPrint) {
  EXPECT_EQ(Rat::parse("3/4"), Rat(3, 4));
  EXPECT_EQ(Rat::parse("-3/4"), Rat(-3, 4));
  EXPECT_EQ(Rat::parse("17"), Rat(17));
  EXPECT_EQ(Rat(3, 4).to_string(), "3/4");
  EXPECT_EQ(Rat(-8, 2).to_string(), "-4");
  EXPECT_EQ(Rat::parse(Rat(22, 7).to_string()), Rat(22, 7));
  EXPECT_THROW(Rat::parse(""), std::invalid_argument);
  EXPECT_THROW(Rat::parse("1.5"), std::invalid_argument);
  EXPECT_THROW(Rat::parse("x/2"), std::invalid_argument);
}

TEST(Rat, OverflowThrows) {
  const Rat big(std::numeric_limits<std::int64_t>::max());
  EXPECT_THROW(big * big, std::overflow_error);
  EXPECT_THROW(big + big, std::overflow_error);
  // reductions that land back in range are fine
  EXPECT_EQ(Rat(1, 3) * Rat(3), Rat(1));
}

TEST(ExtValue, OrderingAndArithmetic) {
  const Ext<Rat> inf = Ext<Rat>::inf();
  EXPECT_LT(Ext<Rat>(Rat(5)), inf);
  EXPECT_FALSE(inf < inf);
  EXPECT_EQ(inf, Ext<Rat>::inf());
  EXPECT_EQ(Ext<Rat>(Rat(2)) * Ext<Rat>(Rat(3, 2)), Ext<Rat>(Rat(3)));
  EXPECT_EQ(inf * Ext<Rat>(Rat(2)), inf);
  EXPECT_EQ(inf * Ext<Rat>(Rat(0)), Ext<Rat>(Rat(0)));
  EXPECT_EQ((inf + Ext<Rat>(Rat(1))), inf);
  EXPECT_EQ(infodist::min(inf, Ext<Rat>(Rat(7))), Ext<Rat>(Rat(7)));
  EXPECT_EQ(inf.to_string(), "inf");
}
