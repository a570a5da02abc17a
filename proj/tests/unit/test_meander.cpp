#include <gtest/gtest.h>

#include "meandric/errors.hpp"
#include "meandric/meander.hpp"

using namespace meandric;

namespace {

// Loop count by walking the 2n crossing points directly: leave each point
// through its upper arc, return through the lower one.
int walk_loops(const NcPartition& alpha, const NcPartition& beta) {
  const int n = alpha.size();
  std::vector<int> up(2 * n), down(2 * n);
  for (int i = 1; i <= n; ++i) {
    up[2 * i - 1] = 2 * (alpha.apply(i) - 1);
    up[2 * (alpha.apply(i) - 1)] = 2 * i - 1;
    down[2 * i - 1] = 2 * (beta.apply(i) - 1);
    down[2 * (beta.apply(i) - 1)] = 2 * i - 1;
  }
  std::vector<bool> seen(2 * n, false);
  int loops = 0;
  for (int s = 0; s < 2 * n; ++s) {
    if (seen[s]) continue;
    ++loops;
    int x = s;
    do {
      seen[x] = true;
      seen[up[x]] = true;
      x = down[up[x]];
    } while (x != s);
  }
  return loops;
}

}  // namespace

TEST(LoopCount, AlgebraicAndGeometricAgree) {
  for (int n = 1; n <= 6; ++n) {
    const auto all = enumerate_nc(n);
    for (const auto& a : all)
      for (const auto& b : all) {
        const int k = loop_count_algebraic(a, b);
        ASSERT_EQ(k, loop_count_geometric(a, b));
        ASSERT_EQ(k, walk_loops(a, b));
        ASSERT_EQ(MeandricSystem(a, b).loops(), k);
      }
  }
}

TEST(LoopCount, DrawnExamples) {
  // One meander on six points.
  EXPECT_EQ(loop_count_algebraic(parse_cycles("(2,3)", 3),
                                 parse_cycles("(1,2)", 3)),
            1);
  // n = 2: equal trivial partitions give two circles.
  const auto zero = NcPartition::zero(2);
  const auto one = NcPartition::one(2);
  EXPECT_EQ(loop_count_algebraic(zero, zero), 2);
  EXPECT_EQ(loop_count_algebraic(one, one), 2);
  // (12) against 0_2: one loop through all four points.
  const auto loops = trace_loops(one, zero);
  ASSERT_EQ(loops.size(), 1u);
  EXPECT_EQ(loops[0].size(), 4u);
}

TEST(LoopCount, TracedLoopsPartitionThePoints) {
  for (const auto& a : enumerate_nc(5))
    for (const auto& b : enumerate_nc(5)) {
      std::vector<int> hits(10, 0);
      for (const auto& loop : trace_loops(a, b))
        for (int label : loop) ++hits[label];
      for (int h : hits) ASSERT_EQ(h, 1);
    }
}

TEST(BruteMeanders, SmallTables) {
  using Table = std::map<int, std::uint64_t>;
  EXPECT_EQ(brute_meander_counts(1), (Table{{1, 1}}));
  EXPECT_EQ(brute_meander_counts(2), (Table{{1, 2}, {2, 2}}));
  EXPECT_EQ(brute_meander_counts(3), (Table{{1, 8}, {2, 12}, {3, 5}}));
}

TEST(BruteMeanders, AgreesWithIndependentWalk) {
  for (int n = 1; n <= 6; ++n) {
    std::map<int, std::uint64_t> expected;
    const auto all = enumerate_nc(n);
    for (const auto& a : all)
      for (const auto& b : all) ++expected[walk_loops(a, b)];
    EXPECT_EQ(brute_meander_counts(n), expected) << "n=" << n;
    EXPECT_EQ(brute_meander_counts(n, 3), expected) << "n=" << n;
  }
}

TEST(BruteMeanders, TotalsAndExtremes) {
  for (int n = 1; n <= 7; ++n) {
    const auto counts = brute_meander_counts(n);
    std::uint64_t total = 0;
    for (const auto& [k, c] : counts) total += c;
    EXPECT_EQ(total, catalan_number(n) * catalan_number(n));
    EXPECT_EQ(counts.at(n), catalan_number(n));  // n loops: alpha = beta
    if (n >= 2) EXPECT_EQ(counts.at(1) % 2, 0u);
  }
  EXPECT_THROW(brute_meander_counts(kMaxBruteMeanderN + 1), SizeLimitError);
}

TEST(Statistics, Definitions) {
  const auto a = parse_cycles("(1,2)(3,4)", 4);
  const auto b = parse_cycles("(1,4)(2,3)", 4);
  EXPECT_TRUE(is_irreducible(a, b));
  EXPECT_EQ(stats_I(a, b), (StatQuadruple{4, 2, 2, 2}));
  EXPECT_EQ(stats_K(a, b), (StatQuadruple{4, 2, 1, 1}));
  EXPECT_EQ(stats_M(a, b), (StatQuadruple{4, 2, 1, 1}));
  EXPECT_FALSE(stats_K(a, a).has_value());
  EXPECT_FALSE(is_irreducible(a, a));
}

TEST(Statistics, DefectIsNMinusLoops) {
  for (const auto& a : enumerate_nc(5))
    for (const auto& b : enumerate_nc(5)) {
      EXPECT_EQ(stats_M(a, b).r, 5 - loop_count_algebraic(a, b));
    }
}

TEST(Compatibility, Conditions) {
  EXPECT_TRUE(is_compatible(1, 0, 0, 0));
  EXPECT_TRUE(is_compatible(2, 1, 1, 0));
  EXPECT_TRUE(is_compatible(3, 2, 1, 1));
  EXPECT_FALSE(is_compatible(3, 2, 1, 0));   // parity
  EXPECT_FALSE(is_compatible(3, 2, 3, 1));   // a above 2r-2
  EXPECT_TRUE(is_compatible(4, 2, 2, 0));
  EXPECT_FALSE(is_compatible(5, 2, 2, 0));   // n above 2r
  EXPECT_FALSE(is_compatible(2, 2, 2, 0));   // n below r+1
  EXPECT_FALSE(is_compatible(5, 3, 4, 1));   // r = |a-b| needs min(a,b)=0
  EXPECT_TRUE(is_compatible(5, 4, 4, 0));
  EXPECT_FALSE(is_compatible(5, 4, 1, 1));   // r > a+b
  EXPECT_FALSE(is_compatible(2, 0, 0, 0));   // r = 0 only on one point
}

TEST(Compatibility, EveryIrreducibleStatisticIsCompatible) {
  for (int n = 1; n <= 7; ++n) {
    for (const auto& [t, count] : brute_set_counts(n, SetKind::I)) {
      EXPECT_TRUE(is_compatible(n, t.r, t.a, t.b))
          << n << ' ' << t.r << ' ' << t.a << ' ' << t.b;
    }
  }
}

TEST(BruteSets, KnownValues) {
  for (int n = 1; n <= 6; ++n) {
    EXPECT_EQ(brute_set_counts(n, SetKind::K).at({0, 0, 0}), 1u) << n;
  }
  // Defect 2 at n = 3 means a single loop: all eight meanders.
  std::uint64_t r2 = 0;
  for (const auto& [t, c] : brute_set_counts(3, SetKind::M))
    if (t.r == 2) r2 += c;
  EXPECT_EQ(r2, 8u);
}

TEST(BruteSets, SymmetricUnderSwap) {
  for (auto kind : {SetKind::I, SetKind::K, SetKind::M}) {
    const auto counts = brute_set_counts(6, kind);
    for (const auto& [t, c] : counts) {
      const auto it = counts.find({t.r, t.b, t.a});
      ASSERT_NE(it, counts.end());
      EXPECT_EQ(it->second, c);
    }
  }
}

TEST(BruteSets, WorkerCountDoesNotMatter) {
  EXPECT_EQ(brute_set_counts(6, SetKind::M, 1),
            brute_set_counts(6, SetKind::M, 4));
  EXPECT_THROW(brute_set_counts(kMaxBruteSetN + 1, SetKind::I),
               SizeLimitError);
}
