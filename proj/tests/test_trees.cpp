#include <gtest/gtest.h>

#include <map>
#include <set>

#include "support.hpp"

using namespace m0n;

namespace {

IntSym h(Partition lam, int cap_n) { return IntSym::monomial(Basis::H, cap_n, 0, lam); }

/// Brute-force count of T_{n,k}: every rooted tree shape with positive-weight non-root
/// vertices, by direct recursion on (inputs at root, weight at root, multiset of subtrees)
/// where subtrees are counted, not built.
long brute_positive(int n, int k);
long brute_all(int n, int k, bool positive) {
  if (n < 2 || k < 0) return 0;
  // Count multisets of positive subtrees with total (rest_n, rest_k) and r members via
  // generating-function style dynamic programming over (size, weight) kinds.
  long total = 0;
  for (int a = 0; a <= n; ++a) {
    int rn = n - a;
    // dp[x][y][r]: multisets using kinds processed so far.
    std::vector<std::vector<std::vector<long>>> dp(rn + 1, std::vector<std::vector<long>>(k + 1, std::vector<long>(rn + 1, 0)));
    dp[0][0][0] = 1;
    for (int cn = 3; cn <= rn; ++cn)
      for (int ck = 1; ck <= k; ++ck) {
        if (cn == n && ck == k) continue;
        long kinds = brute_positive(cn, ck);
        if (!kinds) continue;
        auto next = dp;
        for (int x = 0; x <= rn; ++x)
          for (int y = 0; y <= k; ++y)
            for (int r = 0; r <= rn; ++r) {
              if (!dp[x][y][r]) continue;
              // choose m >= 1 copies with repetition among `kinds` trees: binom(kinds + m - 1, m)
              for (int m = 1; x + m * cn <= rn && y + m * ck <= k && r + m <= rn; ++m) {
                long ways = 1;
                for (int i = 0; i < m; ++i) ways = ways * (kinds + i) / (i + 1);
                next[x + m * cn][y + m * ck][r + m] += dp[x][y][r] * ways;
              }
            }
        dp = std::move(next);
      }
    for (int b = positive ? 1 : 0; b <= k; ++b)
      for (int r = 0; r <= rn; ++r)
        if (b <= a + r - 2) total += dp[rn][k - b][r];
  }
  return total;
}
long brute_positive(int n, int k) {
  static std::map<std::pair<int, int>, long> memo;
  if (n < 3 || k < 1) return 0;
  auto it = memo.find({n, k});
  if (it != memo.end()) return it->second;
  long v = brute_all(n, k, true);
  memo[{n, k}] = v;
  return v;
}

}  // namespace

TEST(Trees, EmptyAndWeightZeroCases) {
  EXPECT_TRUE(enumerate_trees(0, 0).empty());
  EXPECT_TRUE(enumerate_trees(1, 3).empty());
  for (int n = 2; n <= 10; ++n) {
    auto ts = enumerate_trees(n, 0);
    ASSERT_EQ(ts.size(), 1u);
    EXPECT_TRUE(ts[0].children.empty());
    EXPECT_EQ(ts[0].inputs, n);
    EXPECT_EQ(dim_of_tree(ts[0]), 1);
  }
  EXPECT_EQ(count_trees(5, 1), 3u);
  for (int n = 3; n <= 10; ++n) EXPECT_EQ(enumerate_positive_trees(n, 1).size(), 1u);
}

TEST(Trees, CountsMatchIndependentCounting) {
  for (int n = 2; n <= 11; ++n)
    for (int k = 0; k <= n - 2; ++k) EXPECT_EQ(static_cast<long>(count_trees(n, k)), brute_all(n, k, false)) << n << "," << k;
}

TEST(Trees, NoDuplicatesAndStableRegeneration) {
  for (int n = 2; n <= 10; ++n)
    for (int k = 0; k <= n - 2; ++k) {
      auto a = enumerate_trees(n, k);
      auto b = enumerate_trees(n, k);
      EXPECT_EQ(a, b);
      for (std::size_t i = 1; i < a.size(); ++i) EXPECT_TRUE(a[i - 1] < a[i]);
      for (const auto& t : a) {
        EXPECT_EQ(t.n, n);
        EXPECT_EQ(t.k, k);
        EXPECT_LE(t.weight, t.inputs + static_cast<int>(t.children.size()) - 2);
      }
    }
}

TEST(Trees, Duality) {
  for (int n = 2; n <= 10; ++n)
    for (int k = 0; k <= n - 2; ++k) EXPECT_EQ(count_trees(n, k), count_trees(n, n - 2 - k));
}

TEST(Trees, CharacteristicsOfSmallShapes) {
  const int n = 8;
  auto single = WeightedRootedTree::make(n, 0, {});
  EXPECT_EQ(ch_of_tree(single, n), h({n}, n));
  for (int a = 1; a <= n - 3; ++a) {
    auto child = WeightedRootedTree::make(n - a, 1, {});
    auto two = WeightedRootedTree::make(a, 0, {child});
    EXPECT_EQ(ch_of_tree(two, n), h(Partition::from_unsorted({a, n - a}), n));
  }
  for (int a = 3; 2 * a <= n; ++a) {
    auto child = WeightedRootedTree::make(a, 1, {});
    auto three = WeightedRootedTree::make(n - 2 * a, 0, {child, child});
    IntSym want = h_plethysm(2, h({a}, n));
    if (n > 2 * a) want = mul(want, h({n - 2 * a}, n));
    EXPECT_EQ(ch_of_tree(three, n), want);
  }
}

TEST(Trees, DimensionsAgreeWithRank) {
  RepTable rep = compute_rep_table(8, 6);
  for (int n = 2; n <= 8; ++n)
    for (int k = 0; k <= n - 2; ++k) {
      Integer dims = 0;
      for (const auto& t : enumerate_trees(n, k)) dims += dim_of_tree(t);
      Rational rk = rank_specialize(rep.q[n]).coeff(n, k) * Rational(factorial(n));
      EXPECT_EQ(Rational(dims), rk) << n << "," << k;
    }
  Integer total = 0;
  for (int k = 0; k <= 2; ++k)
    for (const auto& t : enumerate_trees(4, k)) total += dim_of_tree(t);
  EXPECT_EQ(total, 7);
}

TEST(Trees, OracleMatchesRecursion) {
  RepTable rep = compute_rep_table(8, 6);
  PlethysmMemo memo;
  for (int n = 2; n <= 8; ++n)
    for (int k = 0; k <= n - 2; ++k)
      EXPECT_EQ(oracle_Q(n, k, &memo), rep.q[n].t_slice(k).truncated(n, 0)) << n << "," << k;
  EXPECT_EQ(oracle_Q(6, 2), oracle::closed_Q(6, 2));
}

TEST(Trees, MultiplicityBound) {
  // mult_{lambda[n]}(Q_{n,k}) <= dim S^{lambda[n]} * |T_{n,k}| for |lambda| <= 3.
  for (int n = 6; n <= 8; ++n)
    for (int k = 0; k <= n - 2; ++k) {
      IntSym s = to_schur(oracle_Q(n, k));
      for (int d = 0; d <= 3; ++d)
        for (const auto& lam : partitions_of(d)) {
          Partition big = pad(lam, n);
          Integer dim = oracle::character(big, Partition(std::vector<int>(n, 1)));
          EXPECT_LE(s.coeff(big, 0), dim * Integer(static_cast<long>(count_trees(n, k))));
        }
    }
}

TEST(Trees, CayleyStatistics) {
  EXPECT_EQ(cayley_statistics(0), 1);
  EXPECT_EQ(cayley_statistics(1), 1);
  EXPECT_EQ(cayley_statistics(3), 16);
  EXPECT_EQ(cayley_statistics(5), 1296);
  for (int k = 0; k <= 7; ++k) EXPECT_EQ(cayley_statistics(k), Rational(ipow(Integer(k + 1), std::max(k - 1, 0)))) << k;
  // Rooted unlabelled tree counts 1, 1, 2, 4, 9, 20, 48.
  std::vector<std::size_t> counts{1, 1, 2, 4, 9, 20, 48};
  for (int v = 1; v <= 7; ++v) EXPECT_EQ(enumerate_shapes(v).size(), counts[v - 1]);
}

TEST(Trees, JsonDump) {
  auto ts = enumerate_trees(6, 1);
  auto j = ts.back().to_json();
  EXPECT_TRUE(j.contains("children"));
  EXPECT_TRUE(j.contains("inputs"));
}
