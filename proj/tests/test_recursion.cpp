#include <gtest/gtest.h>

#include "support.hpp"

using namespace m0n;

namespace {

const RepTable& table12() {
  static const RepTable t = [] {
    PlethysmMemo memo;
    return compute_rep_table(12, 10, {1, &memo});
  }();
  return t;
}

IntSym h(Partition lam, int t, const RepTable& tab) { return IntSym::monomial(Basis::H, tab.cap_n, tab.cap_k, lam, t); }

IntSym poly_h(std::vector<int> ts, Partition lam, const RepTable& tab) {
  IntSym out = tab.zero();
  for (int t : ts) out += h(lam, t, tab);
  return out;
}

}  // namespace

TEST(Recursion, QplusLowDegreeTerms) {
  const auto& t = table12();
  EXPECT_EQ(t.qplus[1], h({1}, 0, t));
  EXPECT_TRUE(t.qplus[2].is_zero());
  EXPECT_EQ(t.qplus[3], h({3}, 1, t));
  EXPECT_EQ(t.qplus[4], poly_h({1, 2}, {4}, t));
  EXPECT_EQ(t.qplus[5], h({3, 2}, 2, t) + poly_h({1, 2, 3}, {5}, t));
}

TEST(Recursion, QLowDegreeTerms) {
  const auto& t = table12();
  EXPECT_EQ(t.q[2], h({2}, 0, t));
  EXPECT_EQ(t.q[3], poly_h({0, 1}, {3}, t));
  EXPECT_EQ(t.q[4], poly_h({0, 1, 2}, {4}, t) + h({3, 1}, 1, t));
  EXPECT_EQ(t.q[5], poly_h({0, 1, 2, 3}, {5}, t) + poly_h({1, 2}, {4, 1}, t) + poly_h({1, 2}, {3, 2}, t));
}

TEST(Recursion, PLowDegree) {
  const auto& t = table12();
  EXPECT_EQ(t.p[3], h({3}, 0, t));
  IntSym s4 = to_schur(t.p[4]);
  EXPECT_EQ(s4.coeff(Partition{4}, 0), 1);
  EXPECT_EQ(s4.coeff(Partition{4}, 1), 1);
  for (int n = 3; n <= 12; ++n) EXPECT_EQ(t.p[n].t_slice(0), IntSym::monomial(Basis::H, 12, 0, Partition{n}));
}

TEST(Recursion, ClosedSumsForSmallWeight) {
  const auto& t = table12();
  for (int n = 2; n <= 12; ++n)
    for (int k = 0; k <= std::min(3, n - 2); ++k) {
      if (k >= 1 && n < k + 2) continue;
      IntSym got = t.q[n].t_slice(k).truncated(n, 0);
      EXPECT_EQ(got, oracle::closed_Q(n, k)) << "n=" << n << " k=" << k;
    }
}

TEST(Recursion, RunningProductMatchesPartitionSums) {
  const auto& t = table12();
  PlethysmMemo memo;
  for (int n = 2; n <= 10; ++n) {
    EXPECT_EQ(qplus_by_partitions(t, n, &memo), t.qplus[n]) << n;
    EXPECT_EQ(q_by_partitions(t, n, &memo), t.q[n]) << n;
  }
}

TEST(Recursion, ExponentialIdentityAndLog) {
  const auto& t = table12();
  for (const auto& check : verify_exponential_identity(t)) EXPECT_TRUE(check.holds) << check.name;
  EXPECT_EQ(log_pleth(t.exp_qplus_series()), t.qplus_series());
}

TEST(Recursion, ExponentialIdentityAtTinyCaps) {
  RepTable t = compute_rep_table(1, 1);
  for (const auto& check : verify_exponential_identity(t)) EXPECT_TRUE(check.holds) << check.name;
}

TEST(Recursion, Duality) {
  const auto& t = table12();
  for (int n = 2; n <= 12; ++n)
    for (int k = 0; k <= n - 2; ++k) {
      EXPECT_EQ(t.q[n].t_slice(k), t.q[n].t_slice(n - 2 - k)) << n << "," << k;
    }
  for (int n = 3; n <= 11; ++n)
    for (int k = 0; k <= n - 1; ++k) EXPECT_EQ(t.qplus[n].t_slice(k), t.qplus[n].t_slice(n - 1 - k)) << n;
  for (int n = 3; n <= 12; ++n)
    for (int k = 0; k <= n - 3; ++k) EXPECT_EQ(t.p[n].t_slice(k), t.p[n].t_slice(n - 3 - k)) << n;
}

TEST(Recursion, SchurPositivityAndDomination) {
  const auto& t = table12();
  for (int n = 3; n <= 12; ++n) {
    IntSym qs = to_schur(t.q[n]), ps = to_schur(t.p[n]);
    qs.for_each([&](const Partition& lam, int k, const Integer& c) {
      EXPECT_GT(c, 0) << n << lam.to_string();
      EXPECT_GE(c, ps.coeff(lam, k));
    });
    ps.for_each([&](const Partition&, int, const Integer& c) { EXPECT_GT(c, 0); });
  }
}

TEST(Recursion, VanishingRule) {
  const auto& t = table12();
  for (int n = 2; n <= 10; ++n)
    to_schur(t.q[n]).for_each([&](const Partition& lam, int k, const Integer&) {
      EXPECT_LE(static_cast<int>(lam.length()), k + 1) << n;
      EXPECT_GE(lam.largest(), 3 > n ? n : 3) << n;
    });
}

TEST(Recursion, TruncatedCapsArePrefixes) {
  const auto& big = table12();
  RepTable small = compute_rep_table(9, 3);
  for (int n = 2; n <= 9; ++n) {
    EXPECT_EQ(small.q[n], big.q[n].truncated(9, 3)) << n;
    EXPECT_EQ(small.qplus[n], big.qplus[n].truncated(9, 3)) << n;
    if (n >= 3) {
      EXPECT_EQ(small.p[n], big.p[n].truncated(9, 3)) << n;
    }
  }
}

TEST(Recursion, ParallelWorkersAgree) {
  PlethysmMemo memo;
  RepTable par = compute_rep_table(11, 9, {4, &memo});
  for (int n = 2; n <= 11; ++n) EXPECT_EQ(par.q[n], table12().q[n].truncated(11, 9));
}

TEST(Recursion, QFromQplusDetectsTampering) {
  RepTable t = compute_rep_table(7, 5);
  t.q[6].add_term(Partition{6}, 1, Integer(1));
  EXPECT_THROW(q_from_qplus(t), IntegrityError);
}
