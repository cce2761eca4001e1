#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace m0n;

namespace {

IntSym h(Partition lam, int cap_n, int cap_k = 0, int t = 0) { return IntSym::monomial(Basis::H, cap_n, cap_k, lam, t); }

IntSym schur(std::initializer_list<std::pair<Partition, int>> terms, int cap_n) {
  IntSym s(Basis::S, cap_n, 0);
  for (const auto& [lam, c] : terms) s.add_term(lam, 0, Integer(c));
  return s;
}

}  // namespace

TEST(Plethysm, ClassicalSmallCases) {
  EXPECT_EQ(to_schur(h_plethysm(2, h({2}, 4))), schur({{{4}, 1}, {{2, 2}, 1}}, 4));
  EXPECT_EQ(to_schur(h_plethysm(2, h({3}, 6))), schur({{{6}, 1}, {{4, 2}, 1}}, 6));
  EXPECT_EQ(to_schur(h_plethysm(3, h({2}, 6))), schur({{{6}, 1}, {{4, 2}, 1}, {{2, 2, 2}, 1}}, 6));
  EXPECT_EQ(to_schur(e_plethysm(2, h({2}, 4))), schur({{{3, 1}, 1}}, 4));
  IntSym e2 = schur_to_h(Partition{1, 1}, 4, 0);
  EXPECT_EQ(to_schur(h_plethysm(2, e2)), schur({{{2, 2}, 1}, {{1, 1, 1, 1}, 1}}, 4));
  EXPECT_EQ(to_schur(e_plethysm(2, e2)), schur({{{2, 1, 1}, 1}}, 4));
}

TEST(Plethysm, AgreesWithSubstitutionInFourVariables) {
  // h_r o F for Schur-positive F equals h_r evaluated on the monomials of F.
  const int vars = 4;
  std::vector<IntSym> inputs{h({2}, 6), h({2, 1}, 6), h({3}, 6), h({1}, 6) + h({2}, 6)};
  for (const auto& f : inputs)
    for (int r = 1; r <= 3; ++r) {
      if (r * f.max_degree() > 6) continue;
      auto alphabet = oracle::alphabet_of(oracle::eval_h(f, vars));
      EXPECT_EQ(oracle::eval_h(h_plethysm(r, f), vars), oracle::h_in_alphabet(r, alphabet, vars))
          << "r=" << r << " f=" << f.to_string();
    }
}

TEST(Plethysm, TWeightsScale) {
  // h_r o (t^k F) = t^{rk} (h_r o F).
  IntSym f = h({3}, 9, 6);
  for (int r = 1; r <= 3; ++r) EXPECT_EQ(h_plethysm(r, f.times_t(2)), h_plethysm(r, f).times_t(2 * r));
}

TEST(Plethysm, PowerSumSubstitutionComposes) {
  RatSym p = RatSym::monomial(Basis::P, 18, 6, Partition{2, 1}, 1);
  RatSym q = p_substitute(p_substitute(p, 2), 3);
  EXPECT_EQ(q, p_substitute(p, 6));
  EXPECT_EQ(q.coeff(Partition{12, 6}, 6), 1);
}

TEST(Plethysm, AdditiveExpansion) {
  IntSym a = h({1}, 8, 3), b = h({3}, 8, 3, 1);
  for (int r = 1; r <= 3; ++r) {
    IntSym direct = h_plethysm(r, a + b);
    IntSym split(Basis::H, 8, 3);
    for (int i = 0; i <= r; ++i) split += h_plethysm(i, a) * h_plethysm(r - i, b);
    EXPECT_EQ(direct, split) << r;
    EXPECT_EQ(additive_expansion(r, {a, b}), direct);
  }
}

TEST(Plethysm, SignedSquareIsE2) {
  IntSym f = h({2}, 6, 2, 1) + h({1}, 6, 2);
  EXPECT_EQ(sign2_plethysm(f), e_plethysm(2, f));
}

TEST(Plethysm, MemoReturnsIdenticalValues) {
  PlethysmMemo memo;
  IntSym f = h({2, 1}, 9, 3, 1) + h({3}, 9, 3);
  IntSym a = h_plethysm(3, f, &memo);
  IntSym b = h_plethysm(3, f, &memo);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, h_plethysm(3, f));
  EXPECT_GE(memo.size(), 1u);
}

TEST(Plethysm, TruncationCommutes) {
  // (h_r o F) truncated equals h_r o (F truncated), truncated.
  IntSym f = h({1}, 10, 6) + h({3}, 10, 6, 1) + h({4}, 10, 6, 1) + h({4}, 10, 6, 2) + h({5, 2}, 10, 6, 3);
  for (int r = 2; r <= 3; ++r) {
    IntSym big = h_plethysm(r, f).truncated(7, 3);
    IntSym small = h_plethysm(r, f.truncated(7, 3));
    EXPECT_EQ(big, small) << r;
  }
}

TEST(Exp, HomomorphismAndLogInverse) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 6; ++trial) {
    IntSym f(Basis::H, 7, 4), g(Basis::H, 7, 4);
    for (int n = 1; n <= 7; ++n)
      for (const auto& lam : partitions_of(n)) {
        if (lam.length() > 2) continue;
        f.add_term(lam, (n + trial) % 3, Integer(coef(rng)));
        g.add_term(lam, n % 2, Integer(coef(rng)));
      }
    EXPECT_EQ(exp_pleth(f + g), exp_pleth(f) * exp_pleth(g));
    EXPECT_EQ(log_pleth(exp_pleth(f)), f);
  }
}

TEST(Exp, OfH1IsSumOfAllH) {
  IntSym e = exp_pleth(h({1}, 6));
  IntSym want = IntSym::one(Basis::H, 6, 0);
  for (int n = 1; n <= 6; ++n) want += h({n}, 6);
  EXPECT_EQ(e, want);
}

TEST(Exp, RejectsConstantTerm) {
  EXPECT_THROW(exp_pleth(IntSym::one(Basis::H, 3, 1)), std::invalid_argument);
  EXPECT_THROW(log_pleth(h({1}, 3, 1)), std::invalid_argument);
}

TEST(Plethysm, GeneralCompositionMatchesH) {
  IntSym f = h({2}, 6, 1) + h({1}, 6, 1, 1);
  EXPECT_EQ(plethysm(h({3}, 6, 1), f), h_plethysm(3, f));
  IntSym g = h({2, 1}, 6, 1);
  EXPECT_EQ(plethysm(g, f), h_plethysm(2, f) * f);
}
