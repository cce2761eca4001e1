#pragma once

#include <cmath>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "m0n/arith.hpp"
#include "m0n/invariant.hpp"
#include "m0n/partition.hpp"
#include "m0n/recursion.hpp"
#include "m0n/symfun.hpp"

namespace m0n {

enum class Verdict { Strict, Holds, Fails };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Strict: return "strict";
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
  }
  return "?";
}

/// Outcome of a log-concavity check over the interior indices 1 .. len-2.
/// verdicts[k] is meaningful only for interior k; Holds means equality.
struct ConcavityReport {
  std::string id;
  int n_lo = 0;
  int n_hi = 0;
  std::vector<Verdict> verdicts;
  std::optional<int> first_failure;

  bool holds() const { return !first_failure.has_value(); }
  bool strict_at(int k) const {
    return k >= 1 && k + 1 < static_cast<int>(verdicts.size()) && verdicts[k] == Verdict::Strict;
  }

  nlohmann::json to_json() const {
    nlohmann::json v = nlohmann::json::array();
    for (std::size_t k = 1; k + 1 < verdicts.size(); ++k) v.push_back(verdict_name(verdicts[k]));
    return {{"sequence", id},
            {"n_range", {n_lo, n_hi}},
            {"verdict", holds() ? "holds" : "fails"},
            {"per_k", v},
            {"first_failure", first_failure ? nlohmann::json(*first_failure) : nlohmann::json(nullptr)}};
  }
};

namespace detail {
template <class C>
ConcavityReport log_concave_impl(const std::vector<C>& a, std::string id, int n) {
  ConcavityReport r;
  r.id = std::move(id);
  r.n_lo = r.n_hi = n;
  r.verdicts.assign(a.size(), Verdict::Holds);
  for (std::size_t k = 1; k + 1 < a.size(); ++k) {
    C lhs = a[k] * a[k];
    C rhs = a[k - 1] * a[k + 1];
    Verdict v = lhs > rhs ? Verdict::Strict : lhs == rhs ? Verdict::Holds : Verdict::Fails;
    r.verdicts[k] = v;
    if (v == Verdict::Fails && !r.first_failure) r.first_failure = static_cast<int>(k);
  }
  return r;
}
}  // namespace detail

/// a_k^2 >= a_{k-1} a_{k+1} for every interior k.
inline ConcavityReport check_log_concave(const std::vector<Integer>& a, std::string id = "seq", int n = 0) {
  return detail::log_concave_impl(a, std::move(id), n);
}

/// Log-concavity of a_i / binom(n_binom, i). Entries past n_binom are dropped.
inline ConcavityReport check_ultra_log_concave(const std::vector<Integer>& a, int n_binom, std::string id = "seq",
                                               int n = 0) {
  if (n_binom < 0) throw std::invalid_argument("check_ultra_log_concave: negative binomial length");
  std::vector<Rational> x;
  for (std::size_t i = 0; i < a.size() && static_cast<int>(i) <= n_binom; ++i) {
    Rational v(a[i], binomial(static_cast<unsigned long>(n_binom), i));
    v.canonicalize();
    x.push_back(v);
  }
  return detail::log_concave_impl(x, std::move(id), n);
}

/// Coefficients of row n of a BiSeries as an integer sequence k = 0 .. degree.
inline std::vector<Integer> row_sequence(const IBiSeries& s, int n) { return s.row(n).coeffs(); }

// ---------------------------------------------------------------------------------------------
// Multiplicities

struct MultLcReport {
  Partition lambda;
  ConcavityReport p;
  ConcavityReport q;
  bool holds() const { return p.holds() && q.holds(); }
};

namespace detail {
inline std::vector<Integer> schur_row(const IntSym& s_basis, const Partition& lambda, int cap_k) {
  std::vector<Integer> v(static_cast<std::size_t>(cap_k) + 1);
  for (int k = 0; k <= cap_k; ++k) v[k] = s_basis.coeff(lambda, k);
  while (!v.empty() && vanishes(v.back())) v.pop_back();
  return v;
}
}  // namespace detail

/// Log-concavity of (mult_lambda(P_{n,k}))_k and (mult_lambda(Q_{n,k}))_k.
inline MultLcReport check_mult_lc(const RepTable& table, int n, const Partition& lambda) {
  if (lambda.size() != n) throw std::invalid_argument("check_mult_lc: lambda is not a partition of n");
  MultLcReport r{lambda, {}, {}};
  r.p = check_log_concave(detail::schur_row(to_schur(table.p.at(n)), lambda, table.cap_k), "P" + lambda.to_string(), n);
  r.q = check_log_concave(detail::schur_row(to_schur(table.q.at(n)), lambda, table.cap_k), "Q" + lambda.to_string(), n);
  return r;
}

/// check_mult_lc for every lambda |- n, sharing one Schur conversion.
inline std::vector<MultLcReport> check_mult_lc_all(const RepTable& table, int n) {
  IntSym ps = to_schur(table.p.at(n));
  IntSym qs = to_schur(table.q.at(n));
  std::vector<MultLcReport> out;
  for (const auto& lam : partitions_of(n)) {
    MultLcReport r{lam, {}, {}};
    r.p = check_log_concave(detail::schur_row(ps, lam, table.cap_k), "P" + lam.to_string(), n);
    r.q = check_log_concave(detail::schur_row(qs, lam, table.cap_k), "Q" + lam.to_string(), n);
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------------------------
// Equivariant log-concavity

struct EquivTuple {
  int i, j, k, l;
};

struct EquivLcReport {
  std::string side = "P";
  int n = 0;
  bool strong = true;
  Verdict verdict = Verdict::Holds;
  bool partial = false;
  long tuples_checked = 0;
  std::optional<EquivTuple> witness;
  std::optional<Partition> witness_lambda;

  bool holds() const { return verdict != Verdict::Fails; }

  nlohmann::json to_json() const {
    nlohmann::json w = nullptr;
    if (witness) {
      w = {{"i", witness->i}, {"j", witness->j}, {"k", witness->k}, {"l", witness->l}};
      if (witness_lambda) w["lambda"] = m0n::to_json(*witness_lambda);
    }
    return {{"conjecture", "equiv_lc"},
            {"n", n},
            {"side", side},
            {"mode", strong ? "strong" : "weak"},
            {"verdict", partial ? "partial" : verdict_name(verdict == Verdict::Strict ? Verdict::Holds : verdict)},
            {"tuples_checked", tuples_checked},
            {"witness", w}};
  }
};

/// Tuples i <= j <= k <= l with i + l = j + k and i < j inside [0, top], ordered by total degree.
/// The weak form keeps only (k-1, k, k, k+1).
inline std::vector<EquivTuple> equiv_tuples(int top, bool strong) {
  std::vector<EquivTuple> out;
  if (!strong) {
    for (int k = 1; k + 1 <= top; ++k) out.push_back({k - 1, k, k, k + 1});
    return out;
  }
  for (int sum = 0; sum <= 2 * top; ++sum)
    for (int i = 0; i <= top; ++i)
      for (int j = i + 1; j <= top; ++j) {
        int k = sum - j, l = sum - i;
        if (k < j || l > top) continue;
        out.push_back({i, j, k, l});
      }
  return out;
}

/// V_i (x) V_l is a subrepresentation of V_j (x) V_k for every tuple, where V_k is the t^k
/// piece of P_n (or Q_n). Containment is checked Schur coefficient by Schur coefficient.
/// max_tuples > 0 stops early and marks the report partial.
inline EquivLcReport check_equiv_lc(const RepTable& table, int n, bool strong, bool p_side = true,
                                    long max_tuples = 0) {
  const IntSym& f = p_side ? table.p.at(n) : table.q.at(n);
  EquivLcReport rep;
  rep.side = p_side ? "P" : "Q";
  rep.n = n;
  rep.strong = strong;
  int top = std::max(f.max_t(), 0);
  std::vector<IntSym> pieces;
  for (int k = 0; k <= top; ++k) pieces.push_back(f.t_slice(k));
  std::map<std::pair<int, int>, IntSym> products;
  auto product = [&](int a, int b) -> const IntSym& {
    auto key = std::make_pair(std::min(a, b), std::max(a, b));
    auto it = products.find(key);
    if (it == products.end()) it = products.emplace(key, internal_product(pieces[a], pieces[b])).first;
    return it->second;
  };
  for (const auto& tup : equiv_tuples(top, strong)) {
    if (max_tuples > 0 && rep.tuples_checked >= max_tuples) {
      rep.partial = true;
      break;
    }
    ++rep.tuples_checked;
    const IntSym& small = product(tup.i, tup.l);
    const IntSym& big = product(tup.j, tup.k);
    std::optional<Partition> bad;
    small.for_each([&](const Partition& lam, int, const Integer& c) {
      if (!bad && big.coeff(lam, 0) < c) bad = lam;
    });
    if (bad) {
      rep.verdict = Verdict::Fails;
      rep.witness = tup;
      rep.witness_lambda = bad;
      break;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------------------------
// Invariant-level searches and asymptotics

/// First n in [n_lo, n_hi] at which (q_{n,i} / binom(n-2, i))_i is not log-concave at index k.
inline std::optional<int> find_ultra_witness(const InvariantTables& tab, int k, int n_lo, int n_hi) {
  for (int n = n_lo; n <= std::min(n_hi, tab.cap_n); ++n) {
    auto r = check_ultra_log_concave(row_sequence(tab.q, n), n - 2, "q", n);
    if (k < static_cast<int>(r.verdicts.size()) && k >= 1 && k + 1 < static_cast<int>(r.verdicts.size()) &&
        r.verdicts[k] == Verdict::Fails)
      return n;
  }
  return std::nullopt;
}

/// p_{n,1}^2 >= p_{n,0} p_{n,2}, strict exactly when n is even, checked for n in [n_lo, n_hi].
inline bool p_k1_parity_pattern(const InvariantTables& tab, int n_lo, int n_hi) {
  for (int n = n_lo; n <= n_hi; ++n) {
    auto r = check_log_concave(row_sequence(tab.p, n), "p", n);
    if (r.verdicts.size() < 3) return false;
    Verdict want = n % 2 == 0 ? Verdict::Strict : Verdict::Holds;
    if (r.verdicts[1] != want) return false;
  }
  return true;
}

/// q_{n,k} (k!)^2 / ((k+1)^{k-1} n^k), which tends to 1.
inline double normalized_q(const InvariantTables& tab, int n, int k) {
  Rational num(tab.q.coeff(n, k) * ipow(factorial(k), 2));
  Rational den(ipow(Integer(k + 1), k) * ipow(Integer(n), k), Integer(k + 1));
  Rational r = num / den;
  return r.get_d();
}

/// Limit of q_{n,k}^2 / (q_{n,k-1} q_{n,k+1}).
inline double lc_limit_q(int k) { return std::pow(1.0 + 1.0 / (k * k + 2.0 * k), k); }
/// Limit of p_{n,k}^2 / (p_{n,k-1} p_{n,k+1}).
inline double lc_limit_p(int k) { return std::pow(1.0 + 1.0 / (k * k + 2.0 * k), k - 1); }
/// Limits after normalizing by binomial coefficients.
inline double ultra_limit_q(int k) { return k / (k + 1.0) * lc_limit_q(k); }
inline double ultra_limit_p(int k) { return k / (k + 1.0) * lc_limit_p(k); }

struct AsymptoticRow {
  int n = 0;
  double q_ratio = 0, p_ratio = 0, q_ultra = 0, p_ultra = 0;
};

struct AsymptoticReport {
  int k = 0;
  double q_target = 0, p_target = 0, q_ultra_target = 0, p_ultra_target = 0;
  std::vector<AsymptoticRow> rows;

  nlohmann::json to_json() const {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& x : rows)
      r.push_back({{"n", x.n}, {"q_ratio", x.q_ratio}, {"p_ratio", x.p_ratio}, {"q_ultra", x.q_ultra},
                   {"p_ultra", x.p_ultra}});
    return {{"k", k},
            {"targets", {{"q", q_target}, {"p", p_target}, {"q_ultra", q_ultra_target}, {"p_ultra", p_ultra_target}}},
            {"rows", r}};
  }
};

namespace detail {
inline double lc_ratio(const std::vector<Rational>& a, int k) {
  if (k < 1 || k + 1 >= static_cast<int>(a.size()) || vanishes(a[k - 1]) || vanishes(a[k + 1]))
    return std::nan("");
  Rational r = a[k] * a[k] / (a[k - 1] * a[k + 1]);
  return r.get_d();
}
inline std::vector<Rational> normalized_row(const IBiSeries& s, int n, int binom_n, bool by_binomial) {
  std::vector<Rational> out;
  for (const auto& c : s.row(n).coeffs()) {
    auto i = out.size();
    if (by_binomial) {
      if (static_cast<int>(i) > binom_n) break;
      out.emplace_back(c, binomial(static_cast<unsigned long>(binom_n), i));
      out.back().canonicalize();
    } else {
      out.emplace_back(c);
    }
  }
  return out;
}
}  // namespace detail

/// Ratios a_k^2 / (a_{k-1} a_{k+1}) for q_n and p_n (plain and binomial-normalized) at each n,
/// alongside their limits. tab must be filled to max(n_list) with cap_k > k.
inline AsymptoticReport asymptotic_report(const InvariantTables& tab, int k, const std::vector<int>& n_list) {
  if (k < 1) throw std::invalid_argument("asymptotic_report: k must be >= 1");
  AsymptoticReport rep;
  rep.k = k;
  rep.q_target = lc_limit_q(k);
  rep.p_target = lc_limit_p(k);
  rep.q_ultra_target = ultra_limit_q(k);
  rep.p_ultra_target = ultra_limit_p(k);
  for (int n : n_list) {
    if (n > tab.cap_n || n < 3) throw std::invalid_argument("asymptotic_report: n outside the table");
    AsymptoticRow row;
    row.n = n;
    row.q_ratio = detail::lc_ratio(detail::normalized_row(tab.q, n, 0, false), k);
    row.p_ratio = detail::lc_ratio(detail::normalized_row(tab.p, n, 0, false), k);
    row.q_ultra = detail::lc_ratio(detail::normalized_row(tab.q, n, n - 2, true), k);
    row.p_ultra = detail::lc_ratio(detail::normalized_row(tab.p, n, n - 3, true), k);
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace m0n
