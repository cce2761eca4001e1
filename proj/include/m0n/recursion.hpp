#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "m0n/arith.hpp"
#include "m0n/errors.hpp"
#include "m0n/partition.hpp"
#include "m0n/plethysm.hpp"
#include "m0n/series.hpp"
#include "m0n/sympoly.hpp"
#include "m0n/symfun.hpp"

namespace m0n {

inline constexpr const char* kEngineVersion = "1.0.0";

/// Characters of H_*(M_{0,n}) (q), its positive-weight part (qplus) and H_*(Mbar_{0,n}) (p),
/// one homogeneous SymPoly per n, all sharing caps (cap_n, cap_k).
/// q[n] is defined for n >= 2, p[n] for n >= 3, qplus[n] for n >= 1; other slots are zero.
struct RepTable {
  int cap_n = 0;
  int cap_k = 0;
  std::string engine_version = kEngineVersion;
  std::vector<IntSym> qplus;
  std::vector<IntSym> q;
  std::vector<IntSym> p;

  RepTable() = default;
  RepTable(int n, int k)
      : cap_n(n), cap_k(k),
        qplus(static_cast<std::size_t>(n) + 1, IntSym(Basis::H, n, k)),
        q(static_cast<std::size_t>(n) + 1, IntSym(Basis::H, n, k)),
        p(static_cast<std::size_t>(n) + 1, IntSym(Basis::H, n, k)) {}

  IntSym zero() const { return IntSym(Basis::H, cap_n, cap_k); }

  /// Q+ = sum_n qplus[n].
  IntSym qplus_series() const {
    IntSym s = zero();
    for (const auto& x : qplus) s += x;
    return s;
  }
  /// Exp(Q+) = 1 + h_1 + sum_{n >= 2} Q_n.
  IntSym exp_qplus_series() const {
    IntSym s = IntSym::one(Basis::H, cap_n, cap_k);
    if (cap_n >= 1) s.add_term(Partition{1}, 0, Integer(1));
    for (const auto& x : q) s += x;
    return s;
  }
};

struct RecursionOptions {
  int workers = 1;
  PlethysmMemo* memo = nullptr;
};

namespace detail {

/// Per-partition t-polynomials of one homogeneous slice.
inline std::map<std::uint32_t, TPoly<Integer>> slice_polys(const IntSym& f, int n) {
  std::map<std::uint32_t, TPoly<Integer>> out;
  for (const auto& term : f.slice(n)) out[term.id].add(term.t, term.c);
  return out;
}

inline IntSym from_slice_polys(const std::map<std::uint32_t, TPoly<Integer>>& polys, int n, int cap_n,
                               int cap_k) {
  IntSym out(Basis::H, cap_n, cap_k);
  auto& dst = out.mutable_slice(n);
  for (const auto& [id, poly] : polys)
    for (int k = 0; k <= std::min(poly.degree(), cap_k); ++k)
      if (!vanishes(poly[k])) dst.push_back({id, k, poly[k]});
  return out;
}

/// Blocks h_r o Q+_m for r >= 1 with r m <= cap_n.
inline std::vector<IntSym> blocks_for(const IntSym& qplus_m, int m, int cap_n, const RecursionOptions& opt) {
  std::vector<IntSym> out;
  out.push_back(IntSym::one(Basis::H, qplus_m.cap_n(), qplus_m.cap_k()));
  for (int r = 1; r * m <= cap_n; ++r) out.push_back(h_plethysm(r, qplus_m, opt.memo, opt.workers));
  return out;
}

/// acc <- acc * (1 + sum_{r >= 1} t^{r * tweight} block[r]).
inline void multiply_factor(IntSym& acc, const std::vector<IntSym>& blocks, int tweight, int workers) {
  IntSym add(Basis::H, acc.cap_n(), acc.cap_k());
  for (std::size_t r = 1; r < blocks.size(); ++r) {
    if (blocks[r].is_zero()) continue;
    IntSym b = blocks[r].with_caps(acc.cap_n(), acc.cap_k()).times_t(static_cast<int>(r) * tweight);
    if (b.is_zero()) continue;
    add += mul(acc, b, workers);
  }
  acc += add;
}

}  // namespace detail

/// Q+_n for 1 <= n <= cap_n, bottom-up in n. The sum over lambda |- n of
///   (t + ... + t^{l(lambda)-2}) prod_j h_{r_j} o Q+_{n_j}
/// is organised as a running product over part sizes m < n of (1 + sum_r u^r h_r o Q+_m),
/// evaluated at u = 1 (A) and u = t (B); then sum_lambda (t - t^{l-1})/(1-t) (...) = (tA - B/t)/(1-t).
/// Q_n = A_n + Q+_n falls out of the same pass and is stored as well.
inline RepTable qplus_up_to(int cap_n, int cap_k, const RecursionOptions& opt = {}) {
  if (cap_n < 1) throw std::invalid_argument("qplus_up_to: cap_n must be >= 1");
  RepTable table(cap_n, cap_k);
  IntSym d1 = IntSym::one(Basis::H, cap_n, cap_k);
  IntSym dt = IntSym::one(Basis::H, cap_n, cap_k + 1);
  for (int n = 1; n <= cap_n; ++n) {
    IntSym qp(Basis::H, cap_n, cap_k);
    if (n == 1) {
      qp.add_term(Partition{1}, 0, Integer(1));
    } else {
      auto a = detail::slice_polys(d1, n);
      auto b = detail::slice_polys(dt, n);
      std::map<std::uint32_t, TPoly<Integer>> f;
      for (auto& [id, poly] : b) a[id];  // make sure every id is visited
      for (const auto& [id, apoly] : a) {
        TPoly<Integer> bpoly = b.count(id) ? b[id] : TPoly<Integer>();
        TPoly<Integer> x = apoly.shifted(1).truncated(cap_k) - bpoly.shifted(-1);
        if (cap_k >= n - 1 && !vanishes(x.eval(Integer(1))))
          throw IntegrityError("qplus_up_to: weight sum not divisible by (1 - t) at n = " + std::to_string(n));
        TPoly<Integer> quot = x.series_div_one_minus_t(cap_k);
        if (cap_k >= n - 1 && quot.degree() > n - 2)
          throw IntegrityError("qplus_up_to: Q+ has t-degree above n - 2 at n = " + std::to_string(n));
        if (!quot.is_zero()) f[id] = quot;
      }
      qp = detail::from_slice_polys(f, n, cap_n, cap_k);
      if (n >= 2) {
        IntSym qn = d1.homogeneous(n) + qp;
        table.q[n] = std::move(qn);
      }
    }
    table.qplus[n] = qp;
    if (qp.is_zero()) continue;
    auto blocks = detail::blocks_for(qp, n, cap_n, opt);
    detail::multiply_factor(d1, blocks, 0, opt.workers);
    detail::multiply_factor(dt, blocks, 1, opt.workers);
  }
  return table;
}

/// Q_n = sum_{lambda |- n} prod_j h_{r_j} o Q+_{n_j} for 2 <= n <= cap_n, recomputed from
/// table.qplus alone. Entries already present in table.q must agree.
inline void q_from_qplus(RepTable& table, const RecursionOptions& opt = {}) {
  IntSym d1 = IntSym::one(Basis::H, table.cap_n, table.cap_k);
  for (int m = 1; m <= table.cap_n; ++m) {
    const IntSym& qp = table.qplus[m];
    if (!qp.is_zero()) detail::multiply_factor(d1, detail::blocks_for(qp, m, table.cap_n, opt), 0, opt.workers);
    if (m < 2) continue;
    IntSym qn = d1.homogeneous(m);
    if (!table.q[m].is_zero() && !(table.q[m] == qn))
      throw IntegrityError("q_from_qplus: disagreement with stored Q_" + std::to_string(m));
    table.q[m] = std::move(qn);
  }
}

/// P_n from the wall-crossing relation
///   (1 + t) P_n = Q_n - t (sum_{2 <= i < n/2} Q_i Q_{n-i} + s_{11} o Q_{n/2}),
/// with exact division by (1 + t) whenever the caps retain the full t-range.
inline IntSym p_from_q(const RepTable& table, int n, const RecursionOptions& opt = {}) {
  if (n < 3 || n > table.cap_n) throw std::invalid_argument("p_from_q: need 3 <= n <= cap_n");
  IntSym corr = table.zero();
  for (int i = 2; 2 * i < n; ++i) corr += mul(table.q[i], table.q[n - i], opt.workers);
  if (n % 2 == 0) corr += sign2_plethysm(table.q[n / 2], opt.memo);
  IntSym rhs = table.q[n] - corr.times_t(1);
  auto polys = detail::slice_polys(rhs, n);
  std::map<std::uint32_t, TPoly<Integer>> out;
  const bool full = table.cap_k >= n - 2;
  for (const auto& [id, poly] : polys) {
    TPoly<Integer> quot;
    if (full) {
      auto [qq, rem] = poly.divmod_one_plus_t();
      if (!vanishes(rem))
        throw IntegrityError("p_from_q: (1 + t) does not divide the wall-crossing sum at n = " + std::to_string(n) +
                             ", " + PartitionIndex::instance().at(n, id).to_string());
      quot = qq;
    } else {
      // Truncated: divide as a power series, low degrees first.
      std::vector<Integer> c(static_cast<std::size_t>(table.cap_k) + 1);
      for (int k = 0; k <= table.cap_k; ++k) c[k] = poly[k] - (k > 0 ? c[k - 1] : Integer(0));
      quot = TPoly<Integer>(std::move(c));
    }
    if (!quot.is_zero()) out[id] = quot;
  }
  return detail::from_slice_polys(out, n, table.cap_n, table.cap_k);
}

inline void fill_p(RepTable& table, const RecursionOptions& opt = {}) {
  for (int n = 3; n <= table.cap_n; ++n) table.p[n] = p_from_q(table, n, opt);
}

/// Full pipeline: Q+, Q and P for all n <= cap_n.
inline RepTable compute_rep_table(int cap_n, int cap_k, const RecursionOptions& opt = {}) {
  RepTable table = qplus_up_to(cap_n, cap_k, opt);
  fill_p(table, opt);
  return table;
}

/// The unfolded form: Q+_n as a sum over lambda |- n of weighted products of blocks.
/// Used to cross-check the running-product evaluation.
inline IntSym qplus_by_partitions(const RepTable& table, int n, PlethysmMemo* memo = nullptr) {
  IntSym sum = table.zero();
  for (const auto& lam : partitions_of(n)) {
    if (lam.length() < 3) continue;
    auto m = lam.multiplicities();
    IntSym prod = IntSym::one(Basis::H, table.cap_n, table.cap_k);
    for (int part = 1; part < static_cast<int>(m.size()) && !prod.is_zero(); ++part)
      if (m[part]) prod = mul(prod, h_plethysm(m[part], table.qplus[part], memo));
    IntSym weighted = table.zero();
    for (int i = 1; i <= lam.length() - 2; ++i) weighted += prod.times_t(i);
    sum += weighted;
  }
  return sum;
}

/// The unfolded form of Q_n, summed directly over partitions.
inline IntSym q_by_partitions(const RepTable& table, int n, PlethysmMemo* memo = nullptr) {
  IntSym sum = table.zero();
  for (const auto& lam : partitions_of(n)) {
    auto m = lam.multiplicities();
    IntSym prod = IntSym::one(Basis::H, table.cap_n, table.cap_k);
    for (int part = 1; part < static_cast<int>(m.size()) && !prod.is_zero(); ++part)
      if (m[part]) prod = mul(prod, h_plethysm(m[part], table.qplus[part], memo));
    sum += prod;
  }
  return sum;
}

struct IdentityCheck {
  std::string name;
  bool holds = false;
  std::string detail;
};

/// Exp(t Q+) = t^2 Exp(Q+) + (1 - t)(1 + t + h_1 t) within the caps, with both
/// exponentials computed from scratch, plus agreement of Exp(Q+) with the stored Q_n.
inline std::vector<IdentityCheck> verify_exponential_identity(const RepTable& table, int workers = 1) {
  std::vector<IdentityCheck> out;
  IntSym qp = table.qplus_series();
  IntSym e1 = exp_pleth(qp, workers);
  IntSym et = exp_pleth(qp.times_t(1), workers);
  IntSym rhs = e1.times_t(2);
  IntSym tail = IntSym::one(Basis::H, table.cap_n, table.cap_k);
  tail.add_term(Partition{1}, 1, Integer(1));
  tail.add_term(Partition{}, 2, Integer(-1));
  tail.add_term(Partition{1}, 2, Integer(-1));
  rhs += tail;
  out.push_back({"exp(tQ+) = t^2 Exp(Q+) + (1-t)(1+t+h1 t)", et == rhs, et == rhs ? "" : "sides differ"});
  bool agree = e1 == table.exp_qplus_series();
  out.push_back({"Exp(Q+) = 1 + h1 + sum Q_n", agree, agree ? "" : "stored Q_n differ from Exp(Q+)"});
  return out;
}

}  // namespace m0n
