#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "m0n/arith.hpp"
#include "m0n/errors.hpp"
#include "m0n/partition.hpp"
#include "m0n/series.hpp"
#include "m0n/sympoly.hpp"

namespace m0n {

/// A homogeneous element of degree `deg` as (partition id, coefficient) pairs sorted by id.
struct HomVec {
  int deg = 0;
  std::vector<std::pair<std::uint32_t, Integer>> terms;
};

namespace detail {

inline HomVec hom_mul(const HomVec& a, const HomVec& b) {
  auto& idx = PartitionIndex::instance();
  int d = a.deg + b.deg;
  const auto& table = idx.join_table(a.deg, b.deg);
  std::size_t nb = idx.count(b.deg);
  std::vector<Integer> acc(idx.count(d));
  std::vector<std::uint8_t> touched(acc.size(), 0);
  for (const auto& [ia, ca] : a.terms)
    for (const auto& [ib, cb] : b.terms) {
      auto k = table[ia * nb + ib];
      acc[k] += ca * cb;
      touched[k] = 1;
    }
  HomVec out{d, {}};
  for (std::uint32_t i = 0; i < acc.size(); ++i)
    if (touched[i] && !vanishes(acc[i])) out.terms.emplace_back(i, std::move(acc[i]));
  return out;
}

}  // namespace detail

/// Lazily built change-of-basis data shared by the whole process.
class BasisTables {
 public:
  static BasisTables& instance() {
    static BasisTables t;
    return t;
  }

  /// p_mu expanded in the H basis (integral).
  const HomVec& p_in_h(int n, std::uint32_t id) {
    std::lock_guard lock(mu_);
    return p_in_h_locked(n, id);
  }

  /// n! * h_lambda expanded in the P basis (integral).
  const HomVec& h_in_p_scaled(int n, std::uint32_t id) {
    std::lock_guard lock(mu_);
    return h_in_p_locked(n, id);
  }

  /// Nonzero Kostka numbers K_{lambda,mu} for fixed mu, as (lambda id, K).
  const std::vector<std::pair<std::uint32_t, std::int64_t>>& kostka_column(int n, std::uint32_t mu) {
    std::lock_guard lock(mu_);
    auto& level = kostka_level(n);
    return level[mu];
  }

 private:
  using Memo = std::vector<std::unique_ptr<HomVec>>;

  Memo& memo_row(std::vector<Memo>& memo, int n) {
    if (static_cast<int>(memo.size()) <= n) memo.resize(static_cast<std::size_t>(n) + 1);
    auto& row = memo[n];
    if (row.empty()) row.resize(PartitionIndex::instance().count(n));
    return row;
  }

  const HomVec& p_in_h_locked(int n, std::uint32_t id) {
    auto& row = memo_row(p_in_h_, n);
    if (row[id]) return *row[id];
    auto& idx = PartitionIndex::instance();
    const Partition& mu = idx.at(n, id);
    HomVec v;
    if (n == 0) {
      v = HomVec{0, {{0u, Integer(1)}}};
    } else if (mu.length() == 1) {
      // Newton: p_n = n h_n - sum_{i=1}^{n-1} p_i h_{n-i}
      std::vector<Integer> acc(idx.count(n));
      acc[idx.id(Partition{n})] += n;
      for (int i = 1; i < n; ++i) {
        const HomVec& pi = p_in_h_locked(i, idx.id(Partition{i}));
        HomVec hn{n - i, {{idx.id(Partition{n - i}), Integer(1)}}};
        HomVec prod = detail::hom_mul(pi, hn);
        for (auto& [k, c] : prod.terms) acc[k] -= c;
      }
      v.deg = n;
      for (std::uint32_t k = 0; k < acc.size(); ++k)
        if (!vanishes(acc[k])) v.terms.emplace_back(k, acc[k]);
    } else {
      Partition head{mu[0]};
      Partition tail(std::vector<int>(mu.vec().begin() + 1, mu.vec().end()));
      const HomVec& a = p_in_h_locked(head.size(), idx.id(head));
      const HomVec& b = p_in_h_locked(tail.size(), idx.id(tail));
      v = detail::hom_mul(a, b);
    }
    row[id] = std::make_unique<HomVec>(std::move(v));
    return *row[id];
  }

  const HomVec& h_in_p_locked(int n, std::uint32_t id) {
    auto& row = memo_row(h_in_p_, n);
    if (row[id]) return *row[id];
    auto& idx = PartitionIndex::instance();
    const Partition& lam = idx.at(n, id);
    HomVec v;
    if (n == 0) {
      v = HomVec{0, {{0u, Integer(1)}}};
    } else if (lam.length() == 1) {
      // n! h_n = sum_{mu |- n} (n!/z_mu) p_mu
      Integer nf = factorial(n);
      v.deg = n;
      const auto& parts = idx.of(n);
      for (std::uint32_t k = 0; k < parts.size(); ++k) v.terms.emplace_back(k, exact_div(nf, z_of(parts[k])));
    } else {
      Partition head{lam[0]};
      Partition tail(std::vector<int>(lam.vec().begin() + 1, lam.vec().end()));
      const HomVec& a = h_in_p_locked(head.size(), idx.id(head));
      const HomVec& b = h_in_p_locked(tail.size(), idx.id(tail));
      v = detail::hom_mul(a, b);
      Integer m = binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(head.size()));
      for (auto& [k, c] : v.terms) c *= m;
    }
    row[id] = std::make_unique<HomVec>(std::move(v));
    return *row[id];
  }

  // Horizontal strips of size s added to nu.
  static void strips(const std::vector<int>& nu, int s, std::size_t row, std::vector<int>& cur,
                     std::vector<std::vector<int>>& out) {
    if (s == 0) {
      std::vector<int> r = cur;
      for (std::size_t i = row; i < nu.size(); ++i) r.push_back(nu[i]);
      out.push_back(std::move(r));
      return;
    }
    if (row > nu.size()) return;
    int base = row < nu.size() ? nu[row] : 0;
    int cap = row == 0 ? base + s : nu[row - 1];
    for (int v = std::min(cap, base + s); v >= base; --v) {
      if (v == 0) continue;
      cur.push_back(v);
      strips(nu, s - (v - base), row + 1, cur, out);
      cur.pop_back();
    }
  }

  std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>>& kostka_level(int n) {
    if (static_cast<int>(kostka_.size()) <= n) kostka_.resize(static_cast<std::size_t>(n) + 1);
    auto& level = kostka_[n];
    if (!level.empty() || n < 0) return level;
    auto& idx = PartitionIndex::instance();
    const auto& parts = idx.of(n);
    level.resize(parts.size());
    std::map<std::pair<int, std::vector<int>>, std::vector<std::vector<int>>> strip_cache;
    for (std::uint32_t m = 0; m < parts.size(); ++m) {
      // Build SSYT of content mu one horizontal strip at a time.
      std::map<std::vector<int>, std::int64_t> states{{{}, 1}};
      for (int s : parts[m].parts()) {
        std::map<std::vector<int>, std::int64_t> next;
        for (const auto& [shape, cnt] : states) {
          auto key = std::make_pair(s, shape);
          auto it = strip_cache.find(key);
          if (it == strip_cache.end()) {
            std::vector<std::vector<int>> out;
            std::vector<int> cur;
            strips(shape, s, 0, cur, out);
            it = strip_cache.emplace(key, std::move(out)).first;
          }
          for (const auto& r : it->second) next[r] += cnt;
        }
        states = std::move(next);
      }
      for (const auto& [shape, cnt] : states) level[m].emplace_back(idx.id(Partition(shape)), cnt);
      std::sort(level[m].begin(), level[m].end());
    }
    return level;
  }

  std::mutex mu_;
  std::vector<Memo> p_in_h_;
  std::vector<Memo> h_in_p_;
  std::vector<std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>>> kostka_;
};

/// Kostka number K_{lambda,mu}: semistandard tableaux of shape lambda and content mu.
inline std::int64_t kostka(const Partition& lambda, const Partition& mu) {
  if (lambda.size() != mu.size()) return 0;
  auto& idx = PartitionIndex::instance();
  auto lid = idx.id(lambda);
  for (const auto& [l, k] : BasisTables::instance().kostka_column(mu.size(), idx.id(mu)))
    if (l == lid) return k;
  return 0;
}

/// s_lambda in the H basis by the Jacobi-Trudi determinant det(h_{lambda_i - i + j}).
inline HomVec schur_in_h(const Partition& lambda) {
  const int l = lambda.length();
  if (l == 0) return HomVec{0, {{0u, Integer(1)}}};
  if (l > 30) throw std::invalid_argument("schur_in_h: too many rows");
  auto& idx = PartitionIndex::instance();
  std::unordered_map<std::uint32_t, HomVec> memo;
  // det of rows r..l-1 over the columns not in `used` (popcount(used) == r).
  auto det = [&](auto&& self, std::uint32_t used) -> const HomVec& {
    auto it = memo.find(used);
    if (it != memo.end()) return it->second;
    int r = std::popcount(used);
    HomVec result;
    if (r == l) {
      result = HomVec{0, {{0u, Integer(1)}}};
    } else {
      std::map<std::uint32_t, Integer> acc;
      int deg = -1;
      int pos = 0;
      for (int j = 0; j < l; ++j) {
        if (used & (1u << j)) continue;
        int m = lambda[r] - r + j;
        int sign = (pos++ % 2 == 0) ? 1 : -1;
        if (m < 0) continue;
        const HomVec& minor = self(self, used | (1u << j));
        if (minor.terms.empty()) continue;
        HomVec hm{m, {{idx.id(m == 0 ? Partition{} : Partition{m}), Integer(1)}}};
        HomVec prod = detail::hom_mul(hm, minor);
        deg = prod.deg;
        for (auto& [k, c] : prod.terms) {
          if (sign > 0)
            acc[k] += c;
          else
            acc[k] -= c;
        }
      }
      result.deg = deg;
      for (auto& [k, c] : acc)
        if (!vanishes(c)) result.terms.emplace_back(k, c);
    }
    return memo.emplace(used, std::move(result)).first->second;
  };
  HomVec out = det(det, 0u);
  out.deg = lambda.size();
  return out;
}

/// Elementwise Schur-to-H change of basis.
inline IntSym schur_to_h(const IntSym& f) {
  if (f.basis() != Basis::S) throw std::invalid_argument("schur_to_h: expects S basis");
  IntSym out(Basis::H, f.cap_n(), f.cap_k());
  for (int n = 0; n <= f.cap_n(); ++n) {
    if (f.slice(n).empty()) continue;
    DenseSlice<Integer> acc(n, f.cap_k());
    std::unordered_map<std::uint32_t, HomVec> cache;
    for (const auto& term : f.slice(n)) {
      auto it = cache.find(term.id);
      if (it == cache.end())
        it = cache.emplace(term.id, schur_in_h(PartitionIndex::instance().at(n, term.id))).first;
      for (const auto& [k, c] : it->second.terms) acc.at(k, term.t) += term.c * c;
    }
    acc.flush(out.mutable_slice(n));
  }
  return out;
}

/// s_lambda expressed in the H basis with the given caps.
inline IntSym schur_to_h(const Partition& lambda, int cap_n, int cap_k) {
  return schur_to_h(IntSym::monomial(Basis::S, cap_n, cap_k, lambda));
}

/// H to Schur through Kostka numbers: h_mu = sum_lambda K_{lambda,mu} s_lambda.
inline IntSym to_schur(const IntSym& f) {
  if (f.basis() == Basis::S) return f;
  if (f.basis() != Basis::H) throw std::invalid_argument("to_schur: expects H basis");
  IntSym out(Basis::S, f.cap_n(), f.cap_k());
  auto& tables = BasisTables::instance();
  for (int n = 0; n <= f.cap_n(); ++n) {
    if (f.slice(n).empty()) continue;
    DenseSlice<Integer> acc(n, f.cap_k());
    for (const auto& term : f.slice(n)) {
      for (const auto& [lam, k] : tables.kostka_column(n, term.id)) {
        Integer& slot = acc.at(lam, term.t);
        if (k >= 0)
          mpz_addmul_ui(slot.get_mpz_t(), term.c.get_mpz_t(), static_cast<unsigned long>(k));
        else
          slot += term.c * Integer(static_cast<long>(k));
      }
    }
    acc.flush(out.mutable_slice(n));
  }
  return out;
}

inline IntSym to_h(const IntSym& f) {
  if (f.basis() == Basis::H) return f;
  if (f.basis() == Basis::S) return schur_to_h(f);
  throw std::invalid_argument("to_h: integral P-basis input is not supported; use to_h_basis");
}

/// H (or S) to P; the result has rational coefficients.
inline RatSym to_p_basis(const IntSym& input) {
  IntSym f = to_h(input);
  RatSym out(Basis::P, f.cap_n(), f.cap_k());
  auto& tables = BasisTables::instance();
  for (int n = 0; n <= f.cap_n(); ++n) {
    if (f.slice(n).empty()) continue;
    DenseSlice<Integer> acc(n, f.cap_k());
    for (const auto& term : f.slice(n))
      for (const auto& [k, c] : tables.h_in_p_scaled(n, term.id).terms) acc.at(k, term.t) += term.c * c;
    IntSym::Slice tmp;
    acc.flush(tmp);
    Integer nf = factorial(n);
    auto& dst = out.mutable_slice(n);
    dst.reserve(tmp.size());
    for (auto& term : tmp) {
      Rational q(term.c, nf);
      q.canonicalize();
      dst.push_back({term.id, term.t, std::move(q)});
    }
  }
  return out;
}

/// P to H with rational coefficients. Each degree is cleared of denominators first so
/// the expansion itself runs in integers.
inline RatSym to_h_basis(const RatSym& f) {
  if (f.basis() != Basis::P) throw std::invalid_argument("to_h_basis: expects P basis");
  RatSym out(Basis::H, f.cap_n(), f.cap_k());
  auto& tables = BasisTables::instance();
  for (int n = 0; n <= f.cap_n(); ++n) {
    const auto& sl = f.slice(n);
    if (sl.empty()) continue;
    Integer den = 1;
    for (const auto& term : sl) den = lcm(den, term.c.get_den());
    DenseSlice<Integer> acc(n, f.cap_k());
    for (const auto& term : sl) {
      Integer scaled = term.c.get_num() * (den / term.c.get_den());
      for (const auto& [k, c] : tables.p_in_h(n, term.id).terms) acc.at(k, term.t) += scaled * c;
    }
    IntSym::Slice tmp;
    acc.flush(tmp);
    auto& dst = out.mutable_slice(n);
    for (auto& term : tmp) {
      Rational q(term.c, den);
      q.canonicalize();
      dst.push_back({term.id, term.t, std::move(q)});
    }
  }
  return out;
}

/// P to H, asserting integrality.
inline IntSym to_h_integral(const RatSym& f, const std::string& context = "P->H") {
  return to_integral(to_h_basis(f), context);
}

/// Coefficient of s_lambda t^k.
inline Integer mult_lambda(const IntSym& f, const Partition& lambda, int k) {
  if (f.basis() == Basis::S) return f.coeff(lambda, k);
  return to_schur(f).coeff(lambda, k);
}

/// Coefficients of s_lambda t^k for k = 0..cap_k.
inline std::vector<Integer> mult_lambda(const IntSym& f, const Partition& lambda) {
  IntSym s = to_schur(f);
  std::vector<Integer> out;
  for (int k = 0; k <= s.cap_k(); ++k) out.push_back(s.coeff(lambda, k));
  return out;
}

inline void require_homogeneous(const IntSym& f, int n, const char* what) {
  for (int d = 0; d <= f.cap_n(); ++d)
    if (d != n && !f.slice(d).empty())
      throw std::invalid_argument(std::string(what) + ": input is not homogeneous of degree " + std::to_string(n));
}

/// Kronecker (internal) product of two elements homogeneous of the same degree n.
/// t-degrees add. Returned in the S basis with integrality asserted.
inline IntSym internal_product(const IntSym& f, const IntSym& g) {
  if (f.cap_n() != g.cap_n() || f.cap_k() != g.cap_k()) throw CapMismatch("internal_product: caps differ");
  int n = std::max(f.max_degree(), g.max_degree());
  if (n < 0) return IntSym(Basis::S, f.cap_n(), f.cap_k());
  require_homogeneous(f, n, "internal_product");
  require_homogeneous(g, n, "internal_product");
  RatSym fp = to_p_basis(f);
  RatSym gp = to_p_basis(g);
  RatSym prod(Basis::P, f.cap_n(), f.cap_k());
  DenseSlice<Rational> acc(n, f.cap_k());
  auto& idx = PartitionIndex::instance();
  std::vector<Integer> z(idx.count(n));
  for (std::uint32_t i = 0; i < z.size(); ++i) z[i] = z_of(idx.at(n, i));
  const auto& a = fp.slice(n);
  const auto& b = gp.slice(n);
  std::size_t j0 = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    while (j0 < b.size() && b[j0].id < a[i].id) ++j0;
    for (std::size_t j = j0; j < b.size() && b[j].id == a[i].id; ++j) {
      int t = a[i].t + b[j].t;
      if (t > f.cap_k()) continue;
      acc.at(a[i].id, t) += a[i].c * b[j].c * Rational(z[a[i].id]);
    }
  }
  acc.flush(prod.mutable_slice(n));
  return to_schur(to_h_integral(prod, "internal_product"));
}

/// Inv: h_lambda t^k -> q^{|lambda|} t^k (equivalently s_lambda -> [lambda = (n)] q^n).
inline BiSeries<Integer> inv_project(const IntSym& f) {
  BiSeries<Integer> out(f.cap_n(), f.cap_k());
  if (f.basis() == Basis::P) throw std::invalid_argument("inv_project: expects H or S basis");
  auto& idx = PartitionIndex::instance();
  for (int n = 0; n <= f.cap_n(); ++n)
    for (const auto& term : f.slice(n)) {
      if (f.basis() == Basis::S && idx.at(n, term.id).length() > 1) continue;
      out.add(n, term.t, term.c);
    }
  return out;
}

/// rk: h_lambda t^k -> q^{|lambda|} t^k / lambda!.
inline BiSeries<Rational> rank_specialize(const IntSym& input) {
  IntSym f = to_h(input);
  BiSeries<Rational> out(f.cap_n(), f.cap_k());
  auto& idx = PartitionIndex::instance();
  for (int n = 0; n <= f.cap_n(); ++n)
    for (const auto& term : f.slice(n)) {
      Rational c(term.c, lambda_factorial(idx.at(n, term.id)));
      c.canonicalize();
      out.add(n, term.t, c);
    }
  return out;
}

}  // namespace m0n
