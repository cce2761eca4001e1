#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "m0n/arith.hpp"
#include "m0n/errors.hpp"
#include "m0n/partition.hpp"
#include "m0n/sympoly.hpp"
#include "m0n/symfun.hpp"

namespace m0n {

/// p_m o F in the P basis: p_lambda t^k -> p_{m lambda} t^{mk}, dropping terms past the caps.
inline RatSym p_substitute(const RatSym& f, int m) {
  if (f.basis() != Basis::P) throw std::invalid_argument("p_substitute: expects P basis");
  if (m < 1) throw std::invalid_argument("p_substitute: m must be positive");
  if (m == 1) return f;
  RatSym out(Basis::P, f.cap_n(), f.cap_k());
  auto& idx = PartitionIndex::instance();
  for (int n = 0; n * m <= f.cap_n(); ++n) {
    const auto& sl = f.slice(n);
    if (sl.empty()) continue;
    const auto& table = idx.scale_table(n, m);
    auto& dst = out.mutable_slice(n * m);
    for (const auto& term : sl) {
      if (term.t * m > f.cap_k()) continue;
      dst.push_back({table[term.id], term.t * m, term.c});
    }
    // Scaling partitions preserves the descending-lex order, so dst stays sorted.
  }
  return out;
}

namespace detail {

inline std::size_t content_hash(const IntSym& f) {
  std::size_t h = static_cast<std::size_t>(f.cap_n()) * 1000003u + static_cast<std::size_t>(f.cap_k());
  h = h * 31 + static_cast<std::size_t>(f.basis());
  for (int n = 0; n <= f.cap_n(); ++n)
    for (const auto& term : f.slice(n)) {
      h = (h ^ (static_cast<std::size_t>(n) << 40 ^ static_cast<std::size_t>(term.id) << 8 ^
                static_cast<std::size_t>(term.t))) * 0x100000001b3ULL;
      h = (h ^ mpz_get_ui(term.c.get_mpz_t()) ^ static_cast<std::size_t>(mpz_size(term.c.get_mpz_t()))) *
          0x100000001b3ULL;
      if (sgn(term.c) < 0) h = ~h;
    }
  return h;
}

}  // namespace detail

/// Memo for plethysm blocks h_r o F keyed by (r, content hash, caps). Entries are
/// compared by value on lookup, so a hash collision can never return a wrong block.
/// Safe to share between threads.
class PlethysmMemo {
 public:
  std::shared_ptr<const IntSym> find(int r, const IntSym& f) {
    std::lock_guard lock(mu_);
    auto it = map_.find(Key{r, detail::content_hash(f)});
    if (it == map_.end()) return nullptr;
    for (const auto& [arg, res] : it->second)
      if (arg == f) return res;
    return nullptr;
  }
  void insert(int r, const IntSym& f, const IntSym& result) {
    std::lock_guard lock(mu_);
    auto& bucket = map_[Key{r, detail::content_hash(f)}];
    for (const auto& entry : bucket)
      if (entry.first == f) return;
    bucket.emplace_back(f, std::make_shared<const IntSym>(result));
  }
  std::size_t size() {
    std::lock_guard lock(mu_);
    std::size_t n = 0;
    for (const auto& [k, b] : map_) n += b.size();
    return n;
  }

 private:
  struct Key {
    int r;
    std::size_t h;
    bool operator<(const Key& o) const { return r != o.r ? r < o.r : h < o.h; }
  };
  std::mutex mu_;
  std::map<Key, std::vector<std::pair<IntSym, std::shared_ptr<const IntSym>>>> map_;
};

/// h_r o F for F in the P basis with rational coefficients:
/// sum over mu |- r of z_mu^{-1} prod_i p_{mu_i} o F.
inline RatSym h_plethysm_p(int r, const RatSym& fp, int workers = 1) {
  if (r < 0) throw std::invalid_argument("h_plethysm: negative r");
  RatSym result(Basis::P, fp.cap_n(), fp.cap_k());
  if (r == 0) return RatSym::one(Basis::P, fp.cap_n(), fp.cap_k());
  if (r == 1) return fp;
  std::map<int, RatSym> subs;
  std::map<std::pair<int, int>, RatSym> powers;
  auto power = [&](int j, int e) -> const RatSym& {
    auto key = std::make_pair(j, e);
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    auto sit = subs.find(j);
    if (sit == subs.end()) sit = subs.emplace(j, p_substitute(fp, j)).first;
    RatSym val = e == 1 ? sit->second : mul(powers.at({j, e - 1}), sit->second, workers);
    return powers.emplace(key, std::move(val)).first->second;
  };
  for (const auto& mu : partitions_of(r)) {
    auto m = mu.multiplicities();
    RatSym term = RatSym::one(Basis::P, fp.cap_n(), fp.cap_k());
    bool first = true;
    for (int j = 1; j < static_cast<int>(m.size()); ++j) {
      if (m[j] == 0) continue;
      for (int e = 1; e <= m[j]; ++e) power(j, e);
      const RatSym& pw = powers.at({j, m[j]});
      term = first ? pw : mul(term, pw, workers);
      first = false;
    }
    result += term * Rational(Integer(1), z_of(mu));
  }
  return result;
}

/// h_r o F in the H basis. F may be given in H or S; the result is asserted integral.
inline IntSym h_plethysm(int r, const IntSym& f, PlethysmMemo* memo = nullptr, int workers = 1) {
  if (r < 0) throw std::invalid_argument("h_plethysm: negative r");
  if (r == 0) return IntSym::one(Basis::H, f.cap_n(), f.cap_k());
  IntSym fh = to_h(f);
  if (r == 1) return fh;
  if (fh.is_zero()) return IntSym(Basis::H, f.cap_n(), f.cap_k());
  if (memo)
    if (auto hit = memo->find(r, fh)) return *hit;
  IntSym out = to_h_integral(h_plethysm_p(r, to_p_basis(fh), workers), "h_plethysm");
  if (memo) memo->insert(r, fh, out);
  return out;
}

/// G o F for G in H (or S), with the t-powers of G acting as scalars.
inline IntSym plethysm(const IntSym& g, const IntSym& f, PlethysmMemo* memo = nullptr) {
  IntSym gh = to_h(g);
  IntSym out(Basis::H, f.cap_n(), f.cap_k());
  std::map<int, IntSym> blocks;
  auto block = [&](int r) -> const IntSym& {
    auto it = blocks.find(r);
    if (it == blocks.end()) it = blocks.emplace(r, h_plethysm(r, f, memo)).first;
    return it->second;
  };
  gh.for_each([&](const Partition& lam, int t, const Integer& c) {
    IntSym term = IntSym::one(Basis::H, f.cap_n(), f.cap_k());
    for (int part : lam.parts()) term = mul(term, block(part));
    out += term.times_t(t) * c;
  });
  return out;
}

/// e_r o F via e_r = s_{(1^r)}.
inline IntSym e_plethysm(int r, const IntSym& f, PlethysmMemo* memo = nullptr) {
  if (r == 0) return IntSym::one(Basis::H, f.cap_n(), f.cap_k());
  Partition col(std::vector<int>(static_cast<std::size_t>(r), 1));
  return plethysm(schur_to_h(col, r, 0), f, memo);
}

/// h_r o (F_1 + ... + F_m) = sum over (c_1..c_m) with sum c_j = r of prod_j h_{c_j} o F_j.
inline IntSym additive_expansion(int r, const std::vector<IntSym>& parts, PlethysmMemo* memo = nullptr) {
  if (parts.empty()) throw std::invalid_argument("additive_expansion: no summands");
  const int cn = parts.front().cap_n(), ck = parts.front().cap_k();
  // acc[s] = h_s o (F_1 + ... + F_j)
  std::vector<IntSym> acc;
  for (int s = 0; s <= r; ++s) acc.push_back(h_plethysm(s, parts.front(), memo));
  for (std::size_t j = 1; j < parts.size(); ++j) {
    std::vector<IntSym> blocks;
    for (int s = 0; s <= r; ++s) blocks.push_back(h_plethysm(s, parts[j], memo));
    std::vector<IntSym> next;
    for (int s = 0; s <= r; ++s) {
      IntSym sum(Basis::H, cn, ck);
      for (int i = 0; i <= s; ++i) sum += mul(acc[s - i], blocks[i]);
      next.push_back(std::move(sum));
    }
    acc = std::move(next);
  }
  return acc[r];
}

/// s_{(1,1)} o F = F^2 - h_2 o F.
inline IntSym sign2_plethysm(const IntSym& f, PlethysmMemo* memo = nullptr) {
  IntSym fh = to_h(f);
  return mul(fh, fh) - h_plethysm(2, fh, memo);
}

inline IntSym trunc(const IntSym& f, int cap_n, int cap_k) { return f.truncated(cap_n, cap_k); }

namespace detail {

/// Splits a P-basis element by weight |lambda| + t.
inline std::vector<RatSym> weight_parts(const RatSym& f) {
  const int W = f.cap_n() + f.cap_k();
  std::vector<RatSym> out(static_cast<std::size_t>(W) + 1, RatSym(f.basis(), f.cap_n(), f.cap_k()));
  for (int n = 0; n <= f.cap_n(); ++n)
    for (const auto& term : f.slice(n)) out[n + term.t].mutable_slice(n).push_back(term);
  return out;
}

/// exp(L) for L without weight-0 part, by w E_w = sum_k k L_k E_{w-k}.
inline RatSym series_exp(const RatSym& l, int workers) {
  auto lw = weight_parts(l);
  if (!lw[0].is_zero()) throw std::invalid_argument("series_exp: constant term");
  const int W = static_cast<int>(lw.size()) - 1;
  std::vector<RatSym> e;
  e.push_back(RatSym::one(l.basis(), l.cap_n(), l.cap_k()));
  RatSym total = e[0];
  for (int w = 1; w <= W; ++w) {
    RatSym acc(l.basis(), l.cap_n(), l.cap_k());
    for (int k = 1; k <= w; ++k) {
      if (lw[k].is_zero() || e[w - k].is_zero()) continue;
      acc += mul(lw[k], e[w - k], workers) * Rational(k);
    }
    acc *= Rational(1, w);
    total += acc;
    e.push_back(std::move(acc));
  }
  return total;
}

/// log(Y) for Y with weight-0 part exactly 1, by w X_w = w Y_w - sum_{k<w} k X_k Y_{w-k}.
inline RatSym series_log(const RatSym& y, int workers) {
  auto yw = weight_parts(y);
  if (!(yw[0] == RatSym::one(y.basis(), y.cap_n(), y.cap_k())))
    throw std::invalid_argument("series_log: constant term must be 1");
  const int W = static_cast<int>(yw.size()) - 1;
  std::vector<RatSym> x(static_cast<std::size_t>(W) + 1, RatSym(y.basis(), y.cap_n(), y.cap_k()));
  RatSym total(y.basis(), y.cap_n(), y.cap_k());
  for (int w = 1; w <= W; ++w) {
    RatSym acc = yw[w] * Rational(w);
    for (int k = 1; k < w; ++k) {
      if (x[k].is_zero() || yw[w - k].is_zero()) continue;
      acc -= mul(x[k], yw[w - k], workers) * Rational(k);
    }
    acc *= Rational(1, w);
    total += acc;
    x[w] = std::move(acc);
  }
  return total;
}

}  // namespace detail

/// Exp(F) = sum_r h_r o F = exp(sum_r p_r o F / r); F must have zero constant term.
inline IntSym exp_pleth(const IntSym& f, int workers = 1) {
  IntSym fh = to_h(f);
  if (!vanishes(fh.coeff(Partition{}, 0))) throw std::invalid_argument("Exp: input has a constant term");
  RatSym fp = to_p_basis(fh);
  RatSym l(Basis::P, fh.cap_n(), fh.cap_k());
  const int W = fh.cap_n() + fh.cap_k();
  for (int j = 1; j <= W; ++j) {
    RatSym s = p_substitute(fp, j);
    if (s.is_zero()) continue;
    l += s * Rational(1, j);
  }
  return to_h_integral(detail::series_exp(l, workers), "Exp");
}

/// Log(F) = sum_r mu(r)/r log(p_r o F), the inverse of Exp; F must have constant term 1.
inline IntSym log_pleth(const IntSym& f, int workers = 1) {
  IntSym fh = to_h(f);
  if (fh.coeff(Partition{}, 0) != 1) throw std::invalid_argument("Log: constant term must be 1");
  RatSym fp = to_p_basis(fh);
  RatSym one = RatSym::one(Basis::P, fh.cap_n(), fh.cap_k());
  RatSym result(Basis::P, fh.cap_n(), fh.cap_k());
  const int W = fh.cap_n() + fh.cap_k();
  for (int r = 1; r <= W; ++r) {
    int mu = mobius(r);
    if (mu == 0) continue;
    RatSym y = p_substitute(fp, r);
    if (y == one) continue;
    result += detail::series_log(y, workers) * Rational(mu, r);
  }
  return to_h_integral(result, "Log");
}

}  // namespace m0n
