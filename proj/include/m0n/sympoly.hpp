#pragma once

#include <algorithm>
#include <cstdint>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "m0n/arith.hpp"
#include "m0n/errors.hpp"
#include "m0n/partition.hpp"

namespace m0n {

/// Complete homogeneous (H), power sum (P) or Schur (S).
enum class Basis { H, P, S };

inline const char* basis_name(Basis b) {
  switch (b) {
    case Basis::H: return "H";
    case Basis::P: return "P";
    case Basis::S: return "S";
  }
  return "?";
}

inline Basis basis_from_name(const std::string& s) {
  if (s == "H") return Basis::H;
  if (s == "P") return Basis::P;
  if (s == "S") return Basis::S;
  throw std::invalid_argument("unknown basis: " + s);
}

/// An element of Lambda[[t]] truncated at symmetric degree <= cap_n and t-degree <= cap_k,
/// stored sparsely in one basis. Terms of degree n live in slice n, sorted by
/// (partition id, t) so that iteration follows the canonical key order.
template <class C>
class SymPoly {
 public:
  struct Term {
    std::uint32_t id;
    int t;
    C c;
  };
  using Slice = std::vector<Term>;

  SymPoly() : SymPoly(Basis::H, 0, 0) {}
  SymPoly(Basis basis, int cap_n, int cap_k)
      : basis_(basis), cap_n_(cap_n), cap_k_(cap_k), slices_(static_cast<std::size_t>(cap_n) + 1) {
    if (cap_n < 0 || cap_k < 0) throw std::invalid_argument("SymPoly: negative cap");
  }

  static SymPoly one(Basis basis, int cap_n, int cap_k) {
    SymPoly f(basis, cap_n, cap_k);
    f.add_term(Partition{}, 0, C(1));
    return f;
  }

  static SymPoly monomial(Basis basis, int cap_n, int cap_k, const Partition& lambda, int t = 0,
                          const C& c = C(1)) {
    SymPoly f(basis, cap_n, cap_k);
    f.add_term(lambda, t, c);
    return f;
  }

  Basis basis() const { return basis_; }
  int cap_n() const { return cap_n_; }
  int cap_k() const { return cap_k_; }

  const Slice& slice(int n) const {
    static const Slice empty;
    return (n >= 0 && n <= cap_n_) ? slices_[n] : empty;
  }
  /// Raw access; the caller keeps the slice sorted and free of zeros.
  Slice& mutable_slice(int n) { return slices_.at(n); }

  void add_term(const Partition& lambda, int t, const C& c) {
    if (t < 0) throw std::invalid_argument("SymPoly: negative t exponent");
    int n = lambda.size();
    if (n > cap_n_ || t > cap_k_ || vanishes(c)) return;
    add_raw(n, PartitionIndex::instance().id(lambda), t, c);
  }

  void add_raw(int n, std::uint32_t id, int t, const C& c) {
    auto& s = slices_[n];
    auto it = std::lower_bound(s.begin(), s.end(), std::pair{id, t}, [](const Term& a, const auto& key) {
      return a.id < key.first || (a.id == key.first && a.t < key.second);
    });
    if (it != s.end() && it->id == id && it->t == t) {
      it->c += c;
      if (vanishes(it->c)) s.erase(it);
    } else {
      s.insert(it, Term{id, t, c});
    }
  }

  C coeff(const Partition& lambda, int t) const {
    int n = lambda.size();
    if (n > cap_n_ || t < 0 || t > cap_k_) return C(0);
    auto id = PartitionIndex::instance().id(lambda);
    const auto& s = slices_[n];
    auto it = std::lower_bound(s.begin(), s.end(), std::pair{id, t}, [](const Term& a, const auto& key) {
      return a.id < key.first || (a.id == key.first && a.t < key.second);
    });
    return (it != s.end() && it->id == id && it->t == t) ? it->c : C(0);
  }

  bool is_zero() const {
    return std::all_of(slices_.begin(), slices_.end(), [](const Slice& s) { return s.empty(); });
  }

  std::size_t term_count() const {
    std::size_t n = 0;
    for (const auto& s : slices_) n += s.size();
    return n;
  }

  /// Largest symmetric degree carrying a term, or -1 for zero.
  int max_degree() const {
    for (int n = cap_n_; n >= 0; --n)
      if (!slices_[n].empty()) return n;
    return -1;
  }

  int max_t() const {
    int m = -1;
    for (const auto& s : slices_)
      for (const auto& term : s) m = std::max(m, term.t);
    return m;
  }

  /// Calls f(partition, t, coefficient) in canonical key order.
  template <class F>
  void for_each(F&& f) const {
    auto& idx = PartitionIndex::instance();
    for (int n = 0; n <= cap_n_; ++n)
      for (const auto& term : slices_[n]) f(idx.at(n, term.id), term.t, term.c);
  }

  SymPoly& operator+=(const SymPoly& o) { return merge(o, false); }
  SymPoly& operator-=(const SymPoly& o) { return merge(o, true); }
  SymPoly& operator*=(const C& s) {
    if (vanishes(s)) {
      for (auto& sl : slices_) sl.clear();
      return *this;
    }
    for (auto& sl : slices_)
      for (auto& term : sl) term.c *= s;
    return *this;
  }
  friend SymPoly operator+(SymPoly a, const SymPoly& b) { return a += b; }
  friend SymPoly operator-(SymPoly a, const SymPoly& b) { return a -= b; }
  friend SymPoly operator*(SymPoly a, const C& s) { return a *= s; }
  friend SymPoly operator-(SymPoly a) { return a *= C(-1); }

  friend bool operator==(const SymPoly& a, const SymPoly& b) {
    if (a.basis_ != b.basis_ || a.cap_n_ != b.cap_n_ || a.cap_k_ != b.cap_k_) return false;
    for (int n = 0; n <= a.cap_n_; ++n) {
      const auto& x = a.slices_[n];
      const auto& y = b.slices_[n];
      if (x.size() != y.size()) return false;
      for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i].id != y[i].id || x[i].t != y[i].t || x[i].c != y[i].c) return false;
    }
    return true;
  }

  /// Same element viewed with smaller (or equal) caps.
  SymPoly truncated(int cap_n, int cap_k) const {
    if (cap_n > cap_n_ || cap_k > cap_k_) throw CapMismatch("SymPoly::truncated: cannot raise caps");
    SymPoly out(basis_, cap_n, cap_k);
    for (int n = 0; n <= cap_n; ++n)
      for (const auto& term : slices_[n])
        if (term.t <= cap_k) out.slices_[n].push_back(term);
    return out;
  }

  /// Same terms re-homed under larger caps (exact only if this value is not truncated).
  SymPoly with_caps(int cap_n, int cap_k) const {
    SymPoly out(basis_, cap_n, cap_k);
    for (int n = 0; n <= std::min(cap_n, cap_n_); ++n)
      for (const auto& term : slices_[n])
        if (term.t <= cap_k) out.slices_[n].push_back(term);
    return out;
  }

  /// Component of symmetric degree n.
  SymPoly homogeneous(int n) const {
    SymPoly out(basis_, cap_n_, cap_k_);
    if (n >= 0 && n <= cap_n_) out.slices_[n] = slices_[n];
    return out;
  }

  /// Coefficient of t^k, as an element with t-degree 0 and the same caps otherwise.
  SymPoly t_slice(int k) const {
    SymPoly out(basis_, cap_n_, 0);
    for (int n = 0; n <= cap_n_; ++n)
      for (const auto& term : slices_[n])
        if (term.t == k) out.slices_[n].push_back(Term{term.id, 0, term.c});
    return out;
  }

  /// Multiply by t^s, dropping terms past cap_k.
  SymPoly times_t(int s) const {
    SymPoly out(basis_, cap_n_, cap_k_);
    for (int n = 0; n <= cap_n_; ++n)
      for (const auto& term : slices_[n])
        if (term.t + s <= cap_k_) {
          if (term.t + s < 0) throw IntegrityError("SymPoly::times_t: negative t exponent");
          out.slices_[n].push_back(Term{term.id, term.t + s, term.c});
        }
    return out;
  }

  /// Same terms, relabelled as another basis (no change of coordinates).
  SymPoly relabelled(Basis b) const {
    SymPoly out = *this;
    out.basis_ = b;
    return out;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    const char* sym = basis_ == Basis::H ? "h" : basis_ == Basis::P ? "p" : "s";
    for_each([&](const Partition& lam, int t, const C& c) {
      if (!s.empty()) s += " + ";
      s += to_decimal(c);
      if (t > 0) s += "*t^" + std::to_string(t);
      s += std::string("*") + sym + lam.to_string();
    });
    return s;
  }

  nlohmann::json to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for_each([&](const Partition& lam, int t, const C& c) {
      terms.push_back({{"lambda", m0n::to_json(lam)}, {"t", t}, {"c", to_decimal(c)}});
    });
    return {{"basis", basis_name(basis_)}, {"cap_n", cap_n_}, {"cap_k", cap_k_}, {"terms", terms}};
  }

  static SymPoly from_json(const nlohmann::json& j) {
    SymPoly f(basis_from_name(j.at("basis").get<std::string>()), j.at("cap_n").get<int>(),
              j.at("cap_k").get<int>());
    for (const auto& term : j.at("terms"))
      f.add_term(partition_from_json(term.at("lambda")), term.at("t").get<int>(),
                 parse_coefficient<C>(term.at("c").get<std::string>()));
    return f;
  }

  void check_compatible(const SymPoly& o, const char* what) const {
    if (cap_n_ != o.cap_n_ || cap_k_ != o.cap_k_)
      throw CapMismatch(std::string(what) + ": caps (" + std::to_string(cap_n_) + "," +
                        std::to_string(cap_k_) + ") vs (" + std::to_string(o.cap_n_) + "," +
                        std::to_string(o.cap_k_) + ")");
    if (basis_ != o.basis_) throw std::invalid_argument(std::string(what) + ": basis mismatch");
  }

 private:
  SymPoly& merge(const SymPoly& o, bool subtract) {
    check_compatible(o, "SymPoly addition");
    for (int n = 0; n <= cap_n_; ++n) {
      const auto& b = o.slices_[n];
      if (b.empty()) continue;
      auto& a = slices_[n];
      Slice out;
      out.reserve(a.size() + b.size());
      std::size_t i = 0, j = 0;
      while (i < a.size() || j < b.size()) {
        bool take_a = j >= b.size() ||
                      (i < a.size() && (a[i].id < b[j].id || (a[i].id == b[j].id && a[i].t < b[j].t)));
        bool take_b = i >= a.size() ||
                      (j < b.size() && (b[j].id < a[i].id || (b[j].id == a[i].id && b[j].t < a[i].t)));
        if (take_a) {
          out.push_back(std::move(a[i++]));
        } else if (take_b) {
          out.push_back(Term{b[j].id, b[j].t, subtract ? C(-b[j].c) : b[j].c});
          ++j;
        } else {
          C c = subtract ? C(a[i].c - b[j].c) : C(a[i].c + b[j].c);
          if (!vanishes(c)) out.push_back(Term{a[i].id, a[i].t, std::move(c)});
          ++i;
          ++j;
        }
      }
      a = std::move(out);
    }
    return *this;
  }

  Basis basis_;
  int cap_n_;
  int cap_k_;
  std::vector<Slice> slices_;
};

using IntSym = SymPoly<Integer>;
using RatSym = SymPoly<Rational>;

/// Dense accumulator for one symmetric degree; flushes to a sorted slice.
template <class C>
class DenseSlice {
 public:
  DenseSlice(int n, int cap_k)
      : n_(n), width_(static_cast<std::size_t>(cap_k) + 1),
        vals_(PartitionIndex::instance().count(n) * width_), touched_(vals_.size(), 0) {}

  C& at(std::uint32_t id, int t) {
    std::size_t i = id * width_ + static_cast<std::size_t>(t);
    touched_[i] = 1;
    return vals_[i];
  }

  void add_into(DenseSlice& other) {
    for (std::size_t i = 0; i < vals_.size(); ++i)
      if (touched_[i]) {
        other.vals_[i] += vals_[i];
        other.touched_[i] = 1;
      }
  }

  void flush(typename SymPoly<C>::Slice& out) {
    out.clear();
    for (std::size_t i = 0; i < vals_.size(); ++i) {
      if (!touched_[i] || vanishes(vals_[i])) continue;
      out.push_back({static_cast<std::uint32_t>(i / width_), static_cast<int>(i % width_), std::move(vals_[i])});
    }
  }

  int degree() const { return n_; }

 private:
  int n_;
  std::size_t width_;
  std::vector<C> vals_;
  std::vector<std::uint8_t> touched_;
};

namespace detail {

template <class C>
void mul_degree(const SymPoly<C>& f, const SymPoly<C>& g, int d, int a_lo, int a_hi, DenseSlice<C>& acc) {
  auto& idx = PartitionIndex::instance();
  const int cap_k = f.cap_k();
  for (int a = a_lo; a <= a_hi; ++a) {
    const auto& fa = f.slice(a);
    const auto& gb = g.slice(d - a);
    if (fa.empty() || gb.empty()) continue;
    const auto& table = idx.join_table(a, d - a);
    const std::size_t nb = idx.count(d - a);
    for (const auto& x : fa) {
      const std::uint32_t* row = table.data() + x.id * nb;
      for (const auto& y : gb) {
        int t = x.t + y.t;
        if (t > cap_k) continue;
        acc.at(row[y.id], t) += x.c * y.c;
      }
    }
  }
}

}  // namespace detail

/// Product in a multiplicative basis (H or P): h_lambda h_mu = h_{lambda u mu}.
/// With workers > 1 each output degree is split across threads; the sum is order independent.
template <class C>
SymPoly<C> mul(const SymPoly<C>& f, const SymPoly<C>& g, int workers = 1) {
  f.check_compatible(g, "mul");
  if (f.basis() == Basis::S) throw std::invalid_argument("mul: Schur basis is not multiplicative here");
  SymPoly<C> out(f.basis(), f.cap_n(), f.cap_k());
  for (int d = 0; d <= f.cap_n(); ++d) {
    std::size_t work = 0;
    for (int a = 0; a <= d; ++a) work += f.slice(a).size() * g.slice(d - a).size();
    if (work == 0) continue;
    DenseSlice<C> acc(d, f.cap_k());
    if (workers <= 1 || work < 20000 || d == 0) {
      detail::mul_degree(f, g, d, 0, d, acc);
    } else {
      int w = std::min(workers, d + 1);
      std::vector<DenseSlice<C>> parts;
      parts.reserve(w);
      for (int i = 0; i < w; ++i) parts.emplace_back(d, f.cap_k());
      std::vector<std::thread> threads;
      for (int i = 0; i < w; ++i) {
        threads.emplace_back([&, i] {
          for (int a = i; a <= d; a += w) detail::mul_degree(f, g, d, a, a, parts[i]);
        });
      }
      for (auto& th : threads) th.join();
      for (auto& p : parts) p.add_into(acc);
    }
    acc.flush(out.mutable_slice(d));
  }
  return out;
}

template <class C>
SymPoly<C> operator*(const SymPoly<C>& f, const SymPoly<C>& g) {
  return mul(f, g);
}

template <class C>
SymPoly<C> pow(const SymPoly<C>& f, int e) {
  SymPoly<C> r = SymPoly<C>::one(f.basis(), f.cap_n(), f.cap_k());
  for (int i = 0; i < e; ++i) r = mul(r, f);
  return r;
}

/// Exact conversion of coefficients from integers to rationals.
inline RatSym to_rational(const IntSym& f) {
  RatSym out(f.basis(), f.cap_n(), f.cap_k());
  for (int n = 0; n <= f.cap_n(); ++n)
    for (const auto& term : f.slice(n)) out.mutable_slice(n).push_back({term.id, term.t, Rational(term.c)});
  return out;
}

/// Rational to integer coefficients; throws IntegrityError on any non-integral coefficient.
inline IntSym to_integral(const RatSym& f, const std::string& context = "to_integral") {
  IntSym out(f.basis(), f.cap_n(), f.cap_k());
  for (int n = 0; n <= f.cap_n(); ++n)
    for (const auto& term : f.slice(n)) {
      if (!is_integral(term.c))
        throw IntegrityError(context + ": non-integral coefficient " + to_decimal(term.c) + " at " +
                             PartitionIndex::instance().at(n, term.id).to_string() + " t^" +
                             std::to_string(term.t));
      out.mutable_slice(n).push_back({term.id, term.t, term.c.get_num()});
    }
  return out;
}

/// h_lambda (or p_lambda, s_lambda) with the given caps.
inline IntSym basis_element(Basis b, const Partition& lambda, int cap_n, int cap_k, int t = 0) {
  return IntSym::monomial(b, cap_n, cap_k, lambda, t, Integer(1));
}

}  // namespace m0n
