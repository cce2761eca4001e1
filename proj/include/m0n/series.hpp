#pragma once

#include <algorithm>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "m0n/arith.hpp"
#include "m0n/errors.hpp"

namespace m0n {

/// Dense univariate polynomial in t with trailing zeros trimmed.
template <class C>
class TPoly {
 public:
  TPoly() = default;
  explicit TPoly(std::vector<C> coeffs) : c_(std::move(coeffs)) { trim(); }
  static TPoly constant(const C& c) { return TPoly(std::vector<C>{c}); }
  static TPoly monomial(int k, const C& c) {
    std::vector<C> v(static_cast<std::size_t>(k) + 1);
    v[k] = c;
    return TPoly(std::move(v));
  }
  /// 1 + t + ... + t^k (empty for k < 0).
  static TPoly geometric(int from, int to) {
    TPoly r;
    for (int i = from; i <= to; ++i) r.add(i, C(1));
    return r;
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<C>& coeffs() const { return c_; }

  C operator[](int k) const { return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : C(0); }

  void add(int k, const C& v) {
    if (k < 0) throw std::invalid_argument("TPoly: negative exponent");
    if (k >= static_cast<int>(c_.size())) c_.resize(static_cast<std::size_t>(k) + 1);
    c_[k] += v;
    trim();
  }

  TPoly& operator+=(const TPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  TPoly& operator-=(const TPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  TPoly& operator*=(const C& s) {
    for (auto& x : c_) x *= s;
    trim();
    return *this;
  }
  friend TPoly operator+(TPoly a, const TPoly& b) { return a += b; }
  friend TPoly operator-(TPoly a, const TPoly& b) { return a -= b; }
  friend TPoly operator*(TPoly a, const C& s) { return a *= s; }
  friend TPoly operator-(TPoly a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }

  /// Product truncated to degree <= cap (cap < 0 means no truncation).
  static TPoly mul(const TPoly& a, const TPoly& b, int cap = -1) {
    if (a.is_zero() || b.is_zero()) return {};
    int deg = a.degree() + b.degree();
    if (cap >= 0) deg = std::min(deg, cap);
    std::vector<C> out(static_cast<std::size_t>(deg) + 1);
    for (int i = 0; i <= a.degree() && i <= deg; ++i) {
      if (vanishes(a.c_[i])) continue;
      for (int j = 0; j <= b.degree() && i + j <= deg; ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return TPoly(std::move(out));
  }
  friend TPoly operator*(const TPoly& a, const TPoly& b) { return mul(a, b); }

  TPoly truncated(int cap) const {
    if (degree() <= cap) return *this;
    return TPoly(std::vector<C>(c_.begin(), c_.begin() + (cap + 1)));
  }

  /// f(t^m), truncated to degree <= cap when cap >= 0.
  TPoly substitute_power(int m, int cap = -1) const {
    if (is_zero()) return {};
    int deg = degree() * m;
    if (cap >= 0) deg = std::min(deg, cap);
    std::vector<C> out(static_cast<std::size_t>(deg) + 1);
    for (int i = 0; i * m <= deg; ++i) out[i * m] = c_[i];
    return TPoly(std::move(out));
  }

  /// t^s * f for s >= 0, or f / t^{-s} for s < 0 (the dropped low terms must be zero).
  TPoly shifted(int s) const {
    if (is_zero()) return {};
    if (s >= 0) {
      std::vector<C> out(static_cast<std::size_t>(s), C(0));
      out.insert(out.end(), c_.begin(), c_.end());
      return TPoly(std::move(out));
    }
    int d = -s;
    for (int i = 0; i < d && i < static_cast<int>(c_.size()); ++i)
      if (!vanishes(c_[i])) throw IntegrityError("TPoly::shifted: not divisible by t^" + std::to_string(d));
    if (d >= static_cast<int>(c_.size())) return {};
    return TPoly(std::vector<C>(c_.begin() + d, c_.end()));
  }

  /// Quotient and remainder of division by (1 + t).
  std::pair<TPoly, C> divmod_one_plus_t() const {
    if (is_zero()) return {TPoly(), C(0)};
    std::vector<C> q(c_.size() > 1 ? c_.size() - 1 : 0);
    // Synthetic division from the top: coefficients of f = (1 + t) g + r.
    C carry = 0;
    for (int i = degree(); i >= 1; --i) {
      carry = c_[i] - carry;
      q[i - 1] = carry;
    }
    C rem = c_[0] - (q.empty() ? C(0) : q[0]);
    return {TPoly(std::move(q)), rem};
  }

  /// f / (1 - t) as a power series truncated to degree <= cap.
  TPoly series_div_one_minus_t(int cap) const {
    std::vector<C> out(static_cast<std::size_t>(cap) + 1);
    C run = 0;
    for (int i = 0; i <= cap; ++i) {
      run += (*this)[i];
      out[i] = run;
    }
    return TPoly(std::move(out));
  }

  C eval(const C& x) const {
    C acc = 0;
    for (int i = degree(); i >= 0; --i) acc = acc * x + c_[i];
    return acc;
  }

  friend bool operator==(const TPoly& a, const TPoly& b) { return a.c_ == b.c_; }

  std::string to_string(const std::string& var = "t") const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = 0; i <= degree(); ++i) {
      if (vanishes(c_[i])) continue;
      if (!s.empty()) s += " + ";
      s += to_decimal(c_[i]);
      if (i > 0) s += "*" + var + (i > 1 ? "^" + std::to_string(i) : "");
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && vanishes(c_.back())) c_.pop_back();
  }
  std::vector<C> c_;
};

/// Truncated power series in q and t: row n holds the coefficient of q^n as a polynomial in t.
template <class C>
class BiSeries {
 public:
  BiSeries() : BiSeries(0, 0) {}
  BiSeries(int cap_n, int cap_k) : cap_n_(cap_n), cap_k_(cap_k), rows_(static_cast<std::size_t>(cap_n) + 1) {
    if (cap_n < 0 || cap_k < 0) throw std::invalid_argument("BiSeries: negative cap");
  }

  static BiSeries one(int cap_n, int cap_k) {
    BiSeries s(cap_n, cap_k);
    s.add(0, 0, C(1));
    return s;
  }
  static BiSeries monomial(int cap_n, int cap_k, int n, int k, const C& c) {
    BiSeries s(cap_n, cap_k);
    s.add(n, k, c);
    return s;
  }

  int cap_n() const { return cap_n_; }
  int cap_k() const { return cap_k_; }

  const TPoly<C>& row(int n) const {
    static const TPoly<C> zero;
    return (n >= 0 && n <= cap_n_) ? rows_[n] : zero;
  }
  void set_row(int n, TPoly<C> p) {
    if (n < 0 || n > cap_n_) return;
    rows_[n] = p.truncated(cap_k_);
  }
  C coeff(int n, int k) const { return row(n)[k]; }
  void add(int n, int k, const C& c) {
    if (n < 0 || k < 0 || n > cap_n_ || k > cap_k_) return;
    rows_[n].add(k, c);
  }

  bool is_zero() const {
    return std::all_of(rows_.begin(), rows_.end(), [](const auto& r) { return r.is_zero(); });
  }

  BiSeries& operator+=(const BiSeries& o) {
    check_caps(o);
    for (int n = 0; n <= cap_n_; ++n) rows_[n] += o.rows_[n];
    return *this;
  }
  BiSeries& operator-=(const BiSeries& o) {
    check_caps(o);
    for (int n = 0; n <= cap_n_; ++n) rows_[n] -= o.rows_[n];
    return *this;
  }
  BiSeries& operator*=(const C& s) {
    for (auto& r : rows_) r *= s;
    return *this;
  }
  friend BiSeries operator+(BiSeries a, const BiSeries& b) { return a += b; }
  friend BiSeries operator-(BiSeries a, const BiSeries& b) { return a -= b; }
  friend BiSeries operator*(BiSeries a, const C& s) { return a *= s; }
  friend BiSeries operator-(BiSeries a) { return a *= C(-1); }

  friend BiSeries operator*(const BiSeries& a, const BiSeries& b) {
    a.check_caps(b);
    BiSeries out(a.cap_n_, a.cap_k_);
    for (int i = 0; i <= a.cap_n_; ++i) {
      if (a.rows_[i].is_zero()) continue;
      for (int j = 0; i + j <= a.cap_n_; ++j) {
        if (b.rows_[j].is_zero()) continue;
        out.rows_[i + j] += TPoly<C>::mul(a.rows_[i], b.rows_[j], a.cap_k_);
      }
    }
    return out;
  }

  /// f(q^m, t^m).
  BiSeries bracket_power(int m) const {
    if (m < 1) throw std::invalid_argument("bracket_power: m must be positive");
    BiSeries out(cap_n_, cap_k_);
    for (int n = 0; n * m <= cap_n_; ++n) out.rows_[n * m] = rows_[n].substitute_power(m, cap_k_);
    return out;
  }

  /// Multiply by t^s (s >= 0), truncating.
  BiSeries times_t(int s) const {
    BiSeries out(cap_n_, cap_k_);
    for (int n = 0; n <= cap_n_; ++n) out.rows_[n] = rows_[n].shifted(s).truncated(cap_k_);
    return out;
  }

  BiSeries truncated(int cap_n, int cap_k) const {
    if (cap_n > cap_n_ || cap_k > cap_k_)
      throw CapMismatch("BiSeries::truncated: cannot raise caps");
    BiSeries out(cap_n, cap_k);
    for (int n = 0; n <= cap_n; ++n) out.rows_[n] = rows_[n].truncated(cap_k);
    return out;
  }

  friend bool operator==(const BiSeries& a, const BiSeries& b) {
    return a.cap_n_ == b.cap_n_ && a.cap_k_ == b.cap_k_ && a.rows_ == b.rows_;
  }

  struct Term {
    int n;
    int k;
    C c;
  };
  std::vector<Term> terms() const {
    std::vector<Term> out;
    for (int n = 0; n <= cap_n_; ++n)
      for (int k = 0; k <= rows_[n].degree(); ++k)
        if (!vanishes(rows_[n][k])) out.push_back({n, k, rows_[n][k]});
    return out;
  }

  nlohmann::json to_json() const {
    nlohmann::json terms_j = nlohmann::json::array();
    for (const auto& t : terms()) terms_j.push_back({{"q", t.n}, {"t", t.k}, {"c", to_decimal(t.c)}});
    return {{"cap_n", cap_n_}, {"cap_k", cap_k_}, {"terms", terms_j}};
  }

  static BiSeries from_json(const nlohmann::json& j) {
    BiSeries s(j.at("cap_n").get<int>(), j.at("cap_k").get<int>());
    for (const auto& t : j.at("terms"))
      s.add(t.at("q").get<int>(), t.at("t").get<int>(), parse_coefficient<C>(t.at("c").get<std::string>()));
    return s;
  }

 private:
  void check_caps(const BiSeries& o) const {
    if (cap_n_ != o.cap_n_ || cap_k_ != o.cap_k_) throw CapMismatch("BiSeries caps differ");
  }
  int cap_n_;
  int cap_k_;
  std::vector<TPoly<C>> rows_;
};

}  // namespace m0n
