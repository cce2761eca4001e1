#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "m0n/arith.hpp"
#include "m0n/errors.hpp"
#include "m0n/partition.hpp"
#include "m0n/recursion.hpp"
#include "m0n/series.hpp"
#include "m0n/symfun.hpp"

namespace m0n {

using IPoly = TPoly<Integer>;
using RPoly = TPoly<Rational>;
using IBiSeries = BiSeries<Integer>;
using RBiSeries = BiSeries<Rational>;

/// Invariant Poincare data: qplus (q^1 coefficient 1), q = Exp(qplus) restricted to n >= 2,
/// and p, with row n the polynomial in t.
struct InvariantTables {
  int cap_n = 0;
  int cap_k = 0;
  std::string engine_version = kEngineVersion;
  IBiSeries qplus;
  IBiSeries q;
  IBiSeries p;

  InvariantTables() = default;
  InvariantTables(int n, int k) : cap_n(n), cap_k(k), qplus(n, k), q(n, k), p(n, k) {}
};

inline IBiSeries bracket_power(const IBiSeries& f, int m) { return f.bracket_power(m); }

/// h_r o f = sum_{mu |- r} z_mu^{-1} f^{[mu_1]} f^{[mu_2]} ..., evaluated in integers
/// with the common denominator r!.
inline IBiSeries h_plethysm_qt(int r, const IBiSeries& f) {
  if (r < 0) throw std::invalid_argument("h_plethysm_qt: negative r");
  if (r == 0) return IBiSeries::one(f.cap_n(), f.cap_k());
  std::vector<IBiSeries> br;
  br.push_back(IBiSeries(f.cap_n(), f.cap_k()));
  for (int j = 1; j <= r; ++j) br.push_back(f.bracket_power(j));
  IBiSeries acc(f.cap_n(), f.cap_k());
  Integer rf = factorial(r);
  for (const auto& mu : partitions_of(r)) {
    IBiSeries term = IBiSeries::one(f.cap_n(), f.cap_k());
    for (int part : mu.parts()) term = term * br[part];
    acc += term * exact_div(rf, z_of(mu));
  }
  IBiSeries out(f.cap_n(), f.cap_k());
  for (const auto& t : acc.terms()) {
    if (!mpz_divisible_p(t.c.get_mpz_t(), rf.get_mpz_t()))
      throw IntegrityError("h_plethysm_qt: non-integral coefficient");
    out.add(t.n, t.k, exact_div(t.c, rf));
  }
  return out;
}

namespace detail {

/// prod_k (1 - t^k)^{-a_k} for a polynomial a(t) with a_0 = 0, truncated at degree cap.
inline IPoly exp_pure_t(const IPoly& a, int cap) {
  IPoly acc = IPoly::constant(1);
  for (int k = 1; k <= a.degree() && k <= cap; ++k) {
    const Integer& e = a[k];
    if (vanishes(e)) continue;
    // (1 - x)^{-e} = sum_r binom(-e, r) (-1)^r x^r
    IPoly factor;
    for (int r = 0; r * k <= cap; ++r) {
      Integer c = binomial(Integer(-e), static_cast<unsigned long>(r));
      if (r % 2) c = -c;
      factor.add(r * k, c);
    }
    acc = IPoly::mul(acc, factor, cap);
  }
  return acc;
}

inline Integer exact_div_checked(const Integer& a, const Integer& b, const char* what) {
  if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t())) throw IntegrityError(std::string(what) + ": inexact division");
  return exact_div(a, b);
}

inline IPoly divide_poly(const IPoly& p, const Integer& d, const char* what) {
  std::vector<Integer> c;
  for (int k = 0; k <= p.degree(); ++k) c.push_back(exact_div_checked(p[k], d, what));
  return IPoly(std::move(c));
}

}  // namespace detail

/// Exp(f) = exp(sum_r f^{[r]} / r); f must have no constant term. Uses
/// n E_n = sum_k (sum_{d | k} d f_d(t^{k/d})) E_{n-k} in q-degree, after splitting off
/// the q^0 row, which is handled by the product formula.
inline IBiSeries exp_qt(const IBiSeries& f) {
  if (!vanishes(f.coeff(0, 0))) throw std::invalid_argument("exp_qt: input has a constant term");
  const int N = f.cap_n(), K = f.cap_k();
  std::vector<IPoly> ell(static_cast<std::size_t>(N) + 1);
  for (int k = 1; k <= N; ++k)
    for (int d = 1; d <= k; ++d)
      if (k % d == 0) ell[k] += f.row(d).substitute_power(k / d, K) * Integer(d);
  std::vector<IPoly> e(static_cast<std::size_t>(N) + 1);
  e[0] = IPoly::constant(1);
  for (int n = 1; n <= N; ++n) {
    IPoly acc;
    for (int k = 1; k <= n; ++k) acc += IPoly::mul(ell[k], e[n - k], K);
    e[n] = detail::divide_poly(acc, Integer(n), "exp_qt");
  }
  IBiSeries out(N, K);
  IPoly pure = detail::exp_pure_t(f.row(0), K);
  for (int n = 0; n <= N; ++n) out.set_row(n, IPoly::mul(pure, e[n], K));
  return out;
}

/// Exp(f) = prod_{n,k} (1 - q^n t^k)^{-a_{n,k}} (second route, used for cross-checks).
inline IBiSeries exp_qt_product(const IBiSeries& f) {
  if (!vanishes(f.coeff(0, 0))) throw std::invalid_argument("exp_qt_product: input has a constant term");
  IBiSeries acc = IBiSeries::one(f.cap_n(), f.cap_k());
  for (const auto& t : f.terms()) {
    IBiSeries factor(f.cap_n(), f.cap_k());
    for (int r = 0; r * t.n <= f.cap_n() && r * t.k <= f.cap_k(); ++r) {
      Integer c = binomial(Integer(-t.c), static_cast<unsigned long>(r));
      if (r % 2) c = -c;
      factor.add(r * t.n, r * t.k, c);
      if (t.n == 0 && t.k == 0) break;
    }
    acc = acc * factor;
  }
  return acc;
}

/// qplus and q up to q-degree cap_n, bottom-up. With E = Exp(qplus), Et = Exp(t qplus) and
/// H_2 = h_2 o qplus, the recursion qplus = q + sum_{r >= 3} (t + ... + t^{r-2}) h_r o qplus reads
///   qplus_n = (t S_n - St_n / t) / (1 - t),  S = E - 1 - qplus - H_2,  St = Et - 1 - t qplus - t^2 H_2,
/// and the q^n coefficients of S and St only involve qplus_m for m < n.
inline InvariantTables qplus_inv_up_to(int cap_n, int cap_k) {
  if (cap_n < 1) throw std::invalid_argument("qplus_inv_up_to: cap_n must be >= 1");
  const int N = cap_n, K = cap_k, K1 = cap_k + 1;
  std::vector<IPoly> f(N + 1), e(N + 1), et(N + 1), ell(N + 1), ellt(N + 1);
  e[0] = IPoly::constant(1);
  et[0] = IPoly::constant(1);
  auto divisor_sum = [&](int n, bool twisted, bool proper) {
    IPoly s;
    int cap = twisted ? K1 : K;
    for (int d = 1; d <= n; ++d) {
      if (n % d || (proper && d == n)) continue;
      IPoly term = f[d].substitute_power(n / d, cap) * Integer(d);
      if (twisted) term = term.shifted(n / d).truncated(cap);
      s += term;
    }
    return s;
  };
  for (int n = 1; n <= N; ++n) {
    if (n == 1) {
      f[1] = IPoly::constant(1);
    } else {
      IPoly r = divisor_sum(n, false, true), rt = divisor_sum(n, true, true);
      for (int k = 1; k < n; ++k) {
        r += IPoly::mul(ell[k], e[n - k], K);
        rt += IPoly::mul(ellt[k], et[n - k], K1);
      }
      r = detail::divide_poly(r, Integer(n), "qplus_inv_up_to");
      rt = detail::divide_poly(rt, Integer(n), "qplus_inv_up_to");
      IPoly h2;
      for (int a = 1; a < n; ++a) h2 += IPoly::mul(f[a], f[n - a], K);
      if (n % 2 == 0) h2 += f[n / 2].substitute_power(2, K);
      h2 = detail::divide_poly(h2, Integer(2), "qplus_inv_up_to");
      IPoly s = r - h2;
      IPoly st = rt - h2.shifted(2).truncated(K1);
      IPoly x = s.shifted(1).truncated(K) - st.shifted(-1);
      if (K >= n - 1 && !vanishes(x.eval(Integer(1))))
        throw IntegrityError("qplus_inv_up_to: not divisible by (1 - t) at n = " + std::to_string(n));
      f[n] = x.series_div_one_minus_t(K);
      if (K >= n - 1 && f[n].degree() > n - 2)
        throw IntegrityError("qplus_inv_up_to: t-degree above n - 2 at n = " + std::to_string(n));
      e[n] = f[n] + r;
      et[n] = (f[n].shifted(1) + rt).truncated(K1);
    }
    if (n == 1) {
      e[1] = f[1];
      et[1] = f[1].shifted(1);
    }
    ell[n] = divisor_sum(n, false, false);
    ellt[n] = divisor_sum(n, true, false);
  }
  InvariantTables out(N, K);
  for (int n = 1; n <= N; ++n) out.qplus.set_row(n, f[n]);
  for (int n = 2; n <= N; ++n) out.q.set_row(n, e[n]);
  return out;
}

/// The unfolded invariant sum for one n (qplus rows below n must be filled).
inline IPoly qplus_inv_by_partitions(const InvariantTables& tab, int n) {
  IPoly sum;
  std::vector<IBiSeries> single(static_cast<std::size_t>(n) + 1);
  for (const auto& lam : partitions_of(n)) {
    if (lam.length() < 3) continue;
    auto m = lam.multiplicities();
    IBiSeries prod = IBiSeries::one(tab.cap_n, tab.cap_k);
    for (int part = 1; part < static_cast<int>(m.size()); ++part) {
      if (!m[part]) continue;
      IBiSeries g(tab.cap_n, tab.cap_k);
      g.set_row(part, tab.qplus.row(part));
      prod = prod * h_plethysm_qt(m[part], g);
    }
    sum += IPoly::mul(prod.row(n), IPoly::geometric(1, lam.length() - 2), tab.cap_k);
  }
  return sum;
}

/// (1 + t) p_n = q_n - t/2 (sum_{h=2}^{n-2} q_h q_{n-h} - q_{n/2}(t^2)).
inline IPoly p_inv(const InvariantTables& tab, int n) {
  if (n < 3 || n > tab.cap_n) throw std::invalid_argument("p_inv: need 3 <= n <= cap_n");
  const int K = tab.cap_k;
  IPoly inner;
  for (int h = 2; h <= n - 2; ++h) inner += IPoly::mul(tab.q.row(h), tab.q.row(n - h), K);
  if (n % 2 == 0) inner -= tab.q.row(n / 2).substitute_power(2, K);
  inner = detail::divide_poly(inner, Integer(2), "p_inv");
  IPoly rhs = tab.q.row(n) - inner.shifted(1).truncated(K);
  if (K >= n - 2) {
    auto [quot, rem] = rhs.divmod_one_plus_t();
    if (!vanishes(rem)) throw IntegrityError("p_inv: (1 + t) does not divide at n = " + std::to_string(n));
    return quot;
  }
  std::vector<Integer> c(static_cast<std::size_t>(K) + 1);
  for (int k = 0; k <= K; ++k) c[k] = rhs[k] - (k > 0 ? c[k - 1] : Integer(0));
  return IPoly(std::move(c));
}

inline InvariantTables compute_invariant_tables(int cap_n, int cap_k) {
  InvariantTables tab = qplus_inv_up_to(cap_n, cap_k);
  for (int n = 3; n <= cap_n; ++n) tab.p.set_row(n, p_inv(tab, n));
  return tab;
}

// ---------------------------------------------------------------------------------------------
// Ranks and the Manin functional equation

struct ManinResult {
  std::vector<IPoly> via_rank;   // phi_n from rk(Q_n), index n
  std::vector<IPoly> via_manin;  // phi_n from the functional equation
  bool agree = false;
};

/// phi_n(t) = n! [q^n] rk(Q) for 2 <= n <= table.cap_n (phi_1 = 1).
inline std::vector<IPoly> manin_phi_from_rank(const RepTable& table) {
  std::vector<IPoly> out(static_cast<std::size_t>(table.cap_n) + 1);
  if (table.cap_n >= 1) out[1] = IPoly::constant(1);
  for (int n = 2; n <= table.cap_n; ++n) {
    RBiSeries rk = rank_specialize(table.q[n]);
    std::vector<Integer> c;
    Integer nf = factorial(n);
    for (int k = 0; k <= rk.row(n).degree(); ++k) {
      Rational v = rk.row(n)[k] * Rational(nf);
      if (!is_integral(v)) throw IntegrityError("manin: n! rk(Q_n) not integral");
      c.push_back(v.get_num());
    }
    out[n] = IPoly(std::move(c));
  }
  return out;
}

/// Solves exp(t log(1 + phi)) = t^2 (1 + phi) + (1 - t)(1 + t + q t) order by order in q,
/// with phi = q + sum_{n >= 2} phi_n q^n / n!.
inline std::vector<IPoly> manin_phi_from_equation(int n_max) {
  std::vector<RPoly> c(static_cast<std::size_t>(n_max) + 1);  // c_n = phi_n / n!
  if (n_max >= 1) c[1] = RPoly::constant(Rational(1));
  const int K = 2 * n_max + 2;
  for (int n = 2; n <= n_max; ++n) {
    RBiSeries u(n, K);
    for (int i = 1; i < n; ++i) u.set_row(i, c[i]);
    // Y = [q^n] sum_{m >= 2} binom(t, m) u^m
    RPoly y;
    RBiSeries power = u;
    RPoly binom_t = RPoly::monomial(1, Rational(1));  // binom(t, 1)
    for (int m = 2; m <= n; ++m) {
      power = power * u;
      // binom(t, m) = binom(t, m - 1) (t - m + 1) / m
      RPoly lin(std::vector<Rational>{Rational(-(m - 1)), Rational(1)});
      binom_t = RPoly::mul(binom_t, lin) * Rational(1, m);
      y += RPoly::mul(binom_t, power.row(n));
    }
    // (t - t^2) c_n = -y
    RPoly num = -y;
    RPoly reduced = num.shifted(-1);  // divide by t
    // divide by (1 - t): series division must terminate
    RPoly quot = reduced.series_div_one_minus_t(std::max(0, reduced.degree()));
    if (!(RPoly::mul(quot, RPoly(std::vector<Rational>{Rational(1), Rational(-1)})) == reduced))
      throw IntegrityError("manin: (1 - t) does not divide at n = " + std::to_string(n));
    c[n] = quot;
  }
  std::vector<IPoly> out(static_cast<std::size_t>(n_max) + 1);
  for (int n = 1; n <= n_max; ++n) {
    std::vector<Integer> v;
    Integer nf = factorial(n);
    for (int k = 0; k <= c[n].degree(); ++k) {
      Rational x = c[n][k] * Rational(nf);
      if (!is_integral(x)) throw IntegrityError("manin: phi_n not integral");
      v.push_back(x.get_num());
    }
    out[n] = IPoly(std::move(v));
  }
  return out;
}

inline ManinResult manin_phi(const RepTable& table) {
  ManinResult r;
  r.via_rank = manin_phi_from_rank(table);
  r.via_manin = manin_phi_from_equation(table.cap_n);
  r.agree = true;
  for (int n = 1; n <= table.cap_n; ++n) {
    // Only compare degrees retained by the caps.
    if (!(r.via_rank[n] == r.via_manin[n].truncated(table.cap_k))) r.agree = false;
  }
  return r;
}

/// Univariate log(y) for y_0 = 1 by n L_n = n y_n - sum_{k<n} k L_k y_{n-k}.
inline std::vector<Rational> series_log(const std::vector<Rational>& y) {
  if (y.empty() || y[0] != 1) throw std::invalid_argument("series_log: constant term must be 1");
  std::vector<Rational> l(y.size());
  for (std::size_t n = 1; n < y.size(); ++n) {
    Rational acc = Rational(static_cast<long>(n)) * y[n];
    for (std::size_t k = 1; k < n; ++k) acc -= Rational(static_cast<long>(k)) * l[k] * y[n - k];
    l[n] = acc / Rational(static_cast<long>(n));
  }
  return l;
}

/// Univariate exp(g) for g_0 = 0.
inline std::vector<Rational> series_exp(const std::vector<Rational>& g) {
  if (!g.empty() && g[0] != 0) throw std::invalid_argument("series_exp: constant term must be 0");
  std::vector<Rational> e(g.size());
  if (!e.empty()) e[0] = 1;
  for (std::size_t n = 1; n < g.size(); ++n) {
    Rational acc = 0;
    for (std::size_t k = 1; k <= n; ++k) acc += Rational(static_cast<long>(k)) * g[k] * e[n - k];
    e[n] = acc / Rational(static_cast<long>(n));
  }
  return e;
}

/// chi = phi(q, 1): checks (1 + chi) log(1 + chi) = 2 chi - q through q^{n_max}.
inline bool euler_check(const std::vector<IPoly>& phi, int n_max) {
  std::vector<Rational> chi(static_cast<std::size_t>(n_max) + 1);
  for (int n = 1; n <= n_max; ++n) {
    chi[n] = Rational(phi.at(n).eval(Integer(1)), factorial(n));
    chi[n].canonicalize();
  }
  std::vector<Rational> one_chi = chi;
  one_chi[0] = 1;
  auto l = series_log(one_chi);
  for (int n = 0; n <= n_max; ++n) {
    Rational lhs = 0;
    for (int k = 0; k <= n; ++k) lhs += one_chi[k] * l[n - k];
    Rational rhs = 2 * chi[n] - (n == 1 ? Rational(1) : Rational(0));
    if (lhs != rhs) return false;
  }
  return true;
}

/// c_k = (k+1)^{k-1} / k!
inline Rational asymptotic_c(int k) {
  if (k < 0) throw std::invalid_argument("asymptotic_c: negative k");
  Rational r = k == 0 ? Rational(1) : Rational(ipow(Integer(k + 1), k - 1), factorial(k));
  r.canonicalize();
  return r;
}

/// d_k = (k+1)^{k-2} / k!
inline Rational asymptotic_d(int k) {
  if (k < 0) throw std::invalid_argument("asymptotic_d: negative k");
  Rational r;
  if (k == 0)
    r = 1;
  else if (k == 1)
    r = Rational(1, 2);
  else
    r = Rational(ipow(Integer(k + 1), k - 2), factorial(k));
  r.canonicalize();
  return r;
}

/// d_k through the convolution c_k - 1/2 sum_{j<k} c_j c_{k-1-j}.
inline Rational asymptotic_d_by_convolution(int k) {
  Rational s = 0;
  for (int j = 0; j < k; ++j) s += asymptotic_c(j) * asymptotic_c(k - 1 - j);
  return asymptotic_c(k) - s / 2;
}

/// Checks C = exp(t C) for C = sum_k c_k t^k through t^{k_max}.
inline bool c_functional_equation(int k_max) {
  std::vector<Rational> c(static_cast<std::size_t>(k_max) + 1), g(static_cast<std::size_t>(k_max) + 1);
  for (int k = 0; k <= k_max; ++k) c[k] = asymptotic_c(k);
  for (int k = 1; k <= k_max; ++k) g[k] = c[k - 1];
  return series_exp(g) == c;
}

}  // namespace m0n
