#pragma once

// Independent reference computations used by the test suites.

#include <functional>
#include <map>
#include <vector>

#include "m0n/m0n.hpp"

namespace oracle {

using m0n::Integer;
using m0n::IntSym;
using m0n::Partition;
using m0n::Rational;

/// p(n) from the product formula prod_i 1/(1 - x^i).
inline std::vector<long> partition_counts(int n_max) {
  std::vector<long> p(static_cast<std::size_t>(n_max) + 1, 0);
  p[0] = 1;
  for (int i = 1; i <= n_max; ++i)
    for (int n = i; n <= n_max; ++n) p[n] += p[n - i];
  return p;
}

/// Number of semistandard tableaux of shape lambda and content mu, by filling cells row by row.
inline long ssyt_count(const Partition& lambda, const Partition& mu) {
  if (lambda.size() != mu.size()) return 0;
  std::vector<int> shape = lambda.vec();
  std::vector<std::vector<int>> t(shape.size());
  for (std::size_t r = 0; r < shape.size(); ++r) t[r].assign(shape[r], 0);
  std::vector<int> left = mu.vec();
  long count = 0;
  std::function<void(std::size_t, int)> fill = [&](std::size_t r, int c) {
    if (r == shape.size()) {
      ++count;
      return;
    }
    if (c == shape[r]) {
      fill(r + 1, 0);
      return;
    }
    for (int v = 1; v <= static_cast<int>(left.size()); ++v) {
      if (!left[v - 1]) continue;
      if (c > 0 && t[r][c - 1] > v) continue;
      if (r > 0 && t[r - 1][c] >= v) continue;
      t[r][c] = v;
      --left[v - 1];
      fill(r, c + 1);
      ++left[v - 1];
    }
  };
  fill(0, 0);
  return count;
}

/// chi^lambda(mu) by Murnaghan-Nakayama on beta-sets.
inline long character(const Partition& lambda, const Partition& mu) {
  std::function<long(std::vector<int>, std::size_t)> mn = [&](std::vector<int> beta, std::size_t i) -> long {
    if (i == static_cast<std::size_t>(mu.length())) return 1;
    int r = mu.parts()[i];
    long total = 0;
    for (std::size_t j = 0; j < beta.size(); ++j) {
      int b = beta[j] - r;
      if (b < 0) continue;
      bool clash = false;
      int between = 0;
      for (int x : beta) {
        if (x == b) clash = true;
        if (x > b && x < beta[j]) ++between;
      }
      if (clash) continue;
      auto next = beta;
      next[j] = b;
      total += (between % 2 ? -1 : 1) * mn(next, i + 1);
    }
    return total;
  };
  std::vector<int> beta;
  int l = static_cast<int>(lambda.length());
  for (int i = 0; i < l; ++i) beta.push_back(lambda.parts()[i] + (l - 1 - i));
  return mn(beta, 0);
}

/// Kronecker coefficient g(a, b, c) = sum_mu chi^a chi^b chi^c / z_mu.
inline Integer kronecker(const Partition& a, const Partition& b, const Partition& c) {
  Rational s = 0;
  for (const auto& mu : m0n::partitions_of(a.size()))
    s += Rational(Integer(character(a, mu) * character(b, mu) * character(c, mu)), m0n::z_of(mu));
  s.canonicalize();
  return s.get_num();
}

// ---------------------------------------------------------------------------------------------
// Polynomials in finitely many variables, for plethysm and basis checks.

using Mono = std::vector<int>;
using Poly = std::map<Mono, Integer>;

inline void add_into(Poly& a, const Poly& b, const Integer& s = 1) {
  for (const auto& [m, c] : b) {
    a[m] += c * s;
    if (m0n::vanishes(a[m])) a.erase(m);
  }
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      Mono m(ma.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      out[m] += ca * cb;
    }
  for (auto it = out.begin(); it != out.end();)
    it = m0n::vanishes(it->second) ? out.erase(it) : std::next(it);
  return out;
}

inline Poly poly_one(int vars) { return {{Mono(vars, 0), Integer(1)}}; }

/// h_r in the given alphabet (a list of monomials, repetitions allowed).
inline Poly h_in_alphabet(int r, const std::vector<Mono>& alphabet, int vars) {
  // Multisets of size r drawn from the alphabet, indices non-decreasing.
  Poly out;
  std::vector<std::size_t> idx;
  std::function<void(std::size_t, int)> rec = [&](std::size_t from, int left) {
    if (left == 0) {
      Mono m(vars, 0);
      for (auto i : idx)
        for (int v = 0; v < vars; ++v) m[v] += alphabet[i][v];
      out[m] += 1;
      return;
    }
    for (std::size_t i = from; i < alphabet.size(); ++i) {
      idx.push_back(i);
      rec(i, left - 1);
      idx.pop_back();
    }
  };
  rec(0, r);
  return out;
}

inline std::vector<Mono> variables(int vars) {
  std::vector<Mono> a;
  for (int v = 0; v < vars; ++v) {
    Mono m(vars, 0);
    m[v] = 1;
    a.push_back(m);
  }
  return a;
}

/// Evaluates a t-free H-basis element in `vars` variables.
inline Poly eval_h(const IntSym& f, int vars) {
  auto xs = variables(vars);
  Poly out;
  f.for_each([&](const Partition& lam, int, const Integer& c) {
    Poly term = poly_one(vars);
    for (int part : lam.parts()) term = poly_mul(term, h_in_alphabet(part, xs, vars));
    add_into(out, term, c);
  });
  return out;
}

/// Expands a Schur-positive t-free element with nonnegative coefficients into its monomials.
inline std::vector<Mono> alphabet_of(const Poly& p) {
  std::vector<Mono> out;
  for (const auto& [m, c] : p) {
    if (c < 0) throw std::invalid_argument("alphabet_of: negative coefficient");
    for (Integer i = 0; i < c; ++i) out.push_back(m);
  }
  return out;
}

// ---------------------------------------------------------------------------------------------
// Closed sums for Q_{n,k}, k <= 3, with caps (n, 0).

inline IntSym hprod(std::vector<int> parts, int cap_n) {
  std::vector<int> pos;
  for (int p : parts)
    if (p > 0) pos.push_back(p);
  return IntSym::monomial(m0n::Basis::H, cap_n, 0, Partition::from_unsorted(pos));
}

/// Sum over ordered tuples of nonnegative integers with `len` entries and total n.
inline IntSym tuple_sum(int n, int len, const std::function<bool(const std::vector<int>&)>& pred) {
  IntSym out(m0n::Basis::H, n, 0);
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int left) {
    if (static_cast<int>(cur.size()) == len - 1) {
      cur.push_back(left);
      if (pred(cur)) out += hprod(cur, n);
      cur.pop_back();
      return;
    }
    for (int v = 0; v <= left; ++v) {
      cur.push_back(v);
      rec(left - v);
      cur.pop_back();
    }
  };
  rec(n);
  return out;
}

/// (h_r o h_a) h_rest for each admissible (a, rest...) with r*a + sum(rest) = n.
inline IntSym pleth_sum(int n, int r, int rest_len, const std::function<bool(int, const std::vector<int>&)>& pred) {
  IntSym out(m0n::Basis::H, n, 0);
  for (int a = 1; r * a <= n; ++a) {
    IntSym block = m0n::h_plethysm(r, IntSym::monomial(m0n::Basis::H, n, 0, Partition{a}));
    if (rest_len == 0) {
      if (r * a == n && pred(a, {})) out += block;
      continue;
    }
    IntSym rest = tuple_sum(n - r * a, rest_len, [&](const std::vector<int>& v) { return pred(a, v); });
    out += m0n::mul(block, rest.with_caps(n, 0));
  }
  return out;
}

inline IntSym closed_Q(int n, int k) {
  using V = std::vector<int>;
  IntSym q = hprod({n}, n);
  if (k == 0) return q;
  if (k == 1) return q + tuple_sum(n, 2, [](const V& v) { return v[0] >= 1 && v[1] >= 3; });
  if (k == 2) {
    q += tuple_sum(n, 2, [](const V& v) { return v[0] >= 1 && v[1] >= 4; });
    q += tuple_sum(n, 2, [](const V& v) { return v[0] >= 2 && v[1] >= 3; });
    q += tuple_sum(n, 3, [](const V& v) { return v[0] >= 3 && v[1] >= 2 && v[2] >= 1; });
    q += pleth_sum(n, 2, 1, [](int a, const V&) { return a >= 3; });
    q += tuple_sum(n, 3, [](const V& v) { return 3 <= v[0] && v[0] < v[1]; });
    return q;
  }
  if (k == 3) {
    q += tuple_sum(n, 2, [](const V& v) { return v[0] >= 1 && v[1] >= 5; });
    q += tuple_sum(n, 2, [](const V& v) { return v[0] >= 2 && v[1] >= 4; });
    q += tuple_sum(n, 2, [](const V& v) { return v[0] >= 3 && v[1] >= 3; });
    q += tuple_sum(n, 3, [](const V& v) { return v[0] >= 2 && v[1] >= 2 && v[2] >= 3; });
    q += tuple_sum(n, 3, [](const V& v) { return v[0] >= 1 && v[1] >= 2 && v[2] >= 4; });
    q += tuple_sum(n, 3, [](const V& v) { return v[0] >= 3 && v[1] >= 3 && v[2] >= 1; });
    q += tuple_sum(n, 3, [](const V& v) { return v[0] >= 3 && v[1] >= 4; });
    q += pleth_sum(n, 2, 1, [](int a, const V& v) { return a >= 3 && v[0] >= 1; });
    q += tuple_sum(n, 3, [](const V& v) { return 3 <= v[0] && v[0] < v[1] && v[2] >= 1; });
    q += tuple_sum(n, 4, [](const V& v) { return v[0] >= 1 && v[1] >= 2 && v[2] >= 2 && v[3] >= 3; });
    q += pleth_sum(n, 2, 2, [](int a, const V& v) { return a >= 3 && v[0] >= 1 && v[1] >= 1; });
    q += tuple_sum(n, 4, [](const V& v) { return 3 <= v[0] && v[0] < v[1] && v[2] >= 1 && v[3] >= 1; });
    q += tuple_sum(n, 4, [](const V& v) { return v[0] >= 2 && v[1] >= 3 && v[2] >= 3; });
    q += tuple_sum(n, 4, [](const V& v) { return 3 <= v[0] && v[0] < v[1] && v[1] < v[2]; });
    q += pleth_sum(n, 2, 2, [](int a, const V& v) { return a >= 3 && v[0] >= 3 && a != v[0]; });
    q += pleth_sum(n, 3, 1, [](int a, const V&) { return a >= 3; });
    return q;
  }
  throw std::invalid_argument("closed_Q: k must be <= 3");
}

}  // namespace oracle
