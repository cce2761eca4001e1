#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <vector>

#include "m0n/arith.hpp"
#include "m0n/errors.hpp"
#include "m0n/partition.hpp"
#include "m0n/plethysm.hpp"
#include "m0n/sympoly.hpp"

namespace m0n {

/// A rooted tree with inputs and vertex weights: `inputs` leaves and weight `weight` at the
/// root, plus subtrees hanging off the root, each with positive root weight. Children are
/// kept in non-increasing canonical order, so equal trees have equal representations.
struct WeightedRootedTree {
  int inputs = 0;
  int weight = 0;
  std::vector<WeightedRootedTree> children;
  int n = 0;  // total inputs
  int k = 0;  // total weight

  static WeightedRootedTree make(int inputs, int weight, std::vector<WeightedRootedTree> children) {
    WeightedRootedTree t;
    t.inputs = inputs;
    t.weight = weight;
    t.n = inputs;
    t.k = weight;
    for (const auto& c : children) {
      t.n += c.n;
      t.k += c.k;
    }
    std::sort(children.begin(), children.end(), [](const auto& a, const auto& b) { return compare(a, b) > 0; });
    t.children = std::move(children);
    return t;
  }

  int valency() const { return inputs + static_cast<int>(children.size()) + 1; }

  /// Total order: (n, k, inputs, weight, children lexicographically).
  static int compare(const WeightedRootedTree& a, const WeightedRootedTree& b) {
    if (a.n != b.n) return a.n < b.n ? -1 : 1;
    if (a.k != b.k) return a.k < b.k ? -1 : 1;
    if (a.inputs != b.inputs) return a.inputs < b.inputs ? -1 : 1;
    if (a.weight != b.weight) return a.weight < b.weight ? -1 : 1;
    std::size_t m = std::min(a.children.size(), b.children.size());
    for (std::size_t i = 0; i < m; ++i)
      if (int c = compare(a.children[i], b.children[i])) return c;
    if (a.children.size() != b.children.size()) return a.children.size() < b.children.size() ? -1 : 1;
    return 0;
  }
  friend bool operator==(const WeightedRootedTree& a, const WeightedRootedTree& b) { return compare(a, b) == 0; }
  friend bool operator<(const WeightedRootedTree& a, const WeightedRootedTree& b) { return compare(a, b) < 0; }

  /// Children grouped as (distinct subtree, multiplicity).
  std::vector<std::pair<const WeightedRootedTree*, int>> child_groups() const {
    std::vector<std::pair<const WeightedRootedTree*, int>> out;
    for (const auto& c : children) {
      if (!out.empty() && *out.back().first == c)
        ++out.back().second;
      else
        out.emplace_back(&c, 1);
    }
    return out;
  }

  nlohmann::json to_json() const {
    nlohmann::json ch = nlohmann::json::array();
    for (const auto& c : children) ch.push_back(c.to_json());
    return {{"inputs", inputs}, {"weight", weight}, {"children", ch}};
  }
};

/// Enumerates the sets T_{n,k} (root weight >= 0) and T+_{n,k} (root weight > 0) subject to
/// 0 <= weight <= inputs + #children - 2 at the root and positive weights below it.
class TreeCatalog {
 public:
  const std::vector<WeightedRootedTree>& positive(int n, int k) {
    std::lock_guard lock(mu_);
    return positive_locked(n, k);
  }

  std::vector<WeightedRootedTree> all(int n, int k) {
    std::lock_guard lock(mu_);
    if (n < 2 || k < 0) return {};
    return build(n, k, false);
  }

 private:
  const std::vector<WeightedRootedTree>& positive_locked(int n, int k) {
    auto key = std::make_pair(n, k);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::vector<WeightedRootedTree> v;
    if (n >= 3 && k >= 1) v = build(n, k, true);
    return memo_.emplace(key, std::move(v)).first->second;
  }

  std::vector<WeightedRootedTree> build(int n, int k, bool positive) {
    std::vector<WeightedRootedTree> out;
    for (int a = n; a >= 0; --a) {
      int rest_n = n - a;
      // Candidate children: every T+ tree fitting in what is left, in increasing order. A lone
      // child of the full size would force b <= -1, so (n, k) itself never qualifies.
      std::vector<const WeightedRootedTree*> cands;
      for (int cn = 3; cn <= rest_n; ++cn)
        for (int ck = 1; ck <= k; ++ck) {
          if (cn == n && ck == k) continue;
          for (const auto& t : positive_locked(cn, ck)) cands.push_back(&t);
        }
      for (int b = positive ? 1 : 0; b <= k; ++b) {
        std::vector<const WeightedRootedTree*> chosen;
        choose(cands, static_cast<int>(cands.size()) - 1, rest_n, k - b, chosen, [&](const auto& sel) {
          int r = static_cast<int>(sel.size());
          if (b > a + r - 2) return;
          std::vector<WeightedRootedTree> kids;
          for (auto* p : sel) kids.push_back(*p);
          out.push_back(WeightedRootedTree::make(a, b, std::move(kids)));
        });
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // Multisets of candidates (indices non-increasing) with the given totals.
  template <class F>
  static void choose(const std::vector<const WeightedRootedTree*>& cands, int max_idx, int rem_n, int rem_k,
                     std::vector<const WeightedRootedTree*>& chosen, F&& emit) {
    if (rem_n == 0 && rem_k == 0) {
      emit(chosen);
      return;
    }
    if (rem_n < 3 || rem_k < 1) return;
    for (int i = max_idx; i >= 0; --i) {
      const auto* t = cands[i];
      if (t->n > rem_n || t->k > rem_k) continue;
      chosen.push_back(t);
      choose(cands, i, rem_n - t->n, rem_k - t->k, chosen, emit);
      chosen.pop_back();
    }
  }

  std::mutex mu_;
  std::map<std::pair<int, int>, std::vector<WeightedRootedTree>> memo_;
};

inline TreeCatalog& tree_catalog() {
  static TreeCatalog c;
  return c;
}

/// T_{n,k} for n >= 2.
inline std::vector<WeightedRootedTree> enumerate_trees(int n, int k) { return tree_catalog().all(n, k); }

/// T+_{n,k}.
inline std::vector<WeightedRootedTree> enumerate_positive_trees(int n, int k) {
  return tree_catalog().positive(n, k);
}

inline std::size_t count_trees(int n, int k) { return enumerate_trees(n, k).size(); }

/// |Stab(T)| = inputs! * prod over distinct children c with multiplicity r of |Stab(c)|^r r!.
inline Integer stabilizer_order(const WeightedRootedTree& t) {
  Integer s = factorial(static_cast<unsigned long>(t.inputs));
  for (const auto& [c, r] : t.child_groups())
    s *= ipow(stabilizer_order(*c), static_cast<unsigned long>(r)) * factorial(static_cast<unsigned long>(r));
  return s;
}

/// dim U_T = n! / |Stab(T)|.
inline Integer dim_of_tree(const WeightedRootedTree& t) {
  return exact_div(factorial(static_cast<unsigned long>(t.n)), stabilizer_order(t));
}

/// Frobenius characteristic of the permutation representation on labellings of T:
/// h_inputs * prod_j h_{r_j} o ch(T_j), in the H basis with caps (cap_n, 0).
inline IntSym ch_of_tree(const WeightedRootedTree& t, int cap_n, PlethysmMemo* memo = nullptr) {
  if (cap_n < t.n) throw std::invalid_argument("ch_of_tree: cap_n below tree size");
  IntSym out = IntSym::monomial(Basis::H, cap_n, 0, t.inputs == 0 ? Partition{} : Partition{t.inputs});
  for (const auto& [c, r] : t.child_groups()) out = mul(out, h_plethysm(r, ch_of_tree(*c, cap_n, memo), memo));
  return out;
}

/// sum over T in T_{n,k} of ch(U_T), with caps (n, 0).
inline IntSym oracle_Q(int n, int k, PlethysmMemo* memo = nullptr) {
  IntSym sum(Basis::H, n, 0);
  for (const auto& t : enumerate_trees(n, k)) sum += ch_of_tree(t, n, memo);
  return sum;
}

/// Rooted unlabelled trees, children in non-increasing canonical order.
struct ShapeTree {
  std::vector<ShapeTree> children;
  int vertices = 1;

  static int compare(const ShapeTree& a, const ShapeTree& b) {
    if (a.vertices != b.vertices) return a.vertices < b.vertices ? -1 : 1;
    std::size_t m = std::min(a.children.size(), b.children.size());
    for (std::size_t i = 0; i < m; ++i)
      if (int c = compare(a.children[i], b.children[i])) return c;
    if (a.children.size() != b.children.size()) return a.children.size() < b.children.size() ? -1 : 1;
    return 0;
  }
  friend bool operator==(const ShapeTree& a, const ShapeTree& b) { return compare(a, b) == 0; }
};

/// All rooted unlabelled trees with v vertices.
inline std::vector<ShapeTree> enumerate_shapes(int v) {
  static std::mutex mu;
  static std::vector<std::vector<ShapeTree>> memo;
  std::lock_guard lock(mu);
  auto build = [&](auto&& self, int size) -> const std::vector<ShapeTree>& {
    while (static_cast<int>(memo.size()) <= size) memo.emplace_back();
    if (!memo[size].empty() || size < 1) return memo[size];
    std::vector<const ShapeTree*> cands;
    for (int s = 1; s < size; ++s) {
      const auto& lst = self(self, s);
      for (const auto& t : lst) cands.push_back(&t);
    }
    std::vector<ShapeTree> out;
    std::vector<const ShapeTree*> chosen;
    auto rec = [&](auto&& rself, int max_idx, int rem) -> void {
      if (rem == 0) {
        ShapeTree t;
        for (auto* c : chosen) t.children.push_back(*c);
        t.vertices = size;
        out.push_back(std::move(t));
        return;
      }
      for (int i = max_idx; i >= 0; --i) {
        if (cands[i]->vertices > rem) continue;
        chosen.push_back(cands[i]);
        rself(rself, i, rem - cands[i]->vertices);
        chosen.pop_back();
      }
    };
    rec(rec, static_cast<int>(cands.size()) - 1, size - 1);
    memo[size] = std::move(out);
    return memo[size];
  };
  return build(build, v);
}

/// |Aut(T)| for a rooted unlabelled tree.
inline Integer automorphism_order(const ShapeTree& t) {
  Integer a = 1;
  std::size_t i = 0;
  while (i < t.children.size()) {
    std::size_t j = i;
    while (j < t.children.size() && t.children[j] == t.children[i]) ++j;
    auto r = static_cast<unsigned long>(j - i);
    a *= ipow(automorphism_order(t.children[i]), r) * factorial(r);
    i = j;
  }
  return a;
}

/// sum over rooted trees with k+1 vertices of k! / |Aut|.
inline Rational cayley_statistics(int k) {
  if (k < 0) throw std::invalid_argument("cayley_statistics: negative k");
  Rational s = 0;
  Integer kf = factorial(static_cast<unsigned long>(k));
  for (const auto& t : enumerate_shapes(k + 1)) s += Rational(kf, automorphism_order(t));
  s.canonicalize();
  return s;
}

}  // namespace m0n
