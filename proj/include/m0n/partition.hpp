#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <nlohmann/json.hpp>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "m0n/arith.hpp"

namespace m0n {

/// An integer partition, stored as a non-increasing list of positive parts.
class Partition {
 public:
  Partition() = default;

  /// Parts must already be non-increasing and positive.
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] <= 0) throw std::invalid_argument("partition parts must be positive");
      if (i > 0 && parts_[i] > parts_[i - 1])
        throw std::invalid_argument("partition parts must be non-increasing");
    }
    size_ = std::accumulate(parts_.begin(), parts_.end(), 0);
  }

  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  /// Sorts the parts and drops zeros.
  static Partition from_unsorted(std::vector<int> parts) {
    std::erase(parts, 0);
    std::sort(parts.begin(), parts.end(), std::greater<>());
    return Partition(std::move(parts));
  }

  std::span<const int> parts() const { return parts_; }
  const std::vector<int>& vec() const { return parts_; }
  int length() const { return static_cast<int>(parts_.size()); }
  int size() const { return size_; }
  bool empty() const { return parts_.empty(); }
  int operator[](std::size_t i) const { return parts_[i]; }
  int largest() const { return parts_.empty() ? 0 : parts_.front(); }

  /// m[i] is the number of parts equal to i, for 0 <= i <= largest().
  std::vector<int> multiplicities() const {
    std::vector<int> m(static_cast<std::size_t>(largest()) + 1, 0);
    for (int p : parts_) ++m[p];
    return m;
  }

  /// Multiset union of parts.
  Partition join(const Partition& other) const {
    std::vector<int> out;
    out.reserve(parts_.size() + other.parts_.size());
    std::merge(parts_.begin(), parts_.end(), other.parts_.begin(), other.parts_.end(),
               std::back_inserter(out), std::greater<>());
    return Partition(std::move(out));
  }

  /// Every part multiplied by m.
  Partition scaled(int m) const {
    std::vector<int> out(parts_);
    for (int& p : out) p *= m;
    return Partition(std::move(out));
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(parts_[i]);
    }
    return s + ")";
  }

  friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }

  /// Canonical order: size ascending, then descending lexicographic.
  friend bool operator<(const Partition& a, const Partition& b) {
    if (a.size_ != b.size_) return a.size_ < b.size_;
    return std::lexicographical_compare(a.parts_.begin(), a.parts_.end(), b.parts_.begin(),
                                        b.parts_.end(), std::greater<>());
  }

 private:
  std::vector<int> parts_;
  int size_ = 0;
};

struct PartitionHash {
  std::size_t operator()(const Partition& p) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (int x : p.parts()) h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ULL;
    return h;
  }
};

namespace detail {
inline void partitions_rec(int remaining, int max_part, std::vector<int>& cur,
                           std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(cur);
    return;
  }
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_rec(remaining - p, p, cur, out);
    cur.pop_back();
  }
}
}  // namespace detail

/// All partitions of n in descending lexicographic order.
inline std::vector<Partition> partitions_of(int n) {
  if (n < 0) throw std::invalid_argument("partitions_of: negative n");
  std::vector<Partition> out;
  std::vector<int> cur;
  detail::partitions_rec(n, n, cur, out);
  return out;
}

/// z_lambda = prod_i i^{m_i} m_i!
inline Integer z_of(const Partition& lambda) {
  Integer z = 1;
  auto m = lambda.multiplicities();
  for (std::size_t i = 1; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    z *= ipow(Integer(static_cast<unsigned long>(i)), static_cast<unsigned long>(m[i]));
    z *= factorial(static_cast<unsigned long>(m[i]));
  }
  return z;
}

/// lambda! = prod_i lambda_i!
inline Integer lambda_factorial(const Partition& lambda) {
  Integer r = 1;
  for (int p : lambda.parts()) r *= factorial(static_cast<unsigned long>(p));
  return r;
}

/// lambda[n] = (n - |lambda|, lambda_1, lambda_2, ...); requires n - |lambda| >= lambda_1.
inline Partition pad(const Partition& lambda, int n) {
  int first = n - lambda.size();
  if (first < lambda.largest())
    throw std::invalid_argument("pad: n too small for " + lambda.to_string());
  std::vector<int> parts{first};
  parts.insert(parts.end(), lambda.parts().begin(), lambda.parts().end());
  std::erase(parts, 0);
  return Partition(std::move(parts));
}

/// Number-theoretic Moebius function.
inline int mobius(int r) {
  if (r < 1) throw std::invalid_argument("mobius: r must be positive");
  int result = 1;
  for (int p = 2; p * p <= r; ++p) {
    if (r % p) continue;
    r /= p;
    if (r % p == 0) return 0;
    result = -result;
  }
  if (r > 1) result = -result;
  return result;
}

inline nlohmann::json to_json(const Partition& p) { return nlohmann::json(p.vec()); }

inline Partition partition_from_json(const nlohmann::json& j) {
  return Partition(j.get<std::vector<int>>());
}

/// Process-wide interning of partitions: each partition of n gets a dense id
/// equal to its position in partitions_of(n). Tables are built lazily and
/// never move once built, so returned references stay valid.
class PartitionIndex {
 public:
  static PartitionIndex& instance() {
    static PartitionIndex idx;
    return idx;
  }

  const std::vector<Partition>& of(int n) { return level(n).parts; }

  std::size_t count(int n) { return level(n).parts.size(); }

  std::uint32_t id(const Partition& p) {
    auto& lv = level(p.size());
    auto it = lv.ids.find(p);
    return it->second;
  }

  const Partition& at(int n, std::uint32_t id) { return level(n).parts[id]; }

  /// Row-major table t[i * count(b) + j] = id of (partition i of a) joined with (partition j of b).
  const std::vector<std::uint32_t>& join_table(int a, int b) {
    std::lock_guard lock(mu_);
    auto key = (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
    auto it = joins_.find(key);
    if (it != joins_.end()) return *it->second;
    auto& la = level_locked(a);
    auto& lb = level_locked(b);
    auto& lab = level_locked(a + b);
    auto table = std::make_unique<std::vector<std::uint32_t>>(la.parts.size() * lb.parts.size());
    for (std::size_t i = 0; i < la.parts.size(); ++i)
      for (std::size_t j = 0; j < lb.parts.size(); ++j)
        (*table)[i * lb.parts.size() + j] = lab.ids.at(la.parts[i].join(lb.parts[j]));
    auto& ref = *table;
    joins_.emplace(key, std::move(table));
    return ref;
  }

  /// Table t[i] = id of (partition i of n) with every part scaled by m.
  const std::vector<std::uint32_t>& scale_table(int n, int m) {
    std::lock_guard lock(mu_);
    auto key = (static_cast<std::uint64_t>(n) << 32) | static_cast<std::uint32_t>(m);
    auto it = scales_.find(key);
    if (it != scales_.end()) return *it->second;
    auto& ln = level_locked(n);
    auto& lnm = level_locked(n * m);
    auto table = std::make_unique<std::vector<std::uint32_t>>(ln.parts.size());
    for (std::size_t i = 0; i < ln.parts.size(); ++i)
      (*table)[i] = lnm.ids.at(ln.parts[i].scaled(m));
    auto& ref = *table;
    scales_.emplace(key, std::move(table));
    return ref;
  }

 private:
  struct Level {
    std::vector<Partition> parts;
    std::unordered_map<Partition, std::uint32_t, PartitionHash> ids;
  };

  Level& level(int n) {
    std::lock_guard lock(mu_);
    return level_locked(n);
  }

  Level& level_locked(int n) {
    if (n < 0) throw std::invalid_argument("PartitionIndex: negative degree");
    while (static_cast<int>(levels_.size()) <= n) {
      auto lv = std::make_unique<Level>();
      lv->parts = partitions_of(static_cast<int>(levels_.size()));
      for (std::uint32_t i = 0; i < lv->parts.size(); ++i) lv->ids.emplace(lv->parts[i], i);
      levels_.push_back(std::move(lv));
    }
    return *levels_[n];
  }

  std::mutex mu_;
  std::vector<std::unique_ptr<Level>> levels_;
  std::unordered_map<std::uint64_t, std::unique_ptr<std::vector<std::uint32_t>>> joins_;
  std::unordered_map<std::uint64_t, std::unique_ptr<std::vector<std::uint32_t>>> scales_;
};

}  // namespace m0n
