#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "m0n/invariant.hpp"
#include "m0n/recursion.hpp"

namespace m0n {

enum class EmitFormat { Json, Csv, Markdown };

inline EmitFormat parse_emit_format(const std::string& s) {
  if (s == "json") return EmitFormat::Json;
  if (s == "csv") return EmitFormat::Csv;
  if (s == "markdown" || s == "md") return EmitFormat::Markdown;
  throw std::invalid_argument("unknown emit format: " + s);
}

struct EngineConfig {
  int cap_n = 12;
  int cap_k = 10;
  std::filesystem::path cache_dir;  // empty disables the cache
  int workers = 1;
  EmitFormat emit = EmitFormat::Markdown;

  void validate() const {
    if (cap_n < 1) throw std::invalid_argument("cap_n must be >= 1");
    if (cap_k < 0) throw std::invalid_argument("cap_k must be >= 0");
    if (workers < 1) throw std::invalid_argument("workers must be >= 1");
  }
};

/// Writes to a sibling temporary file, then renames over the target.
inline void atomic_write(const std::filesystem::path& path, const std::string& contents) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
    if (!out.flush()) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

inline std::optional<nlohmann::json> read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception&) {
    std::cerr << "warning: corrupt cache file " << path << ", recomputing\n";
    return std::nullopt;
  }
}

// ---------------------------------------------------------------------------------------------
// Equivariant table cache: qplus_<n>.json, q_<n>.json, p_<n>.json

namespace detail {
inline nlohmann::json wrap_entry(const IntSym& f, int n) {
  return {{"engine_version", kEngineVersion}, {"n", n}, {"value", f.to_json()}};
}

/// Parsed value truncated to the requested caps, or nothing if the file is missing, stale,
/// corrupt or has caps that do not dominate.
inline std::optional<IntSym> load_entry(const std::filesystem::path& path, int n, int cap_n, int cap_k) {
  auto j = read_json_file(path);
  if (!j) return std::nullopt;
  try {
    if (j->at("engine_version").get<std::string>() != kEngineVersion || j->at("n").get<int>() != n)
      return std::nullopt;
    const auto& v = j->at("value");
    if (v.at("cap_n").get<int>() < cap_n || v.at("cap_k").get<int>() < cap_k) return std::nullopt;
    return IntSym::from_json(v).truncated(cap_n, cap_k);
  } catch (const std::exception& e) {
    std::cerr << "warning: unreadable cache file " << path << " (" << e.what() << "), recomputing\n";
    return std::nullopt;
  }
}
}  // namespace detail

inline std::filesystem::path rep_cache_file(const std::filesystem::path& dir, const std::string& kind, int n) {
  return dir / (kind + "_" + std::to_string(n) + ".json");
}

inline void save_rep_table(const RepTable& table, const std::filesystem::path& dir) {
  for (int n = 1; n <= table.cap_n; ++n) {
    atomic_write(rep_cache_file(dir, "qplus", n), detail::wrap_entry(table.qplus[n], n).dump() + "\n");
    if (n >= 2) atomic_write(rep_cache_file(dir, "q", n), detail::wrap_entry(table.q[n], n).dump() + "\n");
    if (n >= 3) atomic_write(rep_cache_file(dir, "p", n), detail::wrap_entry(table.p[n], n).dump() + "\n");
  }
}

/// Complete table from the cache if every entry is present and dominates (cap_n, cap_k).
inline std::optional<RepTable> load_rep_table(const std::filesystem::path& dir, int cap_n, int cap_k) {
  RepTable t(cap_n, cap_k);
  for (int n = 1; n <= cap_n; ++n) {
    auto qp = detail::load_entry(rep_cache_file(dir, "qplus", n), n, cap_n, cap_k);
    if (!qp) return std::nullopt;
    t.qplus[n] = std::move(*qp);
    if (n >= 2) {
      auto q = detail::load_entry(rep_cache_file(dir, "q", n), n, cap_n, cap_k);
      if (!q) return std::nullopt;
      t.q[n] = std::move(*q);
    }
    if (n >= 3) {
      auto p = detail::load_entry(rep_cache_file(dir, "p", n), n, cap_n, cap_k);
      if (!p) return std::nullopt;
      t.p[n] = std::move(*p);
    }
  }
  return t;
}

struct CacheOutcome {
  bool hit = false;
};

inline RepTable rep_table_cached(const EngineConfig& cfg, CacheOutcome* outcome = nullptr) {
  if (!cfg.cache_dir.empty()) {
    if (auto t = load_rep_table(cfg.cache_dir, cfg.cap_n, cfg.cap_k)) {
      if (outcome) outcome->hit = true;
      return std::move(*t);
    }
  }
  PlethysmMemo memo;
  RepTable t = compute_rep_table(cfg.cap_n, cfg.cap_k, {cfg.workers, &memo});
  if (!cfg.cache_dir.empty()) save_rep_table(t, cfg.cache_dir);
  return t;
}

// ---------------------------------------------------------------------------------------------
// Invariant cache: inv_q.json (qplus and q), inv_p.json

inline void save_invariant_tables(const InvariantTables& tab, const std::filesystem::path& dir) {
  nlohmann::json q = {{"engine_version", kEngineVersion},
                      {"cap_n", tab.cap_n},
                      {"cap_k", tab.cap_k},
                      {"qplus", tab.qplus.to_json()},
                      {"q", tab.q.to_json()}};
  nlohmann::json p = {
      {"engine_version", kEngineVersion}, {"cap_n", tab.cap_n}, {"cap_k", tab.cap_k}, {"p", tab.p.to_json()}};
  atomic_write(dir / "inv_q.json", q.dump() + "\n");
  atomic_write(dir / "inv_p.json", p.dump() + "\n");
}

/// Prefix reuse: a cached table with larger caps is truncated to the request.
inline std::optional<InvariantTables> load_invariant_tables(const std::filesystem::path& dir, int cap_n, int cap_k) {
  auto q = read_json_file(dir / "inv_q.json");
  auto p = read_json_file(dir / "inv_p.json");
  if (!q || !p) return std::nullopt;
  try {
    for (const auto* j : {&*q, &*p}) {
      if (j->at("engine_version").get<std::string>() != kEngineVersion) return std::nullopt;
      if (j->at("cap_n").get<int>() < cap_n || j->at("cap_k").get<int>() < cap_k) return std::nullopt;
    }
    InvariantTables t(cap_n, cap_k);
    t.qplus = IBiSeries::from_json(q->at("qplus")).truncated(cap_n, cap_k);
    t.q = IBiSeries::from_json(q->at("q")).truncated(cap_n, cap_k);
    t.p = IBiSeries::from_json(p->at("p")).truncated(cap_n, cap_k);
    return t;
  } catch (const std::exception& e) {
    std::cerr << "warning: unreadable invariant cache (" << e.what() << "), recomputing\n";
    return std::nullopt;
  }
}

inline InvariantTables invariant_tables_cached(const EngineConfig& cfg, CacheOutcome* outcome = nullptr) {
  if (!cfg.cache_dir.empty()) {
    if (auto t = load_invariant_tables(cfg.cache_dir, cfg.cap_n, cfg.cap_k)) {
      if (outcome) outcome->hit = true;
      return std::move(*t);
    }
  }
  InvariantTables t = compute_invariant_tables(cfg.cap_n, cfg.cap_k);
  if (!cfg.cache_dir.empty()) save_invariant_tables(t, cfg.cache_dir);
  return t;
}

// ---------------------------------------------------------------------------------------------
// Emitters

/// A rectangular table of preformatted cells.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::string render(EmitFormat fmt) const {
    std::ostringstream out;
    switch (fmt) {
      case EmitFormat::Csv:
        out << join(columns, ",") << "\n";
        for (const auto& r : rows) out << join(r, ",") << "\n";
        break;
      case EmitFormat::Markdown: {
        out << "| " << join(columns, " | ") << " |\n|";
        for (std::size_t i = 0; i < columns.size(); ++i) out << "---|";
        out << "\n";
        for (const auto& r : rows) out << "| " << join(r, " | ") << " |\n";
        break;
      }
      case EmitFormat::Json: {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : rows) {
          nlohmann::json o = nlohmann::json::object();
          for (std::size_t i = 0; i < columns.size(); ++i) o[columns[i]] = r[i];
          arr.push_back(o);
        }
        out << arr.dump(1) << "\n";
        break;
      }
    }
    return out.str();
  }

 private:
  static std::string join(const std::vector<std::string>& v, const char* sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += sep;
      s += v[i];
    }
    return s;
  }
};

/// Rows (n, k, number of Schur terms, multiplicity of s_(n)) for Q_n and P_n.
inline Table rep_summary(const RepTable& table) {
  Table t{{"n", "k", "q_schur_terms", "q_trivial", "p_schur_terms", "p_trivial"}, {}};
  for (int n = 2; n <= table.cap_n; ++n) {
    IntSym qs = to_schur(table.q[n]);
    IntSym ps = n >= 3 ? to_schur(table.p[n]) : IntSym(Basis::S, table.cap_n, table.cap_k);
    for (int k = 0; k <= std::min(table.cap_k, n - 2); ++k) {
      IntSym qk = qs.t_slice(k), pk = ps.t_slice(k);
      t.rows.push_back({std::to_string(n), std::to_string(k), std::to_string(qk.term_count()),
                        to_decimal(qk.coeff(Partition{n}, 0)), std::to_string(pk.term_count()),
                        to_decimal(pk.coeff(Partition{n}, 0))});
    }
  }
  return t;
}

/// Rows (n, k, p_{n,k}, q_{n,k}).
inline Table inv_summary(const InvariantTables& tab) {
  Table t{{"n", "k", "p", "q"}, {}};
  for (int n = 3; n <= tab.cap_n; ++n)
    for (int k = 0; k <= std::min(tab.cap_k, n - 2); ++k)
      t.rows.push_back({std::to_string(n), std::to_string(k), to_decimal(tab.p.coeff(n, k)),
                        to_decimal(tab.q.coeff(n, k))});
  return t;
}

/// Multiplicity grid of s_lambda in Q_n (or P_n): one row per lambda, one column per k.
inline Table multiplicity_grid(const IntSym& f, int n, int cap_k) {
  Table t;
  t.columns.push_back("lambda");
  for (int k = 0; k <= cap_k; ++k) t.columns.push_back("k=" + std::to_string(k));
  IntSym s = to_schur(f);
  for (const auto& lam : partitions_of(n)) {
    std::vector<std::string> row{lam.to_string()};
    bool any = false;
    for (int k = 0; k <= cap_k; ++k) {
      Integer c = s.coeff(lam, k);
      any = any || !vanishes(c);
      row.push_back(to_decimal(c));
    }
    if (any) t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace m0n
