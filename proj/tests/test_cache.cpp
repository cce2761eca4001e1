#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include "support.hpp"

using namespace m0n;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("m0n_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const std::string& args, const fs::path& out) {
  std::string cmd = std::string(M0N_CLI) + " " + args + " > " + out.string() + " 2>/dev/null";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST(Cache, RepTableRoundTrip) {
  auto dir = fresh_dir("rep");
  EngineConfig cfg;
  cfg.cap_n = 8;
  cfg.cap_k = 6;
  cfg.cache_dir = dir;
  CacheOutcome first, second;
  RepTable a = rep_table_cached(cfg, &first);
  RepTable b = rep_table_cached(cfg, &second);
  EXPECT_FALSE(first.hit);
  EXPECT_TRUE(second.hit);
  for (int n = 1; n <= 8; ++n) {
    EXPECT_EQ(a.qplus[n], b.qplus[n]);
    EXPECT_EQ(a.q[n], b.q[n]);
    EXPECT_EQ(a.p[n], b.p[n]);
  }
  EXPECT_TRUE(fs::exists(dir / "qplus_8.json"));
  EXPECT_TRUE(fs::exists(dir / "q_8.json"));
  EXPECT_TRUE(fs::exists(dir / "p_8.json"));
  fs::remove_all(dir);
}

TEST(Cache, DominatingCapsAreReusedAndSmallerAreNot) {
  auto dir = fresh_dir("dom");
  EngineConfig cfg;
  cfg.cap_n = 8;
  cfg.cap_k = 6;
  cfg.cache_dir = dir;
  rep_table_cached(cfg);
  auto smaller = load_rep_table(dir, 7, 3);
  ASSERT_TRUE(smaller.has_value());
  RepTable direct = compute_rep_table(7, 3);
  for (int n = 2; n <= 7; ++n) EXPECT_EQ(smaller->q[n], direct.q[n]);
  EXPECT_FALSE(load_rep_table(dir, 9, 6).has_value());
  EXPECT_FALSE(load_rep_table(dir, 8, 7).has_value());
  fs::remove_all(dir);
}

TEST(Cache, CorruptAndStaleFilesAreIgnored) {
  auto dir = fresh_dir("corrupt");
  EngineConfig cfg;
  cfg.cap_n = 6;
  cfg.cap_k = 4;
  cfg.cache_dir = dir;
  RepTable good = rep_table_cached(cfg);
  {
    std::ofstream(dir / "q_5.json") << "{not json";
  }
  EXPECT_FALSE(load_rep_table(dir, 6, 4).has_value());
  CacheOutcome oc;
  RepTable again = rep_table_cached(cfg, &oc);
  EXPECT_FALSE(oc.hit);
  EXPECT_EQ(again.q[5], good.q[5]);
  auto j = nlohmann::json::parse(slurp(dir / "p_6.json"));
  j["engine_version"] = "0.0.0";
  atomic_write(dir / "p_6.json", j.dump());
  EXPECT_FALSE(load_rep_table(dir, 6, 4).has_value());
  fs::remove_all(dir);
}

TEST(Cache, InvariantPrefixReuse) {
  auto dir = fresh_dir("inv");
  EngineConfig cfg;
  cfg.cap_n = 30;
  cfg.cap_k = 28;
  cfg.cache_dir = dir;
  InvariantTables big = invariant_tables_cached(cfg);
  auto small = load_invariant_tables(dir, 20, 5);
  ASSERT_TRUE(small.has_value());
  InvariantTables direct = compute_invariant_tables(20, 5);
  EXPECT_EQ(small->q, direct.q);
  EXPECT_EQ(small->p, direct.p);
  EXPECT_EQ(small->qplus, direct.qplus);
  EXPECT_FALSE(load_invariant_tables(dir, 31, 5).has_value());
  fs::remove_all(dir);
}

TEST(Emit, FormatsAreDeterministic) {
  InvariantTables t = compute_invariant_tables(6, 4);
  Table tab = inv_summary(t);
  for (auto fmt : {EmitFormat::Csv, EmitFormat::Json, EmitFormat::Markdown})
    EXPECT_EQ(tab.render(fmt), inv_summary(compute_invariant_tables(6, 4)).render(fmt));
  std::string csv = tab.render(EmitFormat::Csv);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,k,p,q");
  EXPECT_NE(csv.find("6,2,2,7"), std::string::npos);
  EXPECT_NE(tab.render(EmitFormat::Markdown).find("|---|"), std::string::npos);
  EXPECT_THROW(parse_emit_format("xml"), std::invalid_argument);
}

TEST(Config, Validation) {
  EngineConfig c;
  c.workers = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.workers = 1;
  c.cap_n = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Cli, RepRerunIsByteIdentical) {
  auto dir = fresh_dir("cli");
  std::string args = "--cap-n 8 --cap-k 6 --cache-dir " + dir.string() + " --emit csv rep";
  ASSERT_EQ(run(args, dir / "out1.txt"), 0);
  ASSERT_EQ(run(args, dir / "out2.txt"), 0);
  EXPECT_EQ(slurp(dir / "out1.txt"), slurp(dir / "out2.txt"));
  EXPECT_FALSE(slurp(dir / "out1.txt").empty());
  fs::remove_all(dir);
}

TEST(Cli, EnvironmentOverrides) {
  auto dir = fresh_dir("env");
  ASSERT_EQ(run("--emit csv inv", dir / "flag.txt"), 0);
  std::string env = "M0N_CAP_N=7 M0N_CAP_K=5 M0N_EMIT=csv ";
  std::string cmd = env + std::string(M0N_CLI) + " inv > " + (dir / "env.txt").string();
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  std::string out = slurp(dir / "env.txt");
  EXPECT_NE(out.find("7,5,0,1"), std::string::npos);
  EXPECT_EQ(out.find("8,"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Cli, ExitCodes) {
  auto dir = fresh_dir("exit");
  // Conjecture reports are data: exit 0.
  EXPECT_EQ(run("--emit json conj --suite ultra", dir / "ultra.txt"), 0);
  EXPECT_NE(slurp(dir / "ultra.txt").find("\"witness_n\":6"), std::string::npos);
  EXPECT_EQ(run("oracle --n-max 6", dir / "oracle.txt"), 0);
  EXPECT_EQ(run("manin --n-max 8", dir / "manin.txt"), 0);
  // A tampered but well-formed cache entry is an internal inconsistency: nonzero exit.
  auto cache = dir / "cache";
  ASSERT_EQ(run("--cap-n 6 --cap-k 4 --cache-dir " + cache.string() + " rep", dir / "rep.txt"), 0);
  auto j = nlohmann::json::parse(slurp(cache / "q_5.json"));
  j["value"]["terms"][0]["c"] = "2";
  atomic_write(cache / "q_5.json", j.dump());
  EXPECT_EQ(run("--cache-dir " + cache.string() + " oracle --n-max 6", dir / "bad.txt"), 3);
  EXPECT_NE(run("--workers 0 inv", dir / "w.txt"), 0);
  fs::remove_all(dir);
}
