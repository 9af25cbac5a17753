#include "qlzero/runner.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

using namespace qlzero;

namespace {

RunConfig config(std::vector<std::string> suites) {
  RunConfig c;
  c.suites = std::move(suites);
  c.jobs = 2;
  return c;
}

}  // namespace

TEST(Runner, HeckeN3HasSevenPassingEntries) {
  RunConfig c = config({"hecke"});
  c.n = 3;
  auto rep = run(c);
  ASSERT_EQ(rep.records.size(), 7u);
  EXPECT_TRUE(rep.all_pass());
  EXPECT_EQ(rep.count(Status::pass), 7u);
}

TEST(Runner, RhofAtQ3IsAConfigError) {
  RunConfig c = config({"rhof"});
  c.n = 2;
  c.p = "q3";
  try {
    plan(c);
    FAIL() << "expected a config error";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("fusion requires p=q^4"), std::string::npos);
  }
}

TEST(Runner, EmptySuiteListGivesEmptyReport) {
  auto rep = run(config({}));
  EXPECT_TRUE(rep.records.empty());
  EXPECT_TRUE(rep.all_pass());
}

TEST(Runner, ValidationRules) {
  RunConfig bad = config({"nosuch"});
  EXPECT_THROW(plan(bad), ConfigError);
  RunConfig n = config({"prop8"});
  n.n = 7;
  EXPECT_THROW(plan(n), ConfigError);
  RunConfig w = config({"prop9"});
  w.window = "-3..1";
  EXPECT_THROW(plan(w), ConfigError);
  RunConfig w2 = config({"hecke"});
  w2.window = "0..-2";
  EXPECT_THROW(plan(w2), ConfigError);
  RunConfig p = config({"affine"});
  p.p = "q9";
  EXPECT_THROW(plan(p), ConfigError);
  RunConfig ok = config({"chevalley"});
  ok.p = "q4";
  EXPECT_NO_THROW(plan(ok));
}

TEST(Runner, GenericSampleIsDeterministic) {
  EXPECT_EQ(p_exponents("generic-sample", 7), p_exponents("generic-sample", 7));
  for (int k : p_exponents("generic-sample", 3)) EXPECT_NE(k, 4);
}

TEST(Runner, ConfigRoundTrip) {
  RunConfig c = config({"hecke", "rhof"});
  c.n = 2;
  c.window = "-2..0";
  c.p = "q4";
  c.cache_dir = "/tmp/x";
  c.fast_prescreen = true;
  RunConfig back = RunConfig::from_json(c.to_json());
  EXPECT_EQ(back.to_json(), c.to_json());
}

TEST(Runner, DeterministicAcrossRunsAndThreadCounts) {
  RunConfig c = config({"prop9", "hecke"});
  c.n = 2;
  c.window = "-2..0";
  auto a = run(c);
  c.jobs = 1;
  auto b = run(c);
  EXPECT_EQ(a.jsonl(false), b.jsonl(false));
}

TEST(Runner, PrescreenKeepsVerdicts) {
  RunConfig c = config({"rhosg", "prop8"});
  c.n = 2;
  c.window = "-2..0";
  auto plain = run(c);
  c.fast_prescreen = true;
  auto screened = run(c);
  ASSERT_EQ(plain.records.size(), screened.records.size());
  for (std::size_t i = 0; i < plain.records.size(); ++i) {
    EXPECT_EQ(plain.records[i].id, screened.records[i].id);
    EXPECT_EQ(plain.records[i].status, screened.records[i].status);
    EXPECT_EQ(screened.records[i].detail["prescreen"], "pass");
  }
}

TEST(Runner, WarmCacheGivesIdenticalReport) {
  const auto dir = std::filesystem::temp_directory_path() / "qlzero_runner_cache";
  std::filesystem::remove_all(dir);
  RunConfig c = config({"characters"});
  c.window = "-2..0";
  c.cache_dir = dir.string();
  auto cold = run(c);
  auto warm = run(c);
  EXPECT_TRUE(cold.all_pass());
  EXPECT_EQ(cold.jsonl(false), warm.jsonl(false));
  EXPECT_TRUE(std::filesystem::exists(dir / "chars"));
  std::filesystem::remove_all(dir);
}

TEST(Runner, LocalityLedgerRecord) {
  RunConfig c = config({"hecke", "locality"});
  c.n = 2;
  auto rep = run(c);
  ASSERT_FALSE(rep.records.empty());
  EXPECT_EQ(rep.records.back().id, "locality/ledger");
  EXPECT_EQ(rep.records.back().status, Status::pass);
}

TEST(Report, JsonLinesOnePerRecord) {
  RunConfig c = config({"hecke"});
  c.n = 2;
  auto rep = run(c);
  const std::string text = rep.jsonl();
  std::size_t lines = 0;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line); ++lines) {
    auto j = nlohmann::json::parse(line);
    for (const char* k : {"id", "name", "anchor", "status", "residual", "detail", "wall_ms"})
      EXPECT_TRUE(j.contains(k)) << k;
  }
  EXPECT_EQ(lines, rep.records.size());
}
