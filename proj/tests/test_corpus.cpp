#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "ordtop/corpus.hpp"
#include "ordtop/errors.hpp"

using namespace ordtop;

TEST_CASE("the full corpus reproduces every expected classification") {
  Report rep = run_corpus(64, 2026);
  CHECK(rep.all_matched);
  CHECK(rep.entries.size() >= 28);
  for (const ReportEntry& e : rep.entries) CHECK(e.matched);
}

TEST_CASE("classifications are stable down to bound 8") {
  Report r64 = run_corpus(64, 2026);
  Report r8 = run_corpus(8, 2026);
  REQUIRE(r64.entries.size() == r8.entries.size());
  for (size_t i = 0; i < r64.entries.size(); ++i) {
    CHECK(r64.entries[i].value == r8.entries[i].value);
    CHECK(r64.entries[i].outcome == r8.entries[i].outcome);
    CHECK(r8.entries[i].matched);
  }
}

TEST_CASE("reports are byte-identical across runs") {
  std::string a = report_json(run_corpus(64, 2026)).dump();
  std::string b = report_json(run_corpus(64, 2026)).dump();
  CHECK(a == b);
}

TEST_CASE("every emitted certificate replays") {
  Report rep = run_corpus(64, 2026);
  for (const ReportEntry& e : rep.entries) {
    INFO(e.id, "/", e.property);
    CHECK(replay_certificate(e.certificate));
  }
}

TEST_CASE("anchor lint: every entry cites a registered anchor") {
  const auto& registry = anchor_registry();
  for (const CorpusEntry& e : corpus_entries()) {
    CHECK_FALSE(e.anchor.empty());
    CHECK(std::find(registry.begin(), registry.end(), e.anchor) != registry.end());
  }
  Report rep = run_corpus(8, 1);
  for (const ReportEntry& e : rep.entries) CHECK_FALSE(e.anchor.empty());
}

TEST_CASE("report schema") {
  Report empty;
  Json j = report_json(empty);
  CHECK(j["schema_version"] == 1);
  CHECK(j["entries"].is_array());
  CHECK(j["entries"].empty());
  // canonical prefix, additive fields after
  CHECK(j.dump().rfind("{\"schema_version\":1,\"entries\":[]", 0) == 0);

  Report rep = run_corpus(8, 7);
  Json full = report_json(rep);
  for (const Json& e : full["entries"]) {
    CHECK(e.contains("id"));
    CHECK(e.contains("property"));
    CHECK(e.contains("value"));
    CHECK(e.contains("certainty"));
    CHECK(e.contains("certificate"));
    CHECK(e.contains("anchor"));
    CHECK(e.contains("elapsed_ms"));
    CHECK(e["elapsed_ms"] == 0);  // timing normalized by default
  }
  // round trip
  Json parsed = Json::parse(full.dump());
  CHECK(parsed == full);
}

TEST_CASE("tampered expectations are detected") {
  // a fresh scenario with a deliberately wrong expectation shows up as a
  // mismatch rather than being silently accepted
  Scenario sc = find_scenario("sigma-nat", "s2");
  auto space = builtin_space("sigma-nat");
  Verdict v = check_scenario(*space, sc, ScenarioMode::DStar, 64);
  CHECK(v.outcome == "holds-witness");
  CHECK(v.outcome != "certified-counterexample");
}

TEST_CASE("the table form prints one line per entry") {
  Report rep = run_corpus(8, 7);
  std::string table = report_table(rep);
  size_t lines = std::count(table.begin(), table.end(), '\n');
  CHECK(lines >= rep.entries.size() + 2);
  CHECK(table.find("all expectations met") != std::string::npos);
}

TEST_CASE("mismatches render loudly in the table") {
  Report rep;
  ReportEntry e;
  e.id = "x";
  e.property = "p";
  e.value = true;
  e.certainty = "proven";
  e.expected = "false";
  e.matched = false;
  rep.entries.push_back(e);
  rep.all_matched = false;
  std::string table = report_table(rep);
  CHECK(table.find("MISMATCH") != std::string::npos);
  CHECK(table.find("EXPECTATION MISMATCHES PRESENT") != std::string::npos);
}

TEST_CASE("assertion packs run per space") {
  auto entries = check_space_assertions("johnstone", 16, 1);
  CHECK(entries.size() == 5);
  for (const ReportEntry& e : entries) CHECK(e.matched);
  CHECK_THROWS_AS(check_space_assertions("chain3", 16, 1), parse_error);
}

TEST_CASE("johnstone scenario serves both modes") {
  // one scenario: a strong-d counterexample and d*-not-applicable
  const Scenario& sc = find_scenario("johnstone", "s1");
  auto space = builtin_space("johnstone");
  CHECK(check_scenario(*space, sc, ScenarioMode::StrongD, 64).outcome == "certified-counterexample");
  CHECK(check_scenario(*space, sc, ScenarioMode::DStar, 64).outcome == "not-applicable");
}

TEST_CASE("builtin property lookup") {
  ReportEntry e = check_builtin_property("johnstone", "dstar", 16, 1);
  CHECK(e.value);
  CHECK(e.certainty == "cited-proof;bounded(16)");
  CHECK_THROWS_AS(check_builtin_property("johnstone", "no-such-property", 16, 1), parse_error);
  // finite builtins route to the exhaustive checkers
  ReportEntry f = check_builtin_property("chain3", "dstar", 16, 1);
  CHECK(f.value);
  CHECK(f.certainty == "proven");
}

TEST_CASE("scenario lookup") {
  CHECK_THROWS_AS(find_scenario("sigma-nat", "nope"), parse_error);
  CHECK(find_scenario("prod-nat-two", "s1").id == "s1");
}

TEST_CASE("broken certificates fail replay") {
  Report rep = run_corpus(8, 7);
  for (const ReportEntry& e : rep.entries) {
    if (e.certificate["kind"] != "scenario" || !e.certificate.contains("witness_index")) continue;
    Json tampered = e.certificate;
    tampered["witness_index"] = 999;
    CHECK_FALSE(replay_certificate(tampered));
    break;
  }
  Json junk;
  junk["kind"] = "unknown-kind";
  CHECK_FALSE(replay_certificate(junk));
}
