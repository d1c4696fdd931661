#pragma once

#include <string>
#include <vector>

#include "ordtop/checkers.hpp"

namespace ordtop {

// One registered example: the space, its scenarios, and the assertions
// (with expected classifications) the run must reproduce.
struct CorpusEntry {
  std::string id;
  std::string anchor;  // citation key, validated against the bundled registry
  std::vector<Scenario> scenarios;
};

const std::vector<CorpusEntry>& corpus_entries();
const std::vector<std::string>& anchor_registry();

// Scenario lookup for the CLI; throws parse_error when absent.
const Scenario& find_scenario(const std::string& space_id, const std::string& scenario_id);

struct ReportEntry {
  std::string id;
  std::string property;
  bool value = false;
  std::string outcome;
  std::string certainty;
  Json certificate;
  std::string anchor;
  int64_t elapsed_ms = 0;
  std::string expected;  // expected classification token
  bool matched = false;
};

struct Report {
  int schema_version = 1;
  uint64_t bound = 64;
  uint64_t seed = 0;
  std::vector<ReportEntry> entries;
  bool all_matched = true;
};

// Evaluates every corpus entry. Timing is normalized to zero unless
// requested, keeping default reports byte-identical across runs.
Report run_corpus(uint64_t bound, uint64_t seed, bool with_timing = false);

Json report_json(const Report& r);
std::string report_table(const Report& r);

// Re-verifies an emitted certificate without re-running the search that
// produced it; returns false when the evidence no longer checks out.
bool replay_certificate(const Json& cert);

// Evaluate one named assertion (CLI `check <space> <property>`).
// Throws parse_error for combinations the corpus does not define.
ReportEntry check_builtin_property(const std::string& space_id, const std::string& property,
                                   uint64_t bound, uint64_t seed);

// All assertions registered for one space (the assertion pack).
std::vector<ReportEntry> check_space_assertions(const std::string& space_id, uint64_t bound,
                                                uint64_t seed);

// Supported (space, property) pairs.
std::vector<std::pair<std::string, std::string>> builtin_properties();

}  // namespace ordtop
