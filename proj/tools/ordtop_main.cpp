#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ordtop/corpus.hpp"
#include "ordtop/errors.hpp"
#include "ordtop/dot.hpp"
#include "ordtop/text.hpp"

using namespace ordtop;
using ordtop::parse_error;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;  // property or expectation failure
constexpr int kExitUsage = 2;    // unknown space/property or bad data

uint64_t default_bound() {
  if (const char* env = std::getenv("ORDTOP_BOUND")) {
    try {
      return std::stoull(env);
    } catch (...) {
    }
  }
  return 64;
}

// A space argument is a builtin name or a path to a poset/space file.
SpacePtr load_space(const std::string& arg) {
  try {
    return builtin_space(arg);
  } catch (const parse_error&) {
  }
  std::ifstream in(arg);
  if (!in) throw parse_error("not a builtin space and not a readable file: " + arg);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_finite_space(ss.str(), arg);
}

void print_entry(const ReportEntry& e) {
  std::cout << "space: " << e.id << "\nproperty: " << e.property << "\nvalue: "
            << (e.value ? "true" : "false") << "\ncertainty: " << e.certainty << "\n";
  if (!e.outcome.empty()) std::cout << "outcome: " << e.outcome << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ordtop: a workbench for order-topological properties of non-Hausdorff spaces"};
  app.require_subcommand(1);
  uint64_t bound = default_bound();
  uint64_t seed = 2026;
  app.add_option("--bound", bound, "generator scan bound")->capture_default_str();
  app.add_option("--seed", seed, "seed for randomized sweeps")->capture_default_str();

  auto* list_cmd = app.add_subcommand("list", "list builtin spaces and registered assertions");
  list_cmd->fallthrough();

  std::string desc_space;
  auto* describe_cmd = app.add_subcommand("describe", "describe a space");
  describe_cmd->fallthrough();
  describe_cmd->add_option("space", desc_space)->required();

  std::string check_space, check_prop;
  bool check_json = false;
  auto* check_cmd = app.add_subcommand("check", "check a property of a space");
  check_cmd->fallthrough();
  check_cmd->add_option("space", check_space)->required();
  check_cmd->add_option("property", check_prop)->required();
  check_cmd->add_flag("--json", check_json);

  std::string sc_space, sc_id, sc_mode = "dstar";
  auto* scenario_cmd = app.add_subcommand("scenario", "run a registered scenario");
  scenario_cmd->fallthrough();
  scenario_cmd->add_option("space", sc_space)->required();
  scenario_cmd->add_option("id", sc_id)->required();
  scenario_cmd->add_option("--mode", sc_mode, "dstar|strongd");

  std::string oracle_space, oracle_op;
  auto* oracle_cmd = app.add_subcommand("oracle", "run an operation against its brute-force twin");
  oracle_cmd->fallthrough();
  oracle_cmd->add_option("space", oracle_space)->required();
  oracle_cmd->add_option("op", oracle_op, "scott-opens|specialization|smyth|dstar-differential")->required();

  std::string replay_file;
  auto* replay_cmd = app.add_subcommand("replay", "re-verify a certificate file");
  replay_cmd->fallthrough();
  replay_cmd->add_option("certificate", replay_file)->required();

  std::string dot_space;
  auto* dot_cmd = app.add_subcommand("export-dot", "emit the specialization Hasse diagram");
  dot_cmd->fallthrough();
  dot_cmd->add_option("space", dot_space)->required();

  bool report_json_flag = false, report_timing = false;
  auto* report_cmd = app.add_subcommand("report", "run the whole corpus");
  report_cmd->fallthrough();
  report_cmd->add_flag("--json", report_json_flag);
  report_cmd->add_flag("--timing", report_timing, "include wall-clock timings (breaks byte-stability)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*list_cmd) {
      std::cout << "builtin spaces:\n";
      for (const std::string& n : builtin_names()) std::cout << "  " << n << '\n';
      std::cout << "registered assertions (space property):\n";
      for (const auto& [id, prop] : builtin_properties()) std::cout << "  " << id << ' ' << prop << '\n';
      std::cout << "scenarios (space id):\n";
      for (const CorpusEntry& e : corpus_entries())
        for (const Scenario& sc : e.scenarios) std::cout << "  " << sc.space_name << ' ' << sc.id << '\n';
      return kExitOk;
    }
    if (*describe_cmd) {
      std::cout << load_space(desc_space)->describe();
      return kExitOk;
    }
    if (*check_cmd) {
      bool is_builtin = true;
      SpacePtr space;
      try {
        space = builtin_space(check_space);
      } catch (const parse_error&) {
        is_builtin = false;
        space = load_space(check_space);
      }
      ReportEntry e;
      if (is_builtin && check_prop == "all") {
        auto entries = check_space_assertions(check_space, bound, seed);
        bool all_ok = true;
        for (const ReportEntry& ent : entries) {
          print_entry(ent);
          std::cout << '\n';
          if (!ent.matched) all_ok = false;
        }
        return all_ok ? kExitOk : kExitFailure;
      }
      if (is_builtin) {
        e = check_builtin_property(check_space, check_prop, bound, seed);
      } else if (const auto* fs = dynamic_cast<const FiniteSpace*>(space.get())) {
        // a space loaded from file: run the finite checkers directly
        Verdict v;
        std::string p = check_prop;
        if (p == "dstar") v = check_dstar_finite(*fs);
        else if (p == "strongd" || p == "strong-d") v = check_strong_d_finite(*fs);
        else if (p == "dspace" || p == "d-space") v = check_d_space_finite(*fs);
        else if (p == "wf" || p == "well-filtered") v = check_wf_finite(*fs);
        else if (p == "weakwf" || p == "weak-well-filtered") v = check_weak_wf_finite(*fs);
        else if (p == "coherent") v = check_coherent_finite(*fs);
        else if (p == "dcpo") v = Verdict::proven("dcpo", is_dcpo(fs->poset()), Json{{"kind", "finite-dcpo"}});
        else if (p == "cdcpo" || p == "consistent-dcpo")
          v = Verdict::proven("consistent-dcpo", is_consistent_dcpo(fs->poset()),
                              Json{{"kind", "finite-consistent-dcpo"}});
        else throw parse_error("unknown property: " + check_prop);
        e.id = check_space;
        e.property = v.property;
        e.value = v.value;
        e.certainty = v.certainty_str();
        e.certificate = v.certificate;
        e.matched = true;
      } else {
        e = check_builtin_property(check_space, check_prop, bound, seed);
      }
      if (check_json) {
        Json j;
        j["id"] = e.id;
        j["property"] = e.property;
        j["value"] = e.value;
        if (!e.outcome.empty()) j["outcome"] = e.outcome;
        j["certainty"] = e.certainty;
        j["certificate"] = e.certificate;
        std::cout << j.dump(2) << '\n';
      } else {
        print_entry(e);
      }
      // a refuted property exits 1 even when the refutation was expected
      return e.value && e.matched ? kExitOk : kExitFailure;
    }
    if (*scenario_cmd) {
      if (sc_mode != "dstar" && sc_mode != "strongd") throw parse_error("mode must be dstar or strongd");
      const Scenario& sc = find_scenario(sc_space, sc_id);
      SpacePtr space = builtin_space(sc_space);
      ScenarioMode mode = sc_mode == "dstar" ? ScenarioMode::DStar : ScenarioMode::StrongD;
      Verdict v = check_scenario(*space, sc, mode, bound);
      std::cout << v.outcome;
      if (v.outcome == "certified-counterexample" && sc.witness)
        std::cout << ", witness template " << sc.witness->str();
      if (v.certificate.contains("witness_index"))
        std::cout << ", witness index " << v.certificate["witness_index"];
      std::cout << "\ncertainty: " << v.certainty_str() << '\n';
      const std::string& expected = mode == ScenarioMode::DStar ? sc.expect_dstar : sc.expect_strongd;
      return expected.empty() || v.outcome == expected ? kExitOk : kExitFailure;
    }
    if (*oracle_cmd) {
      SpacePtr space = load_space(oracle_space);
      const auto* fs = dynamic_cast<const FiniteSpace*>(space.get());
      if (!fs) throw parse_error("oracle operations need a finite space");
      bool agree = false;
      if (oracle_op == "scott-opens") {
        // brute force: subsets that are upper sets
        std::vector<Mask> brute;
        Mask all = fs->poset().all_mask();
        for (Mask s = 0;; ++s) {
          if (fs->poset().is_upset(s)) brute.push_back(s);
          if (s == all) break;
        }
        agree = brute == fs->opens();
      } else if (oracle_op == "specialization") {
        agree = true;
        for (size_t i = 0; i < fs->size() && agree; ++i)
          for (size_t j = 0; j < fs->size() && agree; ++j)
            if (fs->specialization_leq_opens(i, j) != fs->poset().leq(i, j)) agree = false;
      } else if (oracle_op == "smyth") {
        agree = smyth_specialization_matches(*fs);
      } else if (oracle_op == "dstar-differential") {
        agree = differential_dstar(fs->poset());
      } else {
        throw parse_error("unknown oracle op: " + oracle_op);
      }
      std::cout << oracle_op << ": " << (agree ? "agree" : "DISAGREE") << '\n';
      return agree ? kExitOk : kExitFailure;
    }
    if (*replay_cmd) {
      std::ifstream in(replay_file);
      if (!in) throw parse_error("cannot read certificate file: " + replay_file);
      Json cert = Json::parse(in);
      if (cert.contains("certificate")) cert = cert["certificate"];
      bool ok = replay_certificate(cert);
      std::cout << (ok ? "replay ok\n" : "replay FAILED\n");
      return ok ? kExitOk : kExitFailure;
    }
    if (*dot_cmd) {
      export_dot(load_space(dot_space), std::cout, bound);
      return kExitOk;
    }
    if (*report_cmd) {
      Report rep = run_corpus(bound, seed, report_timing);
      if (report_json_flag)
        std::cout << report_json(rep).dump(2) << '\n';
      else
        std::cout << report_table(rep);
      return rep.all_matched ? kExitOk : kExitFailure;
    }
  } catch (const parse_error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
