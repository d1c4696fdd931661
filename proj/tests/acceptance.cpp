// Acceptance suite: runs each criterion at its pinned tolerance and
// prints one pass/fail line per criterion. Exact equality everywhere; no
// tolerances are deferred.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "ordtop/catalog.hpp"
#include "ordtop/corpus.hpp"
#include "ordtop/errors.hpp"
#include "ordtop/text.hpp"

using namespace ordtop;

namespace {

constexpr uint64_t kBound = 64;
constexpr uint64_t kSeed = 2026;
constexpr int kRandomPosets = 500;
constexpr int kRetractionPairs = 100;
constexpr int kRegionPairs = 10'000;
constexpr int kOmegaSamples = 10'000;

void report(int criterion, const char* what, bool ok) {
  printf("criterion %d: %-58s %s\n", criterion, what, ok ? "PASS" : "FAIL");
  CHECK(ok);
}

std::vector<Mask> brute_scott_opens(const FinitePoset& p) {
  std::vector<Mask> out;
  auto directed = p.directed_masks();
  Mask all = p.all_mask();
  for (Mask u = 0;; ++u) {
    bool open = p.is_upset(u);
    for (Mask d : directed) {
      if (!open) break;
      auto sup = p.sup_mask(d);
      if (sup && ((u >> *sup) & 1) && (d & u) == 0) open = false;
    }
    if (open) out.push_back(u);
    if (u == all) break;
  }
  return out;
}

bool expect_row(const Report& rep, const std::string& id, const std::string& property,
                bool value, const std::string& certainty, const std::string& outcome = "") {
  for (const ReportEntry& e : rep.entries)
    if (e.id == id && e.property == property)
      return e.value == value && e.certainty == certainty && (outcome.empty() || e.outcome == outcome) &&
             e.matched;
  return false;
}

bool expect_witness(const Report& rep, const std::string& id, const std::string& property,
                    const std::string& witness_template) {
  for (const ReportEntry& e : rep.entries)
    if (e.id == id && e.property == property)
      return e.certificate.contains("witness_template") &&
             e.certificate["witness_template"] == witness_template;
  return false;
}

}  // namespace

TEST_CASE("criterion 1: corpus verdicts reproduce the registered classifications") {
  Report rep = run_corpus(kBound, kSeed);

  bool sigma = expect_row(rep, "sigma-nat", "dstar", true, "cited-proof;bounded(64)") &&
               expect_row(rep, "sigma-nat", "d-space", false, "certified-counterexample") &&
               expect_row(rep, "sigma-nat", "dstar-scenario:s2", true, "proven", "holds-witness");
  report(1, "sigma-nat: dstar cited+swept, d-space refuted via no-sup", sigma);

  bool plus_a = expect_row(rep, "nat-plus-a", "consistent-dcpo", true, "cited-proof;bounded(8)") &&
                expect_row(rep, "nat-plus-a", "dstar-scenario:s1", false, "certified-counterexample",
                           "certified-counterexample");
  report(1, "nat-plus-a: consistent dcpo fragments, dstar counterexample", plus_a);

  bool johnstone =
      expect_row(rep, "johnstone", "strongd-scenario:s1", false, "certified-counterexample",
                 "certified-counterexample") &&
      expect_witness(rep, "johnstone", "strongd-scenario:s1", "(n,inf)") &&
      expect_row(rep, "johnstone", "dstar", true, "cited-proof;bounded(64)") &&
      expect_row(rep, "johnstone", "dstar-scenario:s1", true, "proven", "not-applicable");
  report(1, "johnstone: strong-d counterexample with top-row witness, dstar clean", johnstone);

  report(1, "product of sigma-nat and sierpinski: certified counterexample",
         expect_row(rep, "prod-nat-two", "dstar-scenario:s1", false, "certified-counterexample",
                    "certified-counterexample") &&
             expect_witness(rep, "prod-nat-two", "dstar-scenario:s1", "(n,0)"));

  bool isbell = expect_row(rep, "isbell-two-nat", "dstar-scenario:s1", false,
                           "certified-counterexample", "certified-counterexample") &&
                expect_row(rep, "isbell-two-nat", "retract-of-function-space", true,
                           "cited-proof;bounded(32)");
  report(1, "function space: certified counterexample, retraction verified", isbell);

  bool two_tops = expect_row(rep, "nat-two-tops", "dcpo", false, "certified-counterexample") &&
                  expect_row(rep, "nat-two-tops", "q-carrier-closed", true, "proven");
  report(1, "nat-two-tops: no sup for the chain, Q carrier closed under limits", two_tops);

  bool cof = expect_row(rep, "cofinite-nat-iso", "t1", true, "cited-proof;bounded(64)") &&
             expect_row(rep, "cofinite-nat-iso", "dstar", true, "cited-proof;bounded(64)") &&
             expect_row(rep, "cofinite-nat-iso", "qv-dstar", false, "certified-counterexample");
  report(1, "cofinite+isolated: T1 and dstar pass, Smyth power refuted", cof);

  bool disc = expect_row(rep, "discrete-nat", "qv-dstar", true, "cited-proof;bounded(64)");
  report(1, "discrete carrier: Smyth dstar cited with a clean sweep", disc);

  report(1, "all corpus expectations met", rep.all_matched);
}

TEST_CASE("criterion 2: oracle equivalence on the catalog and random posets") {
  std::vector<FinitePoset> instances;
  for (size_t n = 1; n <= 5; ++n)
    for (FinitePoset& p : poset_catalog(n)) instances.push_back(std::move(p));
  size_t catalog_size = instances.size();
  for (int i = 0; i < kRandomPosets; ++i) instances.push_back(random_poset(8, kSeed + i));

  bool scott_ok = true, spec_ok = true, smyth_ok = true, diff_ok = true, lemma_ok = true;
  for (const FinitePoset& p : instances) {
    auto space = FiniteSpace::scott(p, "acc");
    if (space->opens() != brute_scott_opens(p)) scott_ok = false;
    for (size_t i = 0; i < p.size(); ++i)
      for (size_t j = 0; j < p.size(); ++j)
        if (space->specialization_leq_opens(i, j) != p.leq(i, j)) spec_ok = false;
    if (!smyth_specialization_matches(*space)) smyth_ok = false;
    if (!differential_dstar(p)) diff_ok = false;
    Mask all = p.all_mask();
    for (Mask a = 0; a <= all && lemma_ok; ++a) {
      if (!p.is_downset(a)) continue;
      for (Mask k = 0; k <= all; ++k) {
        if (!p.is_upset(k)) continue;
        if (!check_lemma_downset_union(p, a, k)) {
          lemma_ok = false;
          break;
        }
      }
    }
  }
  report(2, "scott opens equal brute force (catalog + 500 random)", scott_ok);
  report(2, "specialization from opens equals the order", spec_ok);
  report(2, "smyth specialization equals reverse containment", smyth_ok);
  report(2, "characterization routes agree (differential dstar)", diff_ok);
  report(2, "downset-union identity holds for all (A, K)", lemma_ok);
  report(2, "instance count: full catalog plus 500 seeded posets",
         catalog_size == size_t(1 + 2 + 5 + 16 + 63) && instances.size() == catalog_size + kRandomPosets);
}

TEST_CASE("criterion 3: triviality theorems as proven verdicts") {
  bool ok = true;
  for (size_t n = 1; n <= 5; ++n) {
    for (const FinitePoset& p : poset_catalog(n)) {
      auto space = FiniteSpace::scott(p, "acc");
      for (auto check : {check_d_space_finite, check_strong_d_finite, check_dstar_finite,
                         check_weak_wf_finite, check_wf_finite, check_coherent_finite}) {
        Verdict v = check(*space);
        if (!v.value || v.certainty_str() != "proven") ok = false;
      }
    }
  }
  report(3, "six properties proven true on every catalog space", ok);
}

TEST_CASE("criterion 4: preservation suites") {
  bool subspaces_ok = true;
  for (size_t n = 1; n <= 5; ++n) {
    for (const FinitePoset& p : poset_catalog(n)) {
      auto space = FiniteSpace::scott(p, "acc");
      if (!check_dstar_finite(*space).value) continue;
      Mask all = p.all_mask();
      for (Mask a = 1; a <= all && a != 0; ++a) {
        bool relevant = p.is_upset(a) || p.is_downset(a);
        if (!relevant) continue;
        if (!check_dstar_finite(*finite_subspace(*space, a)).value) subspaces_ok = false;
      }
    }
  }
  report(4, "saturated and closed subspaces stay dstar (exhaustive to 5)", subspaces_ok);

  bool retracts_ok = true;
  int built = 0;
  for (int i = 0; i < kRetractionPairs; ++i) {
    FinitePoset p = random_poset(6, kSeed * 31 + i);
    auto space = FiniteSpace::scott(p, "acc");
    std::vector<size_t> e = random_monotone_idempotent(p, kSeed + i);
    Mask fix = 0;
    for (size_t k = 0; k < p.size(); ++k)
      if (e[k] == k) fix |= Mask{1} << k;
    if (fix == 0) continue;
    auto sub = finite_subspace(*space, fix);
    std::vector<size_t> keep;
    for (size_t k = 0; k < p.size(); ++k)
      if ((fix >> k) & 1) keep.push_back(k);
    std::vector<Point> sect, retr;
    for (size_t k : keep) sect.push_back(Point::nat(k));
    for (size_t k = 0; k < p.size(); ++k)
      retr.push_back(Point::nat(std::find(keep.begin(), keep.end(), e[k]) - keep.begin()));
    RetractionPair pair{MapTable::table(sub, space, sect), MapTable::table(space, sub, retr)};
    ++built;
    if (!verify_retraction(pair, 8).ok) retracts_ok = false;
    if (!check_dstar_finite(*sub).value) retracts_ok = false;
  }
  report(4, "100 seeded retraction pairs verified, images stay dstar",
         retracts_ok && built == kRetractionPairs);
}

TEST_CASE("criterion 5: region algebra laws") {
  // finite carriers up to 12 points against explicit set computation
  bool finite_ok = true;
  {
    auto space = FiniteSpace::scott(FinitePoset::chain(12), "c12");
    std::mt19937_64 rng(kSeed);
    auto to_set = [&](const Region& r) {
      std::set<uint64_t> s;
      for (uint64_t i = 0; i < 12; ++i)
        if (r.member(Point::nat(i))) s.insert(i);
      return s;
    };
    for (int t = 0; t < kRegionPairs; ++t) {
      Region r1 = space->region_of_mask(rng() & 0xFFF);
      Region r2 = space->region_of_mask(rng() & 0xFFF);
      std::set<uint64_t> s1 = to_set(r1), s2 = to_set(r2);
      std::set<uint64_t> inter;
      for (uint64_t v : s1)
        if (s2.count(v)) inter.insert(v);
      if (to_set(r1.intersect(r2)) != inter) finite_ok = false;
      if (r1.subset_of(r2) != std::includes(s2.begin(), s2.end(), s1.begin(), s1.end()))
        finite_ok = false;
      if (r1.is_empty() != s1.empty()) finite_ok = false;
      std::set<uint64_t> comp;
      for (uint64_t i = 0; i < 12; ++i)
        if (!s1.count(i)) comp.insert(i);
      if (to_set(r1.complement()) != comp) finite_ok = false;
    }
  }
  report(5, "10^4 random region pairs match explicit sets (<=12 points)", finite_ok);

  // membership homomorphism over the ω families
  bool omega_ok = true;
  {
    std::mt19937_64 rng(kSeed + 1);
    struct Fixture {
      std::vector<Region> subs;
      std::vector<Point> pts;
    };
    std::vector<Fixture> fixtures;
    for (const char* n : {"sigma-nat", "nat-plus-a", "nat-two-tops", "johnstone", "prod-nat-two",
                          "isbell-two-nat", "cofinite-nat-iso", "discrete-nat"}) {
      auto sp = builtin_space(n);
      fixtures.push_back({sp->subbasic_opens(8), sp->sample_points(9)});
    }
    int checked = 0;
    while (checked < kOmegaSamples) {
      const Fixture& fx = fixtures[rng() % fixtures.size()];
      const Region& r1 = fx.subs[rng() % fx.subs.size()];
      const Region& r2 = fx.subs[rng() % fx.subs.size()];
      const Point& p = fx.pts[rng() % fx.pts.size()];
      if (r1.intersect(r2).member(p) != (r1.member(p) && r2.member(p))) omega_ok = false;
      if (r1.unions(r2).member(p) != (r1.member(p) || r2.member(p))) omega_ok = false;
      if (r1.complement().member(p) != !r1.member(p)) omega_ok = false;
      ++checked;
    }
  }
  report(5, "membership homomorphism over 10^4 sampled omega points", omega_ok);

  // chain limit containment for the corpus chains
  bool chains_ok = true;
  for (const CorpusEntry& entry : corpus_entries()) {
    for (const Scenario& sc : entry.scenarios) {
      if (sc.compact_form()) {
        RegionChain rc = RegionChain::symbolic(*sc.chain_k, sc.start);
        ChainLimit lim = chain_limit(rc, kBound);
        for (uint64_t n = sc.start; n <= sc.start + kBound; n += 7)
          if (!lim.value.subset_of(rc.eval(n))) chains_ok = false;
        continue;
      }
      SpacePtr space = builtin_space(sc.space_name);
      auto sym = space->up_template(*sc.chain);
      if (!sym) continue;
      RegionChain rc = RegionChain::symbolic(*sym, sc.start);
      ChainLimit lim = chain_limit(rc, kBound);
      if (!lim.exact) chains_ok = false;
      for (uint64_t n = sc.start; n <= sc.start + kBound; n += 7)
        if (!lim.value.subset_of(rc.eval(n))) chains_ok = false;
    }
  }
  report(5, "chain limits sit inside every chain member (corpus chains)", chains_ok);
}

TEST_CASE("criterion 6: determinism and replay") {
  Report r1 = run_corpus(kBound, kSeed);
  Report r2 = run_corpus(kBound, kSeed);
  report(6, "two runs produce byte-identical json reports",
         report_json(r1).dump() == report_json(r2).dump());

  bool replays = true;
  size_t count = 0;
  for (const ReportEntry& e : r1.entries) {
    ++count;
    if (!replay_certificate(e.certificate)) {
      replays = false;
      printf("  replay failed: %s/%s\n", e.id.c_str(), e.property.c_str());
    }
  }
  report(6, "100% of emitted certificates replay", replays && count == r1.entries.size());
}
