#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ordtop/catalog.hpp"
#include "ordtop/corpus.hpp"
#include "ordtop/errors.hpp"
#include "ordtop/text.hpp"

using namespace ordtop;

TEST_CASE("finite sweeps on tiny spaces") {
  auto two = sigma_two_space();
  Verdict v = check_dstar_finite(*two);
  CHECK(v.value);
  CHECK(v.certainty_str() == "proven");

  auto c3 = FiniteSpace::scott(FinitePoset::chain(3), "c3");
  CHECK(check_d_space_finite(*c3).value);
  CHECK(check_strong_d_finite(*c3).value);
}

TEST_CASE("every small T0 space satisfies the whole property ladder") {
  for (size_t n : {1, 2, 3, 4}) {
    for (const FinitePoset& p : poset_catalog(n)) {
      auto space = FiniteSpace::scott(p, "cat");
      for (auto check : {check_dstar_finite, check_strong_d_finite, check_d_space_finite,
                         check_wf_finite, check_weak_wf_finite, check_coherent_finite}) {
        Verdict v = check(*space);
        CHECK(v.value);
        CHECK(v.certainty_str() == "proven");
      }
    }
  }
}

TEST_CASE("the implication ladder holds on the catalog") {
  for (const FinitePoset& p : poset_catalog(4)) {
    auto space = FiniteSpace::scott(p, "cat");
    bool strong = check_strong_d_finite(*space).value;
    bool dstar = check_dstar_finite(*space).value;
    bool weak = check_weak_wf_finite(*space).value;
    if (strong) CHECK(dstar);
    if (dstar) CHECK(weak);
  }
}

TEST_CASE("filtered families in a finite Q have least members") {
  // the reduction behind the large-Q well-filtered sweep, re-verified by
  // enumeration on every space small enough to enumerate
  for (const FinitePoset& p : poset_catalog(4)) {
    auto space = FiniteSpace::scott(p, "cat");
    auto q = space->compact_saturated();
    if (q.size() > 12) continue;
    for (uint64_t sub = 1; sub < (uint64_t{1} << q.size()); ++sub) {
      std::vector<Mask> fam;
      for (size_t i = 0; i < q.size(); ++i)
        if ((sub >> i) & 1) fam.push_back(q[i]);
      bool filtered = true;
      for (size_t i = 0; i < fam.size() && filtered; ++i)
        for (size_t j = i; j < fam.size() && filtered; ++j) {
          bool refined = false;
          for (Mask k : fam)
            if ((k & ~(fam[i] & fam[j])) == 0) refined = true;
          if (!refined) filtered = false;
        }
      if (!filtered) continue;
      bool has_least = false;
      for (Mask m : fam) {
        bool least = true;
        for (Mask k : fam)
          if ((m & ~k) != 0) least = false;
        if (least) has_least = true;
      }
      CHECK(has_least);
    }
  }
}

TEST_CASE("scenario outcomes reproduce the registered expectations") {
  for (const CorpusEntry& entry : corpus_entries()) {
    for (const Scenario& sc : entry.scenarios) {
      SpacePtr space = builtin_space(sc.space_name);
      if (!sc.expect_dstar.empty())
        CHECK(check_scenario(*space, sc, ScenarioMode::DStar, 64).outcome == sc.expect_dstar);
      if (!sc.expect_strongd.empty())
        CHECK(check_scenario(*space, sc, ScenarioMode::StrongD, 64).outcome == sc.expect_strongd);
    }
  }
}

TEST_CASE("certified counterexamples persist at larger bounds") {
  const Scenario& sc = find_scenario("johnstone", "s1");
  auto space = builtin_space("johnstone");
  for (uint64_t bound : {8, 64, 200}) {
    Verdict v = check_scenario(*space, sc, ScenarioMode::StrongD, bound);
    CHECK(v.outcome == "certified-counterexample");
    CHECK_FALSE(v.value);
  }
}

TEST_CASE("scenario validation errors") {
  auto j = builtin_space("johnstone");
  Scenario bad = find_scenario("johnstone", "s1");
  bad.open_u = parse_region("toprowtail 3", j);  // an upper set that is not open
  CHECK_THROWS_AS(check_scenario(*j, bad, ScenarioMode::StrongD, 16), contract_error);

  Scenario drift = find_scenario("johnstone", "s1");
  drift.chain = PointTemplate{{CoordTemplate::affine(Aff::var_plus(0)), CoordTemplate::fixed(Coord::nat(0))}};
  CHECK_THROWS_AS(check_scenario(*j, drift, ScenarioMode::StrongD, 16), contract_error);

  // witness leaving the cone is a malformed scenario, not a verdict
  Scenario outside = find_scenario("johnstone", "s1");
  outside.witness = PointTemplate{{CoordTemplate::fixed(Coord::nat(0)), CoordTemplate::fixed(Coord::nat(0))}};
  CHECK_THROWS_AS(check_scenario(*j, outside, ScenarioMode::StrongD, 16), contract_error);
}

TEST_CASE("witness search prefers the smallest index") {
  auto nat = builtin_space("sigma-nat");
  Scenario sc = find_scenario("sigma-nat", "s2");
  Verdict v = check_scenario(*nat, sc, ScenarioMode::DStar, 64);
  CHECK(v.outcome == "holds-witness");
  CHECK(v.certificate["witness_index"] == 5);
}

TEST_CASE("characterization condition on the johnstone dcpo") {
  auto j = builtin_space("johnstone");
  // A = the closure of a bounded column piece; every ↑x ∩ A is bounded
  Region a = j->closure(parse_region("finite{(2,0) (2,1) (2,2)}", j));
  REQUIRE(j->is_closed(a));
  CHECK(check_char_condition(*j, a, Point::pair(Coord::nat(1), Coord::nat(1))));
  CHECK(check_char_condition(*j, a, Point::pair(Coord::nat(2), Coord::nat(1))));

  // the whole-column closure includes the top and stays closed
  Region col = j->closure(parse_region("coltail(1,0)", j));
  REQUIRE(j->is_closed(col));
  CHECK(check_char_condition(*j, col, Point::pair(Coord::nat(1), Coord::nat(3))));

  // hypotheses are enforced
  CHECK_THROWS_AS(check_char_condition(*j, Region::full(j->family()), Point::pair(Coord::nat(0), Coord::nat(0))),
                  contract_error);
  auto nat = builtin_space("sigma-nat");
  CHECK_THROWS_AS(
      check_char_condition(*nat, parse_region("finite{0}", nat), Point::nat(0)),
      contract_error);  // not a dcpo
}

TEST_CASE("characterization holds trivially on finite dcpos") {
  for (const FinitePoset& p : poset_catalog(4)) {
    auto space = FiniteSpace::scott(p, "cat");
    for (Mask a : space->closed_sets()) {
      if (a == p.all_mask()) continue;
      Region ra = space->region_of_mask(a);
      for (size_t x = 0; x < p.size(); ++x) CHECK(check_char_condition(*space, ra, Point::nat(x)));
    }
  }
}

TEST_CASE("downset union lemma") {
  FinitePoset c3 = FinitePoset::chain(3);
  CHECK(check_lemma_downset_union(c3, 0b001, 0b100));  // both sides empty

  FinitePoset a2 = FinitePoset::antichain(2);
  CHECK(check_lemma_downset_union(a2, 0b01, 0b11));  // both sides {a}

  // exhaustively over all (A, K) of random small posets
  for (uint64_t seed = 0; seed < 30; ++seed) {
    FinitePoset p = random_poset(6, 500 + seed);
    Mask all = p.all_mask();
    for (Mask a = 0; a <= all; ++a) {
      if (!p.is_downset(a)) continue;
      CHECK(check_lemma_equivalence(p, a));
      for (Mask k = 0; k <= all; ++k) {
        if (!p.is_upset(k)) continue;
        CHECK(check_lemma_downset_union(p, a, k));
      }
    }
  }
}

TEST_CASE("minimal irreducible closed subsets") {
  auto c3 = FiniteSpace::scott(FinitePoset::chain(3), "c3");
  // a point closure meeting a one-member family is already minimal
  Mask pc = c3->closure_mask(0b010);
  CHECK(minimal_irreducible_closed(*c3, {0b010}, pc) == pc);
  // the only closed set meeting {2} in a chain is the whole carrier
  CHECK(minimal_irreducible_closed(*c3, {0b100}, 0b111) == 0b111);

  auto a2 = FiniteSpace::scott(FinitePoset::antichain(2), "a2");
  CHECK(minimal_irreducible_closed(*a2, {Mask{0b01}}, 0b11) == 0b01);

  CHECK_THROWS_AS(minimal_irreducible_closed(*c3, {Mask{0b100}}, 0b001), contract_error);
}

TEST_CASE("differential dstar agreement") {
  for (size_t n : {1, 2, 3, 4, 5}) {
    for (const FinitePoset& p : poset_catalog(n)) CHECK(differential_dstar(p));
  }
  for (uint64_t seed = 0; seed < 100; ++seed) CHECK(differential_dstar(random_poset(8, 10'000 + seed)));
}

TEST_CASE("subspace and retract preservation of dstar on small spaces") {
  for (const FinitePoset& p : poset_catalog(4)) {
    auto space = FiniteSpace::scott(p, "cat");
    if (!check_dstar_finite(*space).value) continue;
    Mask all = p.all_mask();
    for (Mask a = 1; a <= all && a != 0; ++a) {
      if (p.is_upset(a)) CHECK(check_dstar_finite(*finite_subspace(*space, a)).value);
      if (p.is_downset(a)) CHECK(check_dstar_finite(*finite_subspace(*space, a)).value);
    }
  }
}

TEST_CASE("no-dcpo evidence through exact chain limits") {
  // the chain of naturals has no upper bound at all in sigma-nat
  auto nat = builtin_space("sigma-nat");
  auto sym = nat->up_template(PointTemplate::nat_affine(Aff::var_plus(0)));
  REQUIRE(sym);
  ChainLimit lim = chain_limit(RegionChain::symbolic(*sym), 64);
  CHECK(lim.exact);
  CHECK(lim.value.is_empty());

  // under two tops it has exactly the two incomparable upper bounds
  auto tt = builtin_space("nat-two-tops");
  auto sym2 = tt->up_template(PointTemplate::nat_affine(Aff::var_plus(0)));
  REQUIRE(sym2);
  ChainLimit lim2 = chain_limit(RegionChain::symbolic(*sym2), 64);
  CHECK(lim2.exact);
  CHECK(lim2.value.same_set(
      Region::of_set(tt->family(), CoordSet::extras_only(extra_bit(Extra::W1) | extra_bit(Extra::W2)))));
}

TEST_CASE("qv scenario enforces the compact class") {
  auto qv = builtin_space("qv-cofinite-nat-iso");
  Scenario sc = find_scenario("qv-cofinite-nat-iso", "s1");
  // an empty focus compact violates the class
  sc.x_k = Region::empty(cofinite_nat_iso_space()->family());
  CHECK_THROWS_AS(check_scenario(*qv, sc, ScenarioMode::DStar, 16), contract_error);
}
