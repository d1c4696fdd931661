#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ordtop/constructions.hpp"
#include "ordtop/spaces.hpp"

namespace ordtop {

using Json = nlohmann::ordered_json;

enum class Grade { Proven, Bounded, Certified, Cited };

struct CertaintyPart {
  Grade grade = Grade::Proven;
  uint64_t bound = 0;  // for Bounded
  std::string str() const;
};

// Outcome of one property check: the boolean, a certainty grading, and a
// replayable certificate.
struct Verdict {
  std::string property;
  bool value = true;
  std::string outcome;  // scenarios: holds-witness | certified-counterexample |
                        // bounded-no-counterexample | not-applicable
  std::vector<CertaintyPart> certainty;
  Json certificate;

  std::string certainty_str() const;  // e.g. "cited-proof;bounded(64)"
  static Verdict proven(std::string property, bool value, Json cert);
};

// ---------------------------------------------------------------------
// Finite-space deciders (exhaustive sweeps).

Verdict check_dstar_finite(const FiniteSpace& s);
Verdict check_strong_d_finite(const FiniteSpace& s);
Verdict check_d_space_finite(const FiniteSpace& s);
Verdict check_wf_finite(const FiniteSpace& s);
Verdict check_weak_wf_finite(const FiniteSpace& s);
Verdict check_coherent_finite(const FiniteSpace& s);

// ---------------------------------------------------------------------
// Scenario certification over ω-presented spaces.

enum class ScenarioMode { DStar, StrongD };
std::string mode_str(ScenarioMode m);

struct Scenario {
  std::string id;
  std::string space_name;  // the builtin the scenario runs on
  // Point form.
  std::optional<PointTemplate> chain;  // d(n)
  uint64_t start = 0;
  std::optional<Point> x;
  std::optional<PointTemplate> witness;  // w(n), certifies failure
  // Compact form, for Smyth scenario spaces: the chain, focus and witness
  // are regions of the base space, and the open below means □(open).
  std::optional<ParamRegion> chain_k;
  std::optional<Region> x_k;
  std::optional<ParamRegion> witness_k;

  Region open_u;
  std::string expect_dstar, expect_strongd;  // corpus expectations (may be empty)

  bool compact_form() const { return chain_k.has_value(); }
};

// Decides one scenario instance: premise via the exact chain limit
// (bounded meets over-approximate the limit, so a passing premise stays
// valid), witness search below the bound, then template certification.
// Counterexample certificates quantify over all n: membership of affine
// templates in fixed normal forms is eventually constant with threshold
// at most the largest structural constant, so scanning through the
// stabilization window is exhaustive.
Verdict check_scenario(const Space& space, const Scenario& sc, ScenarioMode mode, uint64_t bound);

// ---------------------------------------------------------------------
// Characterization and lemma cross-checks.

// ↓(↑x ∩ A) closed, for A closed ≠ carrier in a space over a dcpo.
bool check_char_condition(const Space& space, const Region& a, const Point& x);

// ↓(K∩A) = ⋃_{k∈K} ↓(↑k∩A) for A Scott-closed, K an upper set.
bool check_lemma_downset_union(const FinitePoset& p, Mask a, Mask k);
// Both sides of the lemma's equivalence, computed independently, agree.
bool check_lemma_equivalence(const FinitePoset& p, Mask a);

// Minimal irreducible closed subset of C meeting every member of the
// family (exhaustive descent through the closed-set lattice).
Mask minimal_irreducible_closed(const FiniteSpace& s, const std::vector<Mask>& family, Mask c);

// The two characterization routes, computed independently, agree on the
// Scott space of the poset.
bool differential_dstar(const FinitePoset& p);

// Not-a-dcpo certificate: an ascending chain whose upper-bound region
// has no least element.
struct NoDcpoCertificate {
  PointTemplate chain;
  uint64_t start = 0;
  Region upper_bounds;  // exact ⋂ of up-cones
  std::vector<Point> minimal_upper_bounds;
};

}  // namespace ordtop
