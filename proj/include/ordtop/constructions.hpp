#pragma once

#include <optional>

#include "ordtop/families.hpp"
#include "ordtop/spaces.hpp"

namespace ordtop {

// Total map between spaces: a per-point table over a finite domain, or
// one of the named symbolic rules for the builtin pairs.
class MapTable {
 public:
  enum class Rule { Table, Identity, Constant, ConstEmbed, EvalAt };

  static MapTable table(FiniteSpacePtr dom, SpacePtr cod, std::vector<Point> graph);
  static MapTable identity(SpacePtr s);
  static MapTable constant(SpacePtr dom, SpacePtr cod, Point value);
  // ξ : Y → [X, Y] sending y to the constant map at y (Y = Σℕ).
  static MapTable const_embed(SpacePtr y, std::shared_ptr<const IsbellNatSpace> fx);
  // F : [X, Y] → Y evaluating at the domain point with index x0.
  static MapTable eval_at(std::shared_ptr<const IsbellNatSpace> fx, SpacePtr y, size_t x0);

  Rule rule() const { return rule_; }
  const SpacePtr& dom() const { return dom_; }
  const SpacePtr& cod() const { return cod_; }
  const std::vector<Point>& graph() const { return graph_; }

  Point apply(const Point& p) const;
  Region preimage(const Region& r) const;

  std::string describe() const;

 private:
  MapTable() = default;
  Rule rule_ = Rule::Table;
  SpacePtr dom_, cod_;
  std::vector<Point> graph_;  // Table: image per finite-domain index
  Point value_;               // Constant
  size_t x0_ = 0;             // EvalAt
  std::shared_ptr<const IsbellNatSpace> fx_;
};

struct ContinuityResult {
  bool ok = false;
  std::optional<Region> witness;  // a codomain open with a non-open preimage
};

// Finite domains: exact (preimages of subbasic opens determine
// continuity, and preimages of tails stabilize beyond the largest image
// coordinate). Symbolic rules: preimages of the sampled subbasis, whose
// shape is uniform in the sample parameter.
ContinuityResult is_continuous(const MapTable& f, uint64_t bound);

struct RetractionPair {
  MapTable section;     // s : X → Y
  MapTable retraction;  // r : Y → X, r∘s = id_X
};

struct RetractionCheck {
  bool ok = false;
  std::string detail;
};

RetractionCheck verify_retraction(const RetractionPair& pair, uint64_t bound);

// Relative topology on a region of an Alexandrov-style base (finite
// spaces handle both cases as well). Throws contract_error when the
// region fails the saturation/closedness precondition.
SpacePtr saturated_subspace(SpacePtr space, const Region& r);
SpacePtr closed_subspace(SpacePtr space, const Region& r);
FiniteSpacePtr finite_subspace(const FiniteSpace& space, Mask carrier);

// Product: finite×finite extensionally (capped at 16 points), otherwise
// box regions over Σℕ/finite factors.
SpacePtr product_space(SpacePtr a, SpacePtr b);

// Smyth power space with the upper Vietoris topology.
struct SmythFinite {
  FiniteSpacePtr space;
  std::vector<Mask> compacts;  // base masks, indexed by Q-point
};
SmythFinite smyth_finite(const FiniteSpacePtr& x);
SpacePtr smyth_power(SpacePtr x);
// Specialization from the □U subbasis equals reverse containment; exact
// sweep over all pairs of compact saturated sets, no opens materialized.
bool smyth_specialization_matches(const FiniteSpace& x);

// Isbell function space for finite X and Y, extensionally.
struct IsbellFinite {
  FiniteSpacePtr space;
  std::vector<std::vector<size_t>> maps;  // Q-point index -> image per X index
};
IsbellFinite isbell_finite(const FiniteSpacePtr& x, const FiniteSpacePtr& y);

// The two named maps realizing Y as a retract of [X, Y].
RetractionPair isbell_retraction(SpacePtr y, std::shared_ptr<const IsbellNatSpace> fx, size_t x0);

}  // namespace ordtop
