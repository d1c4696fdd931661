#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ordtop/coordset.hpp"
#include "ordtop/point.hpp"

namespace ordtop {

// Product of coordinate sets; one disjunct of a region normal form.
struct Box {
  std::vector<CoordSet> coords;

  bool operator==(const Box&) const = default;
  auto operator<=>(const Box&) const = default;
  bool contains(const Point& p) const;
  // Componentwise containment; sufficient for absorption.
  bool inside(const Box& o) const;
};

// Per-coordinate domain: the carrier slice plus the order closure of
// subsets along that coordinate.
struct CoordDom {
  CoordSet full;
  std::function<CoordSet(const CoordSet&)> up;    // smallest upper set containing S
  std::function<CoordSet(const CoordSet&)> down;  // smallest lower set containing S
};

// The closure table of one space family: coordinate domains, the carrier
// constraint, and the box-level order closures. Every builtin family
// supplies one; adding a family means supplying a table.
struct FamilyCtx {
  std::string name;
  size_t arity = 1;
  std::vector<CoordDom> doms;

  // Monotone-tuple carrier: edge (i, j) constrains coord_i <= coord_j.
  // Empty means the carrier is the full product.
  std::vector<std::pair<size_t, size_t>> mono_edges;

  // Non-componentwise order closures (the Johnstone family).
  std::function<std::vector<Box>(const Box&)> custom_up, custom_down;

  bool has_carrier_constraint() const { return !mono_edges.empty(); }
  bool point_in_carrier(const Point& p) const;
  bool point_in_domain(const Point& p) const;
  // Does the box contain a carrier point?
  bool box_feasible(const Box& b) const;
  // Pointwise-least / greatest carrier element of the box, as a box of
  // singletons-or-segments; nullopt when infeasible. Only meaningful for
  // monotone-constrained families.
  std::optional<Box> carrier_min_corner(const Box& b) const;
  std::optional<Box> carrier_down_corner(const Box& b) const;

  Box full_box() const;
};

using Family = std::shared_ptr<const FamilyCtx>;

// Finite union of boxes over a family, kept canonical (feasible boxes
// only, absorbed, sorted, deduplicated). Membership, intersection,
// containment, emptiness and complement are exact for every family that
// ships a closure table.
class Region {
 public:
  Region() = default;

  static Region empty(Family f);
  static Region full(Family f);
  static Region make(Family f, std::vector<Box> boxes);
  static Region of_box(Family f, Box b);
  static Region of_set(Family f, CoordSet s);  // arity-1 families
  static Region of_point(Family f, const Point& p);

  const Family& family() const { return fam_; }
  const std::vector<Box>& boxes() const { return boxes_; }

  bool member(const Point& p) const;
  bool is_empty() const { return boxes_.empty(); }
  bool is_full() const;

  Region unions(const Region& o) const;
  Region intersect(const Region& o) const;
  Region complement() const;  // within the family's domain product
  Region minus(const Region& o) const;
  bool subset_of(const Region& o) const;
  bool same_set(const Region& o) const;

  // Order closures via the family table.
  Region up_closure() const;
  Region down_closure() const;

  // Arity-1 view of the whole region as a single coordinate set.
  CoordSet as_coordset() const;

  std::string str() const;

 private:
  Region(Family f, std::vector<Box> boxes);
  void normalize();
  Family fam_;
  std::vector<Box> boxes_;
};

void require_same_family(const Region& a, const Region& b);

// ---------------------------------------------------------------------
// Parametric regions: numeric slots may be affine in a parameter n.
// These carry the exact chain-limit rules.

// Denotes (base ∩ {m : m >= clip(n)}) ∪ sticky extras.
struct ParamCoord {
  CoordSet base;
  std::optional<Aff> clip;
  uint8_t sticky = 0;

  static ParamCoord fixed(CoordSet s) { return {std::move(s), std::nullopt, 0}; }
  static ParamCoord tail(Aff a, uint8_t sticky_extras = 0);

  CoordSet at(uint64_t n) const;
  // ⋂ over all n of at(n); exact because a clipped tail with a growing
  // parameter vanishes and everything else is constant.
  CoordSet limit() const;
  uint64_t magnitude() const;
};

struct ParamBox {
  std::vector<ParamCoord> coords;
  Box at(uint64_t n) const;
};

// Union of parametric boxes; each disjunct is descending in n whenever
// its clips are, which the chain constructors verify.
struct ParamRegion {
  Family fam;
  std::vector<ParamBox> boxes;

  Region at(uint64_t n) const;
  Region limit() const;
  uint64_t magnitude() const;
};

// Descending region chain r(0) ⊇ r(1) ⊇ …, with an optional symbolic
// form enabling exact limits.
struct RegionChain {
  Family fam;
  uint64_t start = 0;
  std::function<Region(uint64_t)> eval;
  std::optional<ParamRegion> sym;

  static RegionChain symbolic(ParamRegion pr, uint64_t start = 0);
  static RegionChain opaque(Family f, std::function<Region(uint64_t)> fn, uint64_t start = 0);
};

struct ChainLimit {
  Region value;
  bool exact = false;
  uint64_t bound = 0;
};

// Verifies descent up to `bound` (contract violation otherwise), then
// returns the family-rule limit when a symbolic form is present, else
// the bounded meet flagged inexact (unless the meet bottoms out at ∅).
ChainLimit chain_limit(const RegionChain& chain, uint64_t bound);

}  // namespace ordtop
