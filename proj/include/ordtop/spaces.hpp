#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ordtop/order_core.hpp"
#include "ordtop/region.hpp"

namespace ordtop {

enum class SpaceKind { Finite, Omega, Smyth };

class Space;
using SpacePtr = std::shared_ptr<const Space>;

// A T₀ space the workbench can compute with: an order oracle, an open
// recognizer over the region algebra, and enough sampling hooks for the
// bounded sweeps. Finite spaces are explicit; the ω-presented builtins
// are recognizer-based because their open families need not be countable.
class Space {
 public:
  virtual ~Space() = default;

  const std::string& name() const { return name_; }
  virtual SpaceKind kind() const = 0;
  virtual Family family() const = 0;

  // Specialization order oracle (equals the family order on builtins;
  // the agreement with open-set specialization is a tested invariant).
  virtual bool leq(const Point& p, const Point& q) const = 0;
  virtual bool valid_point(const Point& p) const;

  virtual bool is_open(const Region& r) const = 0;
  bool is_closed(const Region& r) const { return is_open(r.complement()); }

  // Smallest closed superset, exact via the family closure rules.
  virtual Region closure(const Region& r) const = 0;
  // Saturation = up-closure in specialization, uniformly.
  Region saturation(const Region& r) const { return r.up_closure(); }
  Region up_of_point(const Point& p) const;
  Region down_of_point(const Point& p) const;

  // Finitely sampled subbasic opens (all genuinely open) and carrier
  // points, for cross-checks and randomized sweeps.
  virtual std::vector<Region> subbasic_opens(uint64_t bound) const = 0;
  virtual std::vector<Point> sample_points(uint64_t bound) const = 0;

  // Symbolic up-cone of a parametric point, when the family has a rule.
  virtual std::optional<ParamRegion> up_template(const PointTemplate& t) const { (void)t; return std::nullopt; }

  // Family fact: is the specialization poset a dcpo?
  virtual std::optional<bool> dcpo_flag() const { return std::nullopt; }

  // Opens are exactly the upper sets of specialization.
  virtual bool alexandrov() const { return false; }

  virtual std::string describe() const;

 protected:
  explicit Space(std::string name) : name_(std::move(name)) {}

 private:
  std::string name_;
};

// Specialization computed from sampled opens: p <= q iff every sampled
// open containing p contains q. Bounded evidence on ω spaces, exact on
// finite spaces when the full open list is passed.
bool specialization_from_opens(const std::vector<Region>& opens, const Point& p, const Point& q);

struct TopologyReport {
  size_t open_count = 0;
  size_t closed_count = 0;
  std::vector<std::pair<size_t, size_t>> specialization;  // strict pairs i < j
  std::vector<Mask> irreducible_closed;
};

// Finite T₀ space: a poset with its (Alexandrov) up-set topology stored
// extensionally. Loading from an explicit open list validates lattice
// closure and T₀-ness instead of repairing silently.
class FiniteSpace final : public Space, public std::enable_shared_from_this<FiniteSpace> {
 public:
  // Scott topology of a finite poset: opens are exactly the upper sets
  // (the directed-sup condition is vacuous on finite posets).
  static std::shared_ptr<const FiniteSpace> scott(FinitePoset p, std::string name = "scott");
  // Explicit open list over `n` points; throws on malformed input.
  static std::shared_ptr<const FiniteSpace> from_opens(size_t n, std::vector<Mask> opens,
                                                       std::vector<std::string> point_names = {},
                                                       std::string name = "space");

  SpaceKind kind() const override { return SpaceKind::Finite; }
  Family family() const override { return fam_; }
  bool leq(const Point& p, const Point& q) const override;
  bool is_open(const Region& r) const override;
  Region closure(const Region& r) const override;
  std::vector<Region> subbasic_opens(uint64_t bound) const override;
  std::vector<Point> sample_points(uint64_t bound) const override;
  std::optional<bool> dcpo_flag() const override { return true; }
  bool alexandrov() const override { return true; }
  std::string describe() const override;

  const FinitePoset& poset() const { return poset_; }
  size_t size() const { return poset_.size(); }
  const std::vector<Mask>& opens() const { return opens_; }
  std::vector<Mask> closed_sets() const;

  bool is_open_mask(Mask s) const;
  Mask closure_mask(Mask s) const;
  Mask saturation_mask(Mask s) const { return poset_.up_of(s); }
  // Specialization decided from the stored opens; the agreement with the
  // poset order is a tested invariant, not an assumption.
  bool specialization_leq_opens(size_t i, size_t j) const;

  bool is_irreducible_mask(Mask closed) const;
  std::vector<Mask> compact_saturated() const;
  TopologyReport report() const;

  Region region_of_mask(Mask s) const;
  Mask mask_of_region(const Region& r) const;
  Point point(size_t i) const { return Point::nat(i); }

 private:
  FiniteSpace(FinitePoset p, std::vector<Mask> opens, std::string name);
  FinitePoset poset_;
  std::vector<Mask> opens_;
  Family fam_;
};

using FiniteSpacePtr = std::shared_ptr<const FiniteSpace>;

// Scott-openness for a region of an ω-presented builtin (the space's
// recognizer); kept as a named operation to mirror the workbench surface.
inline bool is_scott_open(const Space& s, const Region& r) { return s.is_open(r); }

// The compact-saturated class a Smyth scenario space quantifies over.
enum class CompactClass { AllNonempty, FiniteNonempty };

// Smyth power space of an ω-presented base, as a scenario space: points
// are regions of the base denoting nonempty compact saturated sets; the
// order is reverse containment; opens are □U for base opens U. The
// carrier is never enumerated.
class SmythScenarioSpace final : public Space {
 public:
  SmythScenarioSpace(SpacePtr base, CompactClass cls, std::string name);
  SpaceKind kind() const override { return SpaceKind::Smyth; }
  Family family() const override { return base_->family(); }
  bool leq(const Point&, const Point&) const override;
  bool is_open(const Region& r) const override { return base_->is_open(r); }
  Region closure(const Region&) const override;
  std::vector<Region> subbasic_opens(uint64_t bound) const override { return base_->subbasic_opens(bound); }
  std::vector<Point> sample_points(uint64_t) const override { return {}; }
  std::string describe() const override;

  const SpacePtr& base() const { return base_; }
  CompactClass compact_class() const { return cls_; }
  // Is the region a member of the declared compact-code class?
  bool in_compact_class(const Region& r) const;
  // K1 <= K2 in Q_v iff K2 ⊆ K1.
  bool leq_compact(const Region& k1, const Region& k2) const;

 private:
  SpacePtr base_;
  CompactClass cls_;
};

// Builtin registry: sigma-nat, sigma-two, johnstone, nat-plus-a,
// nat-two-tops, cofinite-nat-iso, discrete-nat, chainN/antichainN,
// prod-nat-two, isbell-two-nat, qv-cofinite-nat-iso, qv-discrete-nat.
// Accepts '_' for '-'. Throws parse_error for unknown names.
SpacePtr builtin_space(const std::string& name);
std::vector<std::string> builtin_names();

}  // namespace ordtop
