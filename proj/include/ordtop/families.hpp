#pragma once

#include "ordtop/spaces.hpp"

namespace ordtop {

// Concrete builders, exposed for constructions and tests; builtin_space()
// routes names to these.
SpacePtr sigma_nat_space();
SpacePtr nat_plus_a_space();
SpacePtr nat_two_tops_space();
SpacePtr cofinite_nat_iso_space();
SpacePtr discrete_nat_space();
SpacePtr johnstone_space();
FiniteSpacePtr sigma_two_space();

// Product of factors, each either the ℕ chain under Scott topology or a
// finite space. Both are Alexandrov, so product opens are exactly the
// componentwise upper sets.
struct ProductFactor {
  FiniteSpacePtr fin;  // null means the Σℕ factor
  static ProductFactor nat() { return {nullptr}; }
  static ProductFactor finite(FiniteSpacePtr f) { return {std::move(f)}; }
};
SpacePtr box_product_space(std::vector<ProductFactor> factors, std::string name);

// TOP(X, Σℕ) under the Isbell topology, X finite: points are monotone
// ℕ-tuples indexed by X's carrier.
class IsbellNatSpace final : public Space {
 public:
  IsbellNatSpace(FiniteSpacePtr domain, std::string name);
  SpaceKind kind() const override { return SpaceKind::Omega; }
  Family family() const override { return fam_; }
  bool leq(const Point& p, const Point& q) const override;  // pointwise oracle
  bool is_open(const Region& r) const override;
  Region closure(const Region& r) const override;
  std::vector<Region> subbasic_opens(uint64_t bound) const override;
  std::vector<Point> sample_points(uint64_t bound) const override;
  std::optional<ParamRegion> up_template(const PointTemplate& t) const override;
  std::optional<bool> dcpo_flag() const override { return false; }
  bool alexandrov() const override { return true; }
  std::string describe() const override;

  const FiniteSpacePtr& domain_space() const { return dom_; }
  // N(H ← {m : m >= k}) for H an upper set of the open-set lattice of X,
  // given as the list of open masks in H.
  Region nhv(const std::vector<Mask>& h, uint64_t k) const;
  // All Scott-open subsets of the lattice O(X) (upper sets of ⊆).
  std::vector<std::vector<Mask>> open_lattice_upsets() const;

 private:
  FiniteSpacePtr dom_;
  Family fam_;
};

SpacePtr isbell_two_nat_space();

}  // namespace ordtop
