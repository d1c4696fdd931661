#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ordtop/point.hpp"

namespace ordtop {

using Mask = uint64_t;

// Finite poset on at most 64 elements, stored as up-set bitmasks for
// fast sweeps. Construction verifies reflexivity, antisymmetry and
// transitivity exhaustively and throws on violation.
class FinitePoset {
 public:
  FinitePoset() = default;
  // leq[i*n+j] true iff element i <= element j.
  static FinitePoset from_leq(size_t n, const std::vector<bool>& leq,
                              std::vector<std::string> names = {});
  // Reflexive-transitive closure of cover pairs (a, b) meaning a < b;
  // throws on antisymmetry violations.
  static FinitePoset from_covers(size_t n, const std::vector<std::pair<int, int>>& covers,
                                 std::vector<std::string> names = {});
  static FinitePoset chain(size_t n);
  static FinitePoset antichain(size_t n);

  size_t size() const { return n_; }
  bool leq(size_t a, size_t b) const { return (up_[a] >> b) & 1; }
  Mask up_mask(size_t a) const { return up_[a]; }
  Mask down_mask(size_t a) const { return down_[a]; }
  Mask up_of(Mask s) const;
  Mask down_of(Mask s) const;
  Mask all_mask() const { return n_ == 64 ? ~Mask{0} : ((Mask{1} << n_) - 1); }
  bool is_upset(Mask s) const;
  bool is_downset(Mask s) const;

  const std::string& name_of(size_t i) const { return names_[i]; }
  std::optional<size_t> index_of(const std::string& name) const;

  // Every pair in s has an upper bound in s; empty sets are not directed.
  bool is_directed_mask(Mask s) const;
  std::vector<Mask> directed_masks() const;  // all nonempty directed subsets
  // Least upper bound of s within the poset, if one exists.
  std::optional<size_t> sup_mask(Mask s) const;
  std::optional<size_t> max_element(Mask s) const;

  // Cover relation (transitive reduction) for Hasse output.
  std::vector<std::pair<size_t, size_t>> covers() const;

  // Canonical encoding up to isomorphism (minimum over permutations);
  // only sensible for small sizes.
  std::vector<uint8_t> canonical_code() const;

  bool operator==(const FinitePoset&) const = default;

 private:
  size_t n_ = 0;
  std::vector<Mask> up_, down_;
  std::vector<std::string> names_;
  void check_partial_order(const std::vector<bool>& leq) const;
};

// Directed family: an explicit finite point set or an ascending
// generator template d(n) starting at `start`.
struct DirectedFamily {
  std::vector<Point> explicit_points;
  std::optional<PointTemplate> generator;
  uint64_t start = 0;

  static DirectedFamily of_points(std::vector<Point> ps) { return {std::move(ps), std::nullopt, 0}; }
  static DirectedFamily of_generator(PointTemplate t, uint64_t start = 0) {
    return {{}, std::move(t), start};
  }
  bool is_generator() const { return generator.has_value(); }
};

using LeqOracle = std::function<bool(const Point&, const Point&)>;

// Explicit form: exhaustive pairwise upper-bound check within the set.
// Generator form: chain ascent d(n) <= d(n+1) for start <= n < start+bound.
bool is_directed(const DirectedFamily& fam, const LeqOracle& leq, uint64_t bound);

// Least upper bound of an explicit directed family inside a finite
// poset; indices refer to poset elements. Throws contract_error when the
// input is not directed.
std::optional<size_t> sup_of_directed(const FinitePoset& p, const std::vector<size_t>& fam);

// Exhaustive checks over all directed subsets.
bool is_dcpo(const FinitePoset& p);
bool is_consistent_dcpo(const FinitePoset& p);

}  // namespace ordtop
