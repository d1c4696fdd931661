#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace ordtop {

// Named non-numeric carrier elements shared by the builtin families.
enum class Extra : uint8_t { Inf = 0, A = 1, W1 = 2, W2 = 3 };
constexpr int kExtraCount = 4;

inline uint8_t extra_bit(Extra e) { return static_cast<uint8_t>(1u << static_cast<int>(e)); }
std::string extra_name(Extra e);

// One coordinate value: a natural number or a named extra element.
class Coord {
 public:
  static Coord nat(uint64_t n);
  static Coord extra(Extra e);

  bool is_nat() const { return raw_ < kExtraBase; }
  bool is_extra() const { return !is_nat(); }
  uint64_t nat() const;
  Extra extra() const;

  bool operator==(const Coord&) const = default;
  auto operator<=>(const Coord&) const = default;

  std::string str() const;

 private:
  static constexpr uint64_t kExtraBase = ~uint64_t{0} - kExtraCount;
  uint64_t raw_ = 0;
};

// Subset of ℕ ∪ extras whose natural part is eventually constant:
// membership below `cutoff` is stored explicitly, membership at or above
// `cutoff` equals `tail`. Closed under union, intersection, difference
// and complement, with decidable emptiness, min and finiteness. This is
// the canonical form finite_set ∪ tail that every coordinate of every
// builtin family reduces to.
class CoordSet {
 public:
  CoordSet() = default;  // empty

  static CoordSet empty() { return {}; }
  static CoordSet nat_full();               // all of ℕ, no extras
  static CoordSet nat_tail(uint64_t k);     // {n : n >= k}
  static CoordSet nat_range(uint64_t lo, uint64_t hi);  // [lo, hi)
  static CoordSet nat_single(uint64_t n);
  static CoordSet nat_finite(std::initializer_list<uint64_t> xs);
  static CoordSet nat_finite(const std::vector<uint64_t>& xs);
  static CoordSet extras_only(uint8_t mask);
  static CoordSet single(Coord c);

  CoordSet with_extras(uint8_t mask) const;
  CoordSet without_extras() const;

  bool contains(Coord c) const;
  bool contains_nat(uint64_t n) const;
  bool contains_extra(Extra e) const { return (extras_ & extra_bit(e)) != 0; }
  uint8_t extras() const { return extras_; }

  CoordSet unions(const CoordSet& o) const;
  CoordSet intersect(const CoordSet& o) const;
  CoordSet minus(const CoordSet& o) const;
  // Complement within `domain` (use the family coordinate domain).
  CoordSet complement_in(const CoordSet& domain) const;

  bool is_empty() const;
  bool nat_part_empty() const;
  bool nat_part_infinite() const { return tail_; }
  // Number of naturals in the set; nullopt when infinite.
  std::optional<uint64_t> nat_count() const;
  std::optional<uint64_t> nat_min() const;
  // Largest natural member; nullopt when the natural part is empty or infinite.
  std::optional<uint64_t> nat_max() const;
  // Least natural member that is >= k, if any.
  std::optional<uint64_t> nat_min_at_least(uint64_t k) const;
  // Largest natural member <= k, if any.
  std::optional<uint64_t> nat_max_at_most(uint64_t k) const;

  bool subset_of(const CoordSet& o) const;
  bool operator==(const CoordSet& o) const = default;
  // Total order for canonical sorting of normal forms.
  auto operator<=>(const CoordSet& o) const = default;

  uint64_t cutoff() const { return bits_.size(); }
  bool tail() const { return tail_; }

  // Members below `hi` plus, when the tail is on, a note that it continues.
  std::vector<uint64_t> sample_nats(uint64_t hi) const;

  std::string str() const;

 private:
  std::vector<bool> bits_;  // membership for n < bits_.size()
  bool tail_ = false;       // membership for n >= bits_.size()
  uint8_t extras_ = 0;
  void normalize();
  static void align(CoordSet& a, CoordSet& b);
};

}  // namespace ordtop
