#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ordtop/coordset.hpp"

namespace ordtop {

// A coded carrier element: a short tuple of coordinates. Finite spaces
// and the one-dimensional families use a single coordinate; product,
// Johnstone and function-space families use longer tuples.
class Point {
 public:
  Point() = default;
  static Point nat(uint64_t n) { return Point({Coord::nat(n)}); }
  static Point extra(Extra e) { return Point({Coord::extra(e)}); }
  static Point pair(Coord a, Coord b) { return Point({a, b}); }
  static Point tuple(std::vector<Coord> cs) { return Point(std::move(cs)); }

  const std::vector<Coord>& coords() const { return coords_; }
  size_t arity() const { return coords_.size(); }
  const Coord& at(size_t i) const { return coords_.at(i); }

  bool operator==(const Point&) const = default;
  auto operator<=>(const Point&) const = default;

  std::string str() const;

 private:
  explicit Point(std::vector<Coord> cs) : coords_(std::move(cs)) {}
  std::vector<Coord> coords_;
};

// αn + β with α ∈ {0, 1}; the only parameter shapes the chain templates
// of the source examples need.
struct Aff {
  uint32_t coef = 0;
  uint64_t off = 0;

  static Aff constant(uint64_t c) { return {0, c}; }
  static Aff var_plus(uint64_t c) { return {1, c}; }

  uint64_t at(uint64_t n) const { return static_cast<uint64_t>(coef) * n + off; }
  bool is_const() const { return coef == 0; }

  bool operator==(const Aff&) const = default;
  std::string str() const;
};

// One coordinate of a parametric point: constant or affine in n.
struct CoordTemplate {
  // Constant coordinates may be extras; affine ones are naturals.
  std::optional<Coord> constant;
  std::optional<Aff> aff;

  static CoordTemplate fixed(Coord c) { return {c, std::nullopt}; }
  static CoordTemplate affine(Aff a) {
    if (a.is_const()) return fixed(Coord::nat(a.off));
    return {std::nullopt, a};
  }

  Coord at(uint64_t n) const { return constant ? *constant : Coord::nat(aff->at(n)); }
  bool is_const() const { return constant.has_value(); }
  std::string str() const;
};

// Parametric point n ↦ d(n); the generator form of a directed family.
struct PointTemplate {
  std::vector<CoordTemplate> coords;

  static PointTemplate fixed(const Point& p);
  static PointTemplate nat_affine(Aff a) { return {{CoordTemplate::affine(a)}}; }

  Point at(uint64_t n) const;
  bool is_const() const;
  // Largest structural constant; used to size stabilization windows.
  uint64_t magnitude() const;
  std::string str() const;
};

}  // namespace ordtop
