#include "ordtop/point.hpp"

#include <sstream>

namespace ordtop {

std::string Point::str() const {
  if (coords_.size() == 1) return coords_[0].str();
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < coords_.size(); ++i) {
    if (i) os << ',';
    os << coords_[i].str();
  }
  os << ')';
  return os.str();
}

std::string Aff::str() const {
  if (coef == 0) return std::to_string(off);
  if (off == 0) return "n";
  return "n+" + std::to_string(off);
}

std::string CoordTemplate::str() const { return constant ? constant->str() : aff->str(); }

PointTemplate PointTemplate::fixed(const Point& p) {
  PointTemplate t;
  for (const Coord& c : p.coords()) t.coords.push_back(CoordTemplate::fixed(c));
  return t;
}

Point PointTemplate::at(uint64_t n) const {
  std::vector<Coord> cs;
  cs.reserve(coords.size());
  for (const CoordTemplate& c : coords) cs.push_back(c.at(n));
  return Point::tuple(std::move(cs));
}

bool PointTemplate::is_const() const {
  for (const CoordTemplate& c : coords)
    if (!c.is_const()) return false;
  return true;
}

uint64_t PointTemplate::magnitude() const {
  uint64_t m = 0;
  for (const CoordTemplate& c : coords) {
    if (c.constant && c.constant->is_nat()) m = std::max(m, c.constant->nat());
    if (c.aff) m = std::max(m, c.aff->off);
  }
  return m;
}

std::string PointTemplate::str() const {
  if (coords.size() == 1) return coords[0].str();
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < coords.size(); ++i) {
    if (i) os << ',';
    os << coords[i].str();
  }
  os << ')';
  return os.str();
}

}  // namespace ordtop
