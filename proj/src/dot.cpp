#include "ordtop/dot.hpp"

#include <map>

#include "ordtop/errors.hpp"

namespace ordtop {

namespace {

std::string sanitize(const std::string& s) {
  std::string out;
  for (char c : s) out += (c == '"' ? '\'' : c);
  return out;
}

}  // namespace

void export_dot(const SpacePtr& space, std::ostream& os, uint64_t bound) {
  if (space->kind() == SpaceKind::Smyth)
    throw unsupported_error("Smyth scenario spaces do not enumerate a carrier to draw");
  os << "digraph \"" << sanitize(space->name()) << "\" {\n";
  os << "  rankdir=BT;\n";
  if (const auto* fs = dynamic_cast<const FiniteSpace*>(space.get())) {
    for (size_t i = 0; i < fs->size(); ++i)
      os << "  n" << i << " [label=\"" << sanitize(fs->poset().name_of(i)) << "\"];\n";
    for (auto [a, b] : fs->poset().covers()) os << "  n" << a << " -> n" << b << ";\n";
    os << "  label=\"" << sanitize(space->name()) << ": " << fs->opens().size() << " opens";
    if (fs->size() <= 4) {
      os << "\\n";
      for (Mask u : fs->opens()) {
        os << "{";
        bool first = true;
        for (size_t i = 0; i < fs->size(); ++i)
          if ((u >> i) & 1) {
            os << (first ? "" : " ") << sanitize(fs->poset().name_of(i));
            first = false;
          }
        os << "} ";
      }
    }
    os << "\";\n";
  } else {
    auto pts = space->sample_points(bound);
    std::map<std::string, size_t> id;
    for (size_t i = 0; i < pts.size(); ++i) {
      id[pts[i].str()] = i;
      os << "  n" << i << " [label=\"" << sanitize(pts[i].str()) << "\"];\n";
    }
    // covers within the sample
    for (size_t i = 0; i < pts.size(); ++i)
      for (size_t j = 0; j < pts.size(); ++j) {
        if (i == j || !space->leq(pts[i], pts[j])) continue;
        if (space->leq(pts[j], pts[i])) continue;
        bool direct = true;
        for (size_t k = 0; k < pts.size() && direct; ++k)
          if (k != i && k != j && space->leq(pts[i], pts[k]) && space->leq(pts[k], pts[j]) &&
              !space->leq(pts[k], pts[i]) && !space->leq(pts[j], pts[k]))
            direct = false;
        if (direct) os << "  n" << i << " -> n" << j << ";\n";
      }
    os << "  label=\"" << sanitize(space->name()) << " (sample truncated at " << bound << ")\";\n";
  }
  os << "}\n";
}

}  // namespace ordtop
