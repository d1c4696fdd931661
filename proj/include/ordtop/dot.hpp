#pragma once

#include <ostream>

#include "ordtop/spaces.hpp"

namespace ordtop {

// Hasse diagram of the specialization order as a DOT digraph. Finite
// spaces render completely with the open lattice as a label; ω spaces
// render a bounded sample of points marked as a truncation.
void export_dot(const SpacePtr& space, std::ostream& os, uint64_t bound = 6);

}  // namespace ordtop
