#pragma once

#include <string>

#include "ordtop/region.hpp"
#include "ordtop/spaces.hpp"

namespace ordtop {

// Line-oriented poset format: one `a < b` cover per line, `#` comments.
// The reflexive-transitive closure is computed on load; antisymmetry
// violations are load errors.
FinitePoset parse_poset(const std::string& text);

// A finite space: either the poset format (Scott topology) or an
// explicit form with a `points:` line and an `opens:` line of
// brace-delimited point sets.
FiniteSpacePtr parse_finite_space(const std::string& text, const std::string& name = "space");

// Parenthesized region syntax, e.g. `union(tail 3, upcone (1,4))`.
// Printing emits the canonical decomposition; parse∘print is exact.
Region parse_region(const std::string& text, const SpacePtr& space);
std::string region_text(const Region& r);

Point parse_point(const std::string& text, const SpacePtr& space);

}  // namespace ordtop
