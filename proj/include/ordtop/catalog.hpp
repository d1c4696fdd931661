#pragma once

#include <cstdint>
#include <vector>

#include "ordtop/order_core.hpp"
#include "ordtop/spaces.hpp"

namespace ordtop {

// All posets on n points up to isomorphism (n <= 6). Enumerates the
// transitively closed sub-relations of a linear order and deduplicates
// by canonical code; every poset admits a linear extension, so every
// isomorphism class appears.
std::vector<FinitePoset> poset_catalog(size_t n);

// Deterministic random poset: seeded random DAG edges, transitively
// closed.
FinitePoset random_poset(size_t n, uint64_t seed);

// Monotone idempotent self-map of the space's poset, as an image table;
// the fixed points carry the retract. Deterministic in the seed.
std::vector<size_t> random_monotone_idempotent(const FinitePoset& p, uint64_t seed);

// Random upper set / arbitrary subset, for sweep inputs.
Mask random_upset(const FinitePoset& p, uint64_t seed);

}  // namespace ordtop
