#pragma once

#include <cstdint>

#include "lowerset/lattice.hpp"

namespace lowerset {

// Seeded pseudo-random lower set of size n in dimension d, grown one point
// at a time from the origin.  Each step picks uniformly among the currently
// addable points over the axes already in use plus a single representative
// fresh axis weighted by the number of unused axes, so enormous d behaves
// sensibly.  Deterministic across platforms for a fixed (d, n, seed): the
// generator consumes raw mt19937_64 words, never distribution objects.
LowerSet random_lower_set(uint64_t d, uint64_t n, uint64_t seed);

}  // namespace lowerset
