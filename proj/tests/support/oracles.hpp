#pragma once

#include <span>

#include "flp/instance.hpp"
#include "flp/rational.hpp"

namespace flp::test {

// Reference subset bound computed without the production shortcuts. 1D
// solves one rational LP per permutation of the subset and takes the
// minimum, so gamma == upper. 2D returns a valid (lower, upper) bracket:
// the pairwise minimum-extent sum below, the best of a few hand-packed
// placements above. Capped at 4 components.
struct OracleBound {
  Rat lower;
  Rat upper;
};

OracleBound gamma_exact_small(const Instance& inst, std::span<const int> subset);

}  // namespace flp::test
