#pragma once

#include "flp/instance.hpp"

namespace flp::test {

// Three fixed-width 1D components (half-widths 1, 2, 3) on a long floor with
// unit weights on every pair. Reference values: best chain places 2,1,3 for
// an optimum of 14; the first-level aggregate bound is 12, the second 14.
Instance triple_1d();

// Two 2D unit-area squares (half-widths 1/2 on both axes) with pair weight 2.
// The first-level aggregate bound is 2.
Instance two_squares_2d();

}  // namespace flp::test
