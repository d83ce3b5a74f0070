#pragma once

#include <cstdint>
#include <vector>

namespace flp {

// Relative placement chosen for an unordered pair {a,b} with a < b:
// which side of b the component a sits on, and along which axis the pair
// is kept apart. 1D uses only the first two.
enum class Rel : std::uint8_t { kXBefore = 0, kXAfter = 1, kYBefore = 2, kYAfter = 3 };

// One relation per unordered pair of the covered ids (ids ascending,
// pairs in row-major rank order).
struct RelationAssignment {
  std::vector<int> ids;
  std::vector<Rel> rel;

  int size() const { return static_cast<int>(ids.size()); }
  // Rank of local pair (a,b), a < b, among k*(k-1)/2 pairs.
  int rank(int a, int b) const { return a * size() - a * (a + 1) / 2 + b - a - 1; }
  // True when local index a precedes local index b on the given axis.
  bool before(int a, int b, int axis) const {
    bool swapped = a > b;
    if (swapped) std::swap(a, b);
    Rel r = rel[rank(a, b)];
    if (axis == 0)
      return swapped ? r == Rel::kXAfter : r == Rel::kXBefore;
    return swapped ? r == Rel::kYAfter : r == Rel::kYBefore;
  }
};

// True when the precedence digraph induced on each axis has no cycle.
bool acyclic_on_each_axis(const RelationAssignment& asg);

// Flips every relation along one axis (mirror image of the arrangement).
RelationAssignment reflect(const RelationAssignment& asg, int axis);

}  // namespace flp
