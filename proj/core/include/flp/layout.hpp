#pragma once

#include <span>
#include <string>
#include <vector>

#include "flp/instance.hpp"
#include "flp/relations.hpp"

namespace flp {

// Concrete placement of a subset of components (possibly all of them).
// Local index a corresponds to ids[a]; ids are ascending. dist holds the
// per-axis objective variables, one entry per local pair rank.
struct Layout {
  int dim = 1;
  std::vector<int> ids;
  std::vector<Rat> center[2];
  std::vector<Rat> half[2];
  std::vector<Rat> dist[2];
  // prec[s][a*k+b] == 1 when a precedes b on axis s; exactly one entry is set
  // across both axes and directions for each unordered pair.
  std::vector<std::int8_t> prec[2];

  int size() const { return static_cast<int>(ids.size()); }
  int rank(int a, int b) const { return a * size() - a * (a + 1) / 2 + b - a - 1; }
};

struct Violation {
  std::string constraint;  // e.g. "separation[1,3,x]"
  Rat amount;              // positive violation magnitude
};

struct FeasibilityVerdict {
  bool feasible = true;
  std::vector<Violation> violations;
};

// Weighted sum of the distance variables over pairs covered by the layout.
Rat layout_objective(const Instance& inst, const Layout& layout);

// Exact check of every placement constraint; tol >= 0 is an absolute slack,
// tol == 0 means exact.
FeasibilityVerdict check_feasibility(const Instance& inst, const Layout& layout, const Rat& tol);

// Places the listed components left to right in the given order, each
// touching its predecessor. 1D instances only; order entries are ids.
Layout pack_1d(const Instance& inst, std::span<const int> order);

// Places components at the earliest position compatible with the relations,
// using the given half-widths (aligned with asg.ids; within bounds and
// area-feasible). The relation digraph must be acyclic on each axis.
Layout pack_2d(const Instance& inst, const RelationAssignment& asg,
               const std::vector<Rat> halfwidths[2]);

// Line-oriented text form used by the command-line --emit-layout flag.
std::string serialize_layout(const Instance& inst, const Layout& layout);

}  // namespace flp
