#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "flp/instance.hpp"
#include "flp/lp.hpp"

// Internal helpers shared by the 2D subproblem relaxations and the
// relaxation-value audits. Not installed.

namespace flp::detail {

// Tangent row to 4*lx*ly >= area at abscissa t > 0:
//   (area/(4t^2)) * lx + ly >= area/(2t),
// valid on the full feasible region by the AM-GM inequality.
inline void add_tangent_rows(LinearProgram& lp, int lx, int ly, const Rat& area,
                             const std::vector<Rat>& abscissas, const std::string& prefix) {
  int idx = 0;
  for (const Rat& t : abscissas) {
    LpRow& row = lp.add_row(prefix + "_t" + std::to_string(idx++), Sense::kGe, area / (2 * t));
    row.terms.emplace_back(lx, area / (4 * t * t));
    row.terms.emplace_back(ly, Rat(1));
  }
}

// The minimum width, the width at minimum height, and (a rational stand-in
// for) their geometric mean; deduplicated, positive.
inline std::vector<Rat> initial_tangent_abscissas(const ComponentSpec& spec) {
  std::vector<Rat> out;
  if (spec.area == 0) return out;
  Rat t1 = spec.lb[0];
  Rat t2 = spec.area / (4 * spec.lb[1]);
  Rat t3 = rat_from_double(std::sqrt(to_double(t1) * to_double(t2)));
  for (const Rat& t : {t1, t2, t3})
    if (t > 0 && std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  return out;
}

}  // namespace flp::detail
