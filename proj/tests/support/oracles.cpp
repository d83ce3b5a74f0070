#include "oracles.hpp"

#include <algorithm>
#include <vector>

#include "flp/errors.hpp"
#include "flp/lp.hpp"

namespace flp::test {

namespace {

// One rational LP for a fixed left-to-right order: positions are free within
// the floor, consecutive components keep their extents apart, and each pair
// distance dominates both signed differences.
Rat ordered_value_1d(const Instance& inst, std::span<const int> subset,
                     const std::vector<int>& order) {
  LinearProgram lp;
  int k = static_cast<int>(subset.size());
  std::vector<int> c_col(static_cast<size_t>(k));
  for (int a = 0; a < k; ++a) {
    c_col[static_cast<size_t>(a)] = lp.add_var("c" + std::to_string(a));
    lp.set_bounds(c_col[static_cast<size_t>(a)], Rat(0), inst.floor_len[0]);
  }
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      int d = lp.add_var("d" + std::to_string(a) + "_" + std::to_string(b),
                         inst.weight(subset[static_cast<size_t>(a)],
                                     subset[static_cast<size_t>(b)]));
      LpRow& fwd = lp.add_row("f", Sense::kGe, Rat(0));
      fwd.terms.emplace_back(d, Rat(1));
      fwd.terms.emplace_back(c_col[static_cast<size_t>(a)], Rat(-1));
      fwd.terms.emplace_back(c_col[static_cast<size_t>(b)], Rat(1));
      LpRow& bwd = lp.add_row("b", Sense::kGe, Rat(0));
      bwd.terms.emplace_back(d, Rat(1));
      bwd.terms.emplace_back(c_col[static_cast<size_t>(a)], Rat(1));
      bwd.terms.emplace_back(c_col[static_cast<size_t>(b)], Rat(-1));
    }
  for (int t = 0; t + 1 < k; ++t) {
    int prev = order[static_cast<size_t>(t)], next = order[static_cast<size_t>(t + 1)];
    Rat gap = inst.comp(subset[static_cast<size_t>(prev)]).lb[0] +
              inst.comp(subset[static_cast<size_t>(next)]).lb[0];
    LpRow& row = lp.add_row("o", Sense::kGe, gap);
    row.terms.emplace_back(c_col[static_cast<size_t>(next)], Rat(1));
    row.terms.emplace_back(c_col[static_cast<size_t>(prev)], Rat(-1));
  }
  LpOptions opt;
  opt.mode = ArithMode::kRational;
  LpSolution sol = solve_lp(lp, opt);
  if (sol.status != LpStatus::kOptimal) throw SolverError("oracle LP did not solve");
  return sol.value;
}

// Touching chain along one axis in subset order; the other axis stays at the
// floor middle so only the chain axis contributes distance. The free-axis
// half-widths never enter the value: each component can absorb its area
// there within bounds (area <= 4*lb*ub across axes), so the chain realizes
// a feasible placement.
Rat chain_value_2d(const Instance& inst, std::span<const int> subset, int axis) {
  int k = static_cast<int>(subset.size());
  std::vector<Rat> half(static_cast<size_t>(k));
  for (int a = 0; a < k; ++a) {
    const ComponentSpec& spec = inst.comp(subset[static_cast<size_t>(a)]);
    Rat h = spec.lb[axis];
    half[static_cast<size_t>(a)] = h;
  }
  std::vector<Rat> pos(static_cast<size_t>(k));
  Rat cursor = 0;
  for (int a = 0; a < k; ++a) {
    pos[static_cast<size_t>(a)] = cursor + half[static_cast<size_t>(a)];
    cursor += 2 * half[static_cast<size_t>(a)];
  }
  Rat value = 0;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      const Rat& w = inst.weight(subset[static_cast<size_t>(a)], subset[static_cast<size_t>(b)]);
      if (w == 0) continue;
      Rat diff = pos[static_cast<size_t>(b)] - pos[static_cast<size_t>(a)];
      if (diff < 0) diff = -diff;
      value += w * diff;
    }
  return value;
}

}  // namespace

OracleBound gamma_exact_small(const Instance& inst, std::span<const int> subset) {
  if (subset.size() > 4) throw SizeCapError("oracle capped at 4 components");
  OracleBound out;

  if (inst.dim == 1) {
    std::vector<int> order(subset.size());
    for (size_t a = 0; a < subset.size(); ++a) order[a] = static_cast<int>(a);
    bool first = true;
    do {
      Rat value = ordered_value_1d(inst, subset, order);
      if (first || value < out.lower) out.lower = value;
      first = false;
    } while (std::next_permutation(order.begin(), order.end()));
    out.upper = out.lower;
    return out;
  }

  // Any placement separates each pair along some axis by at least the
  // minimum half-width sum there, so the weighted minimum-axis sum is a
  // valid floor under the optimum.
  out.lower = 0;
  for (size_t a = 0; a < subset.size(); ++a)
    for (size_t b = a + 1; b < subset.size(); ++b) {
      const Rat& w = inst.weight(subset[a], subset[b]);
      if (w == 0) continue;
      Rat sx = inst.comp(subset[a]).lb[0] + inst.comp(subset[b]).lb[0];
      Rat sy = inst.comp(subset[a]).lb[1] + inst.comp(subset[b]).lb[1];
      out.lower += w * std::min(sx, sy);
    }
  Rat cx = chain_value_2d(inst, subset, 0);
  Rat cy = chain_value_2d(inst, subset, 1);
  out.upper = std::min(cx, cy);
  return out;
}

}  // namespace flp::test
