#pragma once

#include <functional>
#include <span>
#include <vector>

#include "flp/instance.hpp"
#include "flp/layout.hpp"
#include "flp/lp.hpp"
#include "flp/relations.hpp"

namespace flp {

// Lower bound on the weighted distance sum restricted to one subset, together
// with a feasible witness placement of that subset. gamma <= upper always;
// for 1D the two coincide.
struct SubsetBound {
  std::vector<int> subset;  // ascending ids
  Rat gamma;
  Rat upper;
  Layout witness;
};

// Controls the 2D relaxation solves.
struct RefineConfig {
  ArithMode mode = ArithMode::kFloat;
  double eps_area = 1e-6;  // relative area shortfall tolerated at the optimum
  int max_rounds = 8;      // additional tangent rows per arrangement
  double lp_tol = 1e-9;
};

// 1D subset bound. Every ordering of the subset is scored by its touching
// packing (which attains all pairwise distance lower bounds at once), so the
// minimum over orderings is the exact subproblem optimum. Enumeration is
// lexicographic; ties keep the first order found.
SubsetBound gamma_1d(const Instance& inst, std::span<const int> subset);

// 2D subset bound: minimum over acyclic relation arrangements of a linear
// relaxation whose area constraint is outer-approximated by tangent rows,
// tightened at the incumbent up to max_rounds times. upper is the best packed
// witness over the same arrangements.
SubsetBound gamma_2d(const Instance& inst, std::span<const int> subset,
                     const RefineConfig& cfg = {});

// Visits every relation assignment over the subset that is acyclic on each
// axis, in deterministic lexicographic order. The first pair is fixed to its
// two "before" relations: the mirrored arrangements carry the same cost.
void for_each_assignment(std::span<const int> subset,
                         const std::function<void(const RelationAssignment&)>& visit);
std::vector<RelationAssignment> enumerate_assignments(std::span<const int> subset);

// Witness half-widths used by gamma_2d: minimum width on x, then the smallest
// area-feasible height.
void witness_halfwidths(const Instance& inst, std::span<const int> subset,
                        std::vector<Rat> halfwidths[2]);

}  // namespace flp
