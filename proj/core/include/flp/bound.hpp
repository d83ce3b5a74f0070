#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "flp/instance.hpp"
#include "flp/subproblem.hpp"

namespace flp {

// A collection of component subsets feeding the master aggregation problem.
struct SubsetFamily {
  std::vector<std::vector<int>> subsets;  // each ascending, family lex-sorted
  std::string tag;                        // "level-k" | "custom" | "pruned-from-k"
};

// Outcome of one master aggregation solve.
struct BoundResult {
  int level = 0;  // k for hierarchy levels, 0 for ad-hoc families
  Rat omega;
  std::vector<SubsetBound> bounds;  // canonical (lex by subset) order
  std::vector<Rat> duals;           // master dual weight per bounds entry
  std::string relaxation = "d-nonneg-orthant";
  std::size_t family_size = 0;   // before pruning
  std::size_t solved_size = 0;   // rows actually in the master
  double subproblem_seconds = 0;
  double master_seconds = 0;
};

struct BoundConfig {
  int workers = 1;
  bool prune = true;
  RefineConfig refine;  // 2D subproblem controls
  // Master arithmetic; unset means rational up to 15 components, float above.
  std::optional<ArithMode> master_mode;
};

// All subsets of the active components with size in [2, min(k, #active)].
SubsetFamily build_family(const Instance& inst, int k);

// Drops every subset containing a component with no positive weight to the
// rest of the subset (its bound equals the smaller subset's and the master row
// is dominated), iterating to a fixed point, then deduplicates.
SubsetFamily prune_family(const Instance& inst, const SubsetFamily& fam);

// The master aggregation LP: min sum p_ij d_ij over d >= 0 subject to one
// covering row per subset bound, in the order given.
LinearProgram build_master_lp(const Instance& inst, std::span<const SubsetBound> bounds);

// Solves the master aggregation. Result rows are re-sorted canonically first.
BoundResult master_bound(const Instance& inst, std::vector<SubsetBound> bounds,
                         std::optional<ArithMode> mode = {});

// First-level bound without any LP:
// dim 1: sum p_ij (l_i + l_j); dim 2: sum p_ij min over axes of lb sums.
Rat omega2_closed_form(const Instance& inst);

// Bounds for levels 2..k_max, each via build -> prune -> subproblem batch ->
// master. Subset bounds are memoized across levels; results do not depend on
// the worker count.
std::vector<BoundResult> hierarchy(const Instance& inst, int k_max,
                                   const BoundConfig& cfg = {});

// Full-problem reference value: exact for 1D (n <= 8), a (gamma, upper)
// bracket for 2D (n <= 4).
SubsetBound exact_optimum(const Instance& inst, const RefineConfig& cfg = {});

}  // namespace flp
