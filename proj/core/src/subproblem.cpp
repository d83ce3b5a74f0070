#include "flp/subproblem.hpp"

#include <algorithm>
#include <cmath>

#include "tangent.hpp"

namespace flp {

namespace {

std::vector<int> checked_subset(const Instance& inst, std::span<const int> subset) {
  std::vector<int> ids(subset.begin(), subset.end());
  std::sort(ids.begin(), ids.end());
  if (ids.size() < 2) throw std::invalid_argument("subset needs at least two components");
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
    throw std::invalid_argument("subset repeats a component");
  if (ids.front() < 1 || ids.back() > inst.n)
    throw std::invalid_argument("subset id out of range");
  return ids;
}

bool has_positive_weight(const Instance& inst, const std::vector<int>& ids) {
  for (size_t a = 0; a < ids.size(); ++a)
    for (size_t b = a + 1; b < ids.size(); ++b)
      if (inst.weight(ids[a], ids[b]) > 0) return true;
  return false;
}

}  // namespace

SubsetBound gamma_1d(const Instance& inst, std::span<const int> subset) {
  if (inst.dim != 1) throw std::invalid_argument("gamma_1d requires a 1D instance");
  std::vector<int> ids = checked_subset(inst, subset);
  if (ids.size() > 9) throw SizeCapError("subset too large to enumerate orderings");

  SubsetBound out;
  out.subset = ids;
  if (!has_positive_weight(inst, ids)) {
    out.gamma = 0;
    out.upper = 0;
    out.witness = pack_1d(inst, ids);
    return out;
  }

  int k = static_cast<int>(ids.size());
  std::vector<const Rat*> half(k);
  for (int a = 0; a < k; ++a) half[a] = &inst.comp(ids[a]).lb[0];

  std::vector<int> perm(k);  // positions hold local indices
  for (int a = 0; a < k; ++a) perm[a] = a;
  std::vector<int> best_perm;
  Rat best;
  bool first = true;
  std::vector<Rat> center(k);
  do {
    Rat cursor = 0;
    for (int pos = 0; pos < k; ++pos) {
      center[pos] = cursor + *half[perm[pos]];
      cursor += 2 * (*half[perm[pos]]);
    }
    Rat obj = 0;
    for (int u = 0; u < k; ++u)
      for (int v = u + 1; v < k; ++v) {
        int i = ids[perm[u]], j = ids[perm[v]];
        const Rat& w = i < j ? inst.weight(i, j) : inst.weight(j, i);
        if (w != 0) obj += w * (center[v] - center[u]);
      }
    if (first || obj < best) {
      best = obj;
      best_perm = perm;
      first = false;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<int> order(k);
  for (int pos = 0; pos < k; ++pos) order[pos] = ids[best_perm[pos]];
  out.gamma = best;
  out.upper = best;
  out.witness = pack_1d(inst, order);
  return out;
}

void for_each_assignment(std::span<const int> subset,
                         const std::function<void(const RelationAssignment&)>& visit) {
  RelationAssignment asg;
  asg.ids.assign(subset.begin(), subset.end());
  std::sort(asg.ids.begin(), asg.ids.end());
  int k = asg.size();
  int pairs = k * (k - 1) / 2;
  asg.rel.assign(pairs, Rel::kXBefore);
  if (pairs == 0) {
    visit(asg);
    return;
  }

  // Depth-first over pair ranks; the first pair only takes the two "before"
  // relations, mirror images cover the rest.
  static const Rel kAll[4] = {Rel::kXBefore, Rel::kXAfter, Rel::kYBefore, Rel::kYAfter};
  static const Rel kFirst[2] = {Rel::kXBefore, Rel::kYBefore};
  std::function<void(int)> walk = [&](int r) {
    if (r == pairs) {
      if (acyclic_on_each_axis(asg)) visit(asg);
      return;
    }
    std::span<const Rel> choices = r == 0 ? std::span<const Rel>(kFirst) : std::span<const Rel>(kAll);
    for (Rel c : choices) {
      asg.rel[r] = c;
      walk(r + 1);
    }
  };
  walk(0);
}

std::vector<RelationAssignment> enumerate_assignments(std::span<const int> subset) {
  std::vector<RelationAssignment> all;
  for_each_assignment(subset, [&all](const RelationAssignment& a) { all.push_back(a); });
  return all;
}

void witness_halfwidths(const Instance& inst, std::span<const int> subset,
                        std::vector<Rat> halfwidths[2]) {
  halfwidths[0].clear();
  halfwidths[1].clear();
  for (int id : subset) {
    const ComponentSpec& c = inst.comp(id);
    Rat ly = c.lb[1];
    if (c.area > 0) {
      Rat need = c.area / (4 * c.lb[0]);
      if (need > ly) ly = need;  // <= ub by the area-shape invariant
    }
    halfwidths[0].push_back(c.lb[0]);
    halfwidths[1].push_back(ly);
  }
}

namespace {

struct ArrangementLp {
  LinearProgram lp;
  std::vector<int> c_var[2], l_var[2];
  std::vector<int> d_var[2];           // per positive pair slot
  std::vector<std::pair<int, int>> wpairs;  // local index pairs with positive weight
};

ArrangementLp build_arrangement_lp(const Instance& inst, const RelationAssignment& asg,
                                   const std::vector<std::vector<Rat>>& abscissas) {
  ArrangementLp out;
  LinearProgram& lp = out.lp;
  int k = asg.size();

  for (int s = 0; s < 2; ++s) {
    std::string ax = s == 0 ? "x" : "y";
    for (int a = 0; a < k; ++a) {
      const ComponentSpec& spec = inst.comp(asg.ids[a]);
      int c = lp.add_var("c_" + ax + "_" + std::to_string(asg.ids[a]));
      lp.set_bounds(c, Rat(0), inst.floor_len[s]);
      int l = lp.add_var("l_" + ax + "_" + std::to_string(asg.ids[a]));
      lp.set_bounds(l, spec.lb[s], spec.ub[s]);
      out.c_var[s].push_back(c);
      out.l_var[s].push_back(l);
    }
  }
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if (inst.weight(asg.ids[a], asg.ids[b]) > 0) out.wpairs.emplace_back(a, b);

  for (int s = 0; s < 2; ++s) {
    std::string ax = s == 0 ? "x" : "y";
    for (size_t t = 0; t < out.wpairs.size(); ++t) {
      auto [a, b] = out.wpairs[t];
      const Rat& w = inst.weight(asg.ids[a], asg.ids[b]);
      int d = lp.add_var("d_" + ax + "_" + std::to_string(asg.ids[a]) + "_" +
                             std::to_string(asg.ids[b]),
                         w);
      out.d_var[s].push_back(d);
    }
  }

  for (int s = 0; s < 2; ++s) {
    std::string ax = s == 0 ? "x" : "y";
    for (int a = 0; a < k; ++a) {
      std::string id = std::to_string(asg.ids[a]);
      LpRow& lo = lp.add_row("inside_lo_" + ax + "_" + id, Sense::kGe, Rat(0));
      lo.terms.emplace_back(out.c_var[s][a], Rat(1));
      lo.terms.emplace_back(out.l_var[s][a], Rat(-1));
      LpRow& hi = lp.add_row("inside_hi_" + ax + "_" + id, Sense::kLe, inst.floor_len[s]);
      hi.terms.emplace_back(out.c_var[s][a], Rat(1));
      hi.terms.emplace_back(out.l_var[s][a], Rat(1));
    }
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) {
        if (a == b || !asg.before(a, b, s)) continue;
        LpRow& row = lp.add_row("sep_" + ax + "_" + std::to_string(asg.ids[a]) + "_" +
                                    std::to_string(asg.ids[b]),
                                Sense::kLe, Rat(0));
        row.terms.emplace_back(out.c_var[s][a], Rat(1));
        row.terms.emplace_back(out.l_var[s][a], Rat(1));
        row.terms.emplace_back(out.c_var[s][b], Rat(-1));
        row.terms.emplace_back(out.l_var[s][b], Rat(1));
      }
    for (size_t t = 0; t < out.wpairs.size(); ++t) {
      auto [a, b] = out.wpairs[t];
      std::string tag =
          ax + "_" + std::to_string(asg.ids[a]) + "_" + std::to_string(asg.ids[b]);
      LpRow& fwd = lp.add_row("dist_fwd_" + tag, Sense::kGe, Rat(0));
      fwd.terms.emplace_back(out.d_var[s][t], Rat(1));
      fwd.terms.emplace_back(out.c_var[s][a], Rat(-1));
      fwd.terms.emplace_back(out.c_var[s][b], Rat(1));
      LpRow& bwd = lp.add_row("dist_bwd_" + tag, Sense::kGe, Rat(0));
      bwd.terms.emplace_back(out.d_var[s][t], Rat(1));
      bwd.terms.emplace_back(out.c_var[s][a], Rat(1));
      bwd.terms.emplace_back(out.c_var[s][b], Rat(-1));
    }
  }
  for (int a = 0; a < k; ++a) {
    const ComponentSpec& spec = inst.comp(asg.ids[a]);
    if (spec.area > 0)
      detail::add_tangent_rows(lp, out.l_var[0][a], out.l_var[1][a], spec.area, abscissas[a],
                               "area_" + std::to_string(asg.ids[a]));
  }
  return out;
}

}  // namespace

SubsetBound gamma_2d(const Instance& inst, std::span<const int> subset, const RefineConfig& cfg) {
  if (inst.dim != 2) throw std::invalid_argument("gamma_2d requires a 2D instance");
  std::vector<int> ids = checked_subset(inst, subset);
  if (ids.size() > 5) throw SizeCapError("subset too large to enumerate arrangements");

  SubsetBound out;
  out.subset = ids;
  int k = static_cast<int>(ids.size());

  std::vector<Rat> base_half[2];
  witness_halfwidths(inst, ids, base_half);

  if (!has_positive_weight(inst, ids)) {
    RelationAssignment chain;
    chain.ids = ids;
    chain.rel.assign(k * (k - 1) / 2, Rel::kXBefore);
    out.gamma = 0;
    out.upper = 0;
    out.witness = pack_2d(inst, chain, base_half);
    return out;
  }

  std::vector<std::vector<Rat>> abscissas(k);
  for (int a = 0; a < k; ++a) abscissas[a] = detail::initial_tangent_abscissas(inst.comp(ids[a]));

  LpOptions lopt;
  lopt.mode = cfg.mode;
  lopt.tol = cfg.lp_tol;

  bool first = true;
  Rat best_lower, best_upper;
  Layout best_witness;

  for_each_assignment(ids, [&](const RelationAssignment& asg) {
    Layout packed = pack_2d(inst, asg, base_half);
    Rat packed_obj = layout_objective(inst, packed);
    if (first || packed_obj < best_upper) {
      best_upper = packed_obj;
      best_witness = packed;
    }

    auto cuts = abscissas;
    Rat value;
    for (int round = 0;; ++round) {
      ArrangementLp alp = build_arrangement_lp(inst, asg, cuts);
      LpSolution sol = solve_lp(alp.lp, lopt);
      if (sol.status != LpStatus::kOptimal)
        throw SolverError("arrangement relaxation did not solve to optimality");
      value = sol.value;
      if (round >= cfg.max_rounds) break;
      bool tightened = false;
      for (int a = 0; a < k; ++a) {
        const ComponentSpec& spec = inst.comp(ids[a]);
        if (spec.area == 0) continue;
        const Rat& lx = sol.primal[alp.l_var[0][a]];
        const Rat& ly = sol.primal[alp.l_var[1][a]];
        Rat shortfall = spec.area - 4 * lx * ly;  // > 0 when the row family is loose
        if (to_double(shortfall) > cfg.eps_area * to_double(spec.area)) {
          if (std::find(cuts[a].begin(), cuts[a].end(), lx) == cuts[a].end()) {
            cuts[a].push_back(lx);
            tightened = true;
          }
        }
      }
      if (!tightened) break;
    }
    if (first || value < best_lower) best_lower = value;
    first = false;
  });

  out.gamma = best_lower;
  out.upper = best_upper;
  // Float-mode guard: the relaxation value may poke above the witness cost by
  // solver round-off; the witness cost is itself a valid bound cap.
  if (out.gamma > out.upper) out.gamma = out.upper;
  out.witness = best_witness;
  return out;
}

}  // namespace flp
