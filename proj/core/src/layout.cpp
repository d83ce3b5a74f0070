#include "flp/layout.hpp"

#include <algorithm>
#include <sstream>

namespace flp {

bool acyclic_on_each_axis(const RelationAssignment& asg) {
  int k = asg.size();
  for (int axis = 0; axis < 2; ++axis) {
    // Kahn's algorithm on the precedence digraph of this axis.
    std::vector<int> indeg(k, 0);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b)
        if (a != b && asg.before(a, b, axis)) ++indeg[b];
    std::vector<int> queue;
    for (int v = 0; v < k; ++v)
      if (indeg[v] == 0) queue.push_back(v);
    int seen = 0;
    while (!queue.empty()) {
      int v = queue.back();
      queue.pop_back();
      ++seen;
      for (int b = 0; b < k; ++b)
        if (b != v && asg.before(v, b, axis) && --indeg[b] == 0) queue.push_back(b);
    }
    if (seen != k) return false;
  }
  return true;
}

RelationAssignment reflect(const RelationAssignment& asg, int axis) {
  RelationAssignment out = asg;
  for (Rel& r : out.rel) {
    if (axis == 0) {
      if (r == Rel::kXBefore)
        r = Rel::kXAfter;
      else if (r == Rel::kXAfter)
        r = Rel::kXBefore;
    } else {
      if (r == Rel::kYBefore)
        r = Rel::kYAfter;
      else if (r == Rel::kYAfter)
        r = Rel::kYBefore;
    }
  }
  return out;
}

Rat layout_objective(const Instance& inst, const Layout& layout) {
  Rat total = 0;
  int k = layout.size();
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      const Rat& w = inst.weight(layout.ids[a], layout.ids[b]);
      if (w == 0) continue;
      for (int s = 0; s < layout.dim; ++s) total += w * layout.dist[s][layout.rank(a, b)];
    }
  return total;
}

namespace {

void add_violation(FeasibilityVerdict& v, std::string name, const Rat& amount) {
  v.feasible = false;
  v.violations.push_back({std::move(name), amount});
}

const char* axis_name(int s) { return s == 0 ? "x" : "y"; }

}  // namespace

FeasibilityVerdict check_feasibility(const Instance& inst, const Layout& layout, const Rat& tol) {
  FeasibilityVerdict verdict;
  int k = layout.size();
  auto tag = [&](const char* what, int a, int b, int s) {
    return std::string(what) + "[" + std::to_string(layout.ids[a]) + "," +
           std::to_string(layout.ids[b]) + "," + axis_name(s) + "]";
  };

  for (int a = 0; a < k; ++a) {
    const ComponentSpec& spec = inst.comp(layout.ids[a]);
    for (int s = 0; s < layout.dim; ++s) {
      const Rat& l = layout.half[s][a];
      const Rat& c = layout.center[s][a];
      std::string where = "[" + std::to_string(layout.ids[a]) + "," + axis_name(s) + "]";
      if (l < spec.lb[s] - tol) add_violation(verdict, "halfwidth-bounds" + where, spec.lb[s] - l);
      if (l > spec.ub[s] + tol) add_violation(verdict, "halfwidth-bounds" + where, l - spec.ub[s]);
      // 1D constrains centers to the floor segment; 2D keeps the whole
      // rectangle inside.
      Rat lo = layout.dim == 1 ? Rat(0) : l;
      Rat hi = inst.floor_len[s] - (layout.dim == 1 ? Rat(0) : l);
      if (c < lo - tol) add_violation(verdict, "floor" + where, lo - c);
      if (c > hi + tol) add_violation(verdict, "floor" + where, c - hi);
    }
    if (inst.dim == 2) {
      Rat have = 4 * layout.half[0][a] * layout.half[1][a];
      if (have < spec.area - tol)
        add_violation(verdict, "area[" + std::to_string(layout.ids[a]) + "]", spec.area - have);
    }
  }

  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      int axes = layout.dim;
      int chosen = 0;
      for (int s = 0; s < axes; ++s)
        chosen += layout.prec[s][a * k + b] + layout.prec[s][b * k + a];
      if (chosen != 1)
        add_violation(verdict,
                      "pair-order[" + std::to_string(layout.ids[a]) + "," +
                          std::to_string(layout.ids[b]) + "]",
                      Rat(chosen == 0 ? 1 : chosen - 1));
      int r = layout.rank(a, b);
      for (int s = 0; s < axes; ++s) {
        const Rat& d = layout.dist[s][r];
        Rat gap = layout.center[s][b] - layout.center[s][a];
        if (d < 0 - tol) add_violation(verdict, tag("distance-nonneg", a, b, s), -d);
        if (d < gap - tol) add_violation(verdict, tag("distance-link", a, b, s), gap - d);
        if (d < -gap - tol) add_violation(verdict, tag("distance-link", a, b, s), -gap - d);
        auto check_sep = [&](int lo, int hi) {
          Rat lhs = layout.center[s][lo] + layout.half[s][lo];
          Rat rhs = layout.center[s][hi] - layout.half[s][hi];
          if (lhs > rhs + tol) add_violation(verdict, tag("separation", lo, hi, s), lhs - rhs);
        };
        if (layout.prec[s][a * k + b]) check_sep(a, b);
        if (layout.prec[s][b * k + a]) check_sep(b, a);
      }
    }
  return verdict;
}

Layout pack_1d(const Instance& inst, std::span<const int> order) {
  if (inst.dim != 1) throw std::invalid_argument("pack_1d requires a 1D instance");
  std::vector<int> ids(order.begin(), order.end());
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
    throw std::invalid_argument("pack_1d order repeats a component");

  Layout layout;
  layout.dim = 1;
  layout.ids = ids;
  int k = layout.size();
  layout.center[0].resize(k);
  layout.half[0].resize(k);
  layout.dist[0].resize(k * (k - 1) / 2);
  layout.prec[0].assign(static_cast<size_t>(k) * k, 0);

  auto local = [&](int id) {
    return static_cast<int>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  Rat cursor = 0;
  for (size_t pos = 0; pos < order.size(); ++pos) {
    int a = local(order[pos]);
    const Rat& l = inst.comp(order[pos]).lb[0];
    layout.half[0][a] = l;
    layout.center[0][a] = cursor + l;
    cursor += 2 * l;
    for (size_t before = 0; before < pos; ++before)
      layout.prec[0][local(order[before]) * k + a] = 1;
  }
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      layout.dist[0][layout.rank(a, b)] = abs(layout.center[0][a] - layout.center[0][b]);
  return layout;
}

Layout pack_2d(const Instance& inst, const RelationAssignment& asg,
               const std::vector<Rat> halfwidths[2]) {
  if (inst.dim != 2) throw std::invalid_argument("pack_2d requires a 2D instance");
  if (!acyclic_on_each_axis(asg)) throw std::invalid_argument("pack_2d relations contain a cycle");
  int k = asg.size();

  for (int a = 0; a < k; ++a) {
    const ComponentSpec& spec = inst.comp(asg.ids[a]);
    for (int s = 0; s < 2; ++s)
      if (halfwidths[s][a] < spec.lb[s] || halfwidths[s][a] > spec.ub[s])
        throw std::invalid_argument("pack_2d half-width out of bounds");
    if (4 * halfwidths[0][a] * halfwidths[1][a] < spec.area)
      throw std::invalid_argument("pack_2d half-widths violate the area bound");
  }

  Layout layout;
  layout.dim = 2;
  layout.ids = asg.ids;
  for (int s = 0; s < 2; ++s) {
    layout.half[s] = halfwidths[s];
    layout.center[s].assign(k, Rat(0));
    layout.dist[s].resize(k * (k - 1) / 2);
    layout.prec[s].assign(static_cast<size_t>(k) * k, 0);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b)
        if (a != b && asg.before(a, b, s)) layout.prec[s][a * k + b] = 1;

    // Earliest-position sweep in topological order.
    std::vector<int> indeg(k, 0), topo;
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b)
        if (layout.prec[s][a * k + b]) ++indeg[b];
    for (int v = 0; v < k; ++v)
      if (indeg[v] == 0) topo.push_back(v);
    for (size_t head = 0; head < topo.size(); ++head) {
      int v = topo[head];
      Rat edge = 0;  // right edge of the latest predecessor
      for (int a = 0; a < k; ++a)
        if (layout.prec[s][a * k + v]) {
          Rat right = layout.center[s][a] + layout.half[s][a];
          if (right > edge) edge = right;
        }
      layout.center[s][v] = edge + layout.half[s][v];
      for (int b = 0; b < k; ++b)
        if (layout.prec[s][v * k + b] && --indeg[b] == 0) topo.push_back(b);
    }
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b)
        layout.dist[s][layout.rank(a, b)] = abs(layout.center[s][a] - layout.center[s][b]);
  }
  return layout;
}

std::string serialize_layout(const Instance& inst, const Layout& layout) {
  std::ostringstream out;
  out << "LAYOUT " << layout.dim << " " << layout.size() << "\n";
  for (int a = 0; a < layout.size(); ++a) {
    out << "COMP " << layout.ids[a];
    for (int s = 0; s < layout.dim; ++s)
      out << " " << rat_to_string(layout.center[s][a]) << " " << rat_to_string(layout.half[s][a]);
    out << "\n";
  }
  int k = layout.size();
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int s = 0; s < layout.dim; ++s)
        if (layout.prec[s][a * k + b])
          out << "PREC " << layout.ids[a] << " " << layout.ids[b] << " " << (s == 0 ? "x" : "y")
              << "\n";
  out << "OBJ " << rat_to_string(layout_objective(inst, layout)) << "\n";
  return out.str();
}

}  // namespace flp
