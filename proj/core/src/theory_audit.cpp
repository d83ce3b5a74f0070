#include "flp/theory_audit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include "flp/bound.hpp"
#include "tangent.hpp"

namespace flp {

namespace {

std::string num(int v) { return std::to_string(v); }

// Rows are named "family[...]"; bucket verdicts by the part before the bracket.
std::string family_of(const std::string& row_name) {
  auto cut = row_name.find('[');
  std::string fam = cut == std::string::npos ? row_name : row_name.substr(0, cut);
  return fam == "bound" ? "bounds" : fam;
}

// Coefficient accumulator; merges repeated columns so identified variables
// (y(z,z) on equal pairs) collapse correctly.
class RowBuilder {
 public:
  RowBuilder& add(int col, const Rat& coef) {
    for (auto& [c, v] : terms_)
      if (c == col) {
        v += coef;
        return *this;
      }
    terms_.emplace_back(col, coef);
    return *this;
  }
  void emit(LinearProgram& lp, const std::string& name, Sense sense, const Rat& rhs) {
    LpRow& row = lp.add_row(name, sense, rhs);
    for (auto& [c, v] : terms_)
      if (v != 0) row.terms.emplace_back(c, v);
    terms_.clear();
  }

 private:
  std::vector<std::pair<int, Rat>> terms_;
};

// Groups check_point violations by family and fills per-family row counts.
std::vector<FamilyVerdict> family_verdicts(const LinearProgram& lp,
                                           const FeasibilityVerdict& verdict,
                                           const std::string& mode) {
  std::map<std::string, FamilyVerdict> buckets;
  for (const LpRow& row : lp.rows) {
    FamilyVerdict& fv = buckets[family_of(row.name)];
    fv.rows += 1;
  }
  for (const Violation& v : verdict.violations) {
    FamilyVerdict& fv = buckets[family_of(v.constraint)];
    fv.satisfied = false;
    if (v.amount > fv.worst) {
      fv.worst = v.amount;
      fv.worst_row = v.constraint;
    }
  }
  std::vector<FamilyVerdict> out;
  out.reserve(buckets.size());
  for (auto& [name, fv] : buckets) {
    fv.family = name;
    fv.mode = mode;
    out.push_back(std::move(fv));
  }
  return out;
}

void finish_report(AuditReport& rep) {
  rep.pass = rep.objective_match;
  for (const FamilyVerdict& fv : rep.families)
    if (!fv.satisfied) rep.pass = false;
}

Rat objective_at(const LinearProgram& lp, std::span<const Rat> point) {
  Rat out = 0;
  for (int j = 0; j < lp.num_vars(); ++j) out += lp.objective[j] * point[j];
  return out;
}

// sqrt with an exactness flag; falls back to the double root.
Rat rat_sqrt(const Rat& value, bool* exact) {
  Rat root;
  if (rat_exact_sqrt(value, &root)) return root;
  *exact = false;
  return rat_from_double(std::sqrt(to_double(value)));
}

}  // namespace

// ---------------------------------------------------------------------------
// Continuous relaxation

RelaxationLp build_relaxation(const Instance& inst, CutFamily cuts) {
  RelaxationLp out;
  LinearProgram& lp = out.lp;
  int n = inst.n;
  int dims = inst.dim;
  const char* ax_name[2] = {"x", "y"};

  for (int s = 0; s < dims; ++s) {
    out.c_var[s].resize(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i) {
      int col = lp.add_var(std::string("c_") + ax_name[s] + "_" + num(i));
      lp.set_bounds(col, Rat(0), inst.floor_len[s]);
      out.c_var[s][static_cast<size_t>(i - 1)] = col;
    }
  }
  if (dims == 2) {
    for (int s = 0; s < 2; ++s) {
      out.l_var[s].resize(static_cast<size_t>(n));
      for (int i = 1; i <= n; ++i) {
        const ComponentSpec& spec = inst.comp(i);
        int col = lp.add_var(std::string("l_") + ax_name[s] + "_" + num(i));
        lp.set_bounds(col, spec.lb[s], spec.ub[s]);
        out.l_var[s][static_cast<size_t>(i - 1)] = col;
      }
    }
  }
  for (int s = 0; s < dims; ++s) {
    out.d_var[s].resize(static_cast<size_t>(pair_count(n)));
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        out.d_var[s][static_cast<size_t>(pair_index(n, i, j))] =
            lp.add_var(std::string("d_") + ax_name[s] + "_" + num(i) + "_" + num(j),
                       inst.weight(i, j));
  }
  for (int s = 0; s < dims; ++s) {
    out.z_var[s].assign(static_cast<size_t>(n) * static_cast<size_t>(n), -1);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        if (i == j) continue;
        int col = lp.add_var(std::string("z_") + ax_name[s] + "_" + num(i) + "_" + num(j));
        lp.set_bounds(col, Rat(0), Rat(1));
        out.z_var[s][static_cast<size_t>((i - 1) * n + (j - 1))] = col;
      }
  }

  auto cvar = [&](int s, int i) { return out.c_var[s][static_cast<size_t>(i - 1)]; };
  auto dvar = [&](int s, int i, int j) {
    return out.d_var[s][static_cast<size_t>(pair_index(n, i, j))];
  };
  auto zvar = [&](int s, int i, int j) {
    return out.z_var[s][static_cast<size_t>((i - 1) * n + (j - 1))];
  };
  // halfwidth used in the separation row: the fixed size in dim 1, the
  // variable in dim 2 (handled by caller-side terms below)
  RowBuilder rb;

  for (int s = 0; s < dims; ++s) {
    std::string ax = ax_name[s];
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        std::string tag = "[" + num(i) + "," + num(j) + "]";
        rb.add(dvar(s, i, j), 1).add(cvar(s, i), -1).add(cvar(s, j), 1);
        rb.emit(lp, "dist_fwd_" + ax + tag, Sense::kGe, Rat(0));
        rb.add(dvar(s, i, j), 1).add(cvar(s, i), 1).add(cvar(s, j), -1);
        rb.emit(lp, "dist_bwd_" + ax + tag, Sense::kGe, Rat(0));
      }
  }
  if (dims == 2) {
    for (int s = 0; s < 2; ++s)
      for (int i = 1; i <= n; ++i) {
        std::string tag = std::string("[") + ax_name[s] + "," + num(i) + "]";
        rb.add(cvar(s, i), 1).add(out.l_var[s][static_cast<size_t>(i - 1)], -1);
        rb.emit(lp, "inside_lo" + tag, Sense::kGe, Rat(0));
        rb.add(cvar(s, i), 1).add(out.l_var[s][static_cast<size_t>(i - 1)], 1);
        rb.emit(lp, "inside_hi" + tag, Sense::kLe, inst.floor_len[s]);
      }
    for (int i = 1; i <= n; ++i) {
      const ComponentSpec& spec = inst.comp(i);
      if (spec.area > 0)
        detail::add_tangent_rows(lp, out.l_var[0][static_cast<size_t>(i - 1)],
                                 out.l_var[1][static_cast<size_t>(i - 1)], spec.area,
                                 detail::initial_tangent_abscissas(spec), "area[" + num(i) + "]");
    }
  }
  for (int s = 0; s < dims; ++s)
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        if (i == j) continue;
        std::string tag = "[" + num(i) + "," + num(j) + "]";
        const Rat& L = inst.floor_len[s];
        // c_i + l_i <= c_j - l_j + L(1 - z_ij)
        if (dims == 1) {
          Rat li = inst.comp(i).lb[0], lj = inst.comp(j).lb[0];
          rb.add(cvar(s, i), 1).add(cvar(s, j), -1).add(zvar(s, i, j), L);
          rb.emit(lp, "sep" + tag, Sense::kLe, L - li - lj);
        } else {
          rb.add(cvar(s, i), 1).add(cvar(s, j), -1);
          rb.add(out.l_var[s][static_cast<size_t>(i - 1)], 1);
          rb.add(out.l_var[s][static_cast<size_t>(j - 1)], 1);
          rb.add(zvar(s, i, j), L);
          rb.emit(lp, std::string("sep_") + ax_name[s] + tag, Sense::kLe, L);
        }
      }
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      std::string tag = "[" + num(i) + "," + num(j) + "]";
      for (int s = 0; s < dims; ++s) rb.add(zvar(s, i, j), 1).add(zvar(s, j, i), 1);
      rb.emit(lp, "rel_sum" + tag, Sense::kEq, Rat(1));
    }

  if (cuts == CutFamily::kObjectiveCuts) {
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        std::string tag = "[" + num(i) + "," + num(j) + "]";
        if (dims == 1) {
          rb.add(dvar(0, i, j), 1);
          rb.emit(lp, "dist_cut" + tag, Sense::kGe,
                  inst.comp(i).lb[0] + inst.comp(j).lb[0]);
        } else {
          Rat sx = inst.comp(i).lb[0] + inst.comp(j).lb[0];
          Rat sy = inst.comp(i).lb[1] + inst.comp(j).lb[1];
          rb.add(dvar(0, i, j), 1).add(dvar(1, i, j), 1);
          rb.emit(lp, "dist_cut" + tag, Sense::kGe, std::min(sx, sy));
        }
      }
  }
  return out;
}

Rat relaxation_value(const Instance& inst, CutFamily cuts, std::optional<ArithMode> mode) {
  RelaxationLp rel = build_relaxation(inst, cuts);
  LpOptions opt;
  opt.mode = mode.value_or(inst.dim == 1 && inst.n <= 15 ? ArithMode::kRational
                                                         : ArithMode::kFloat);
  LpSolution sol = solve_lp(rel.lp, opt);
  if (sol.status != LpStatus::kOptimal)
    throw SolverError("relaxation did not solve to optimality");
  return sol.value;
}

ZeroPoint zero_point(const Instance& inst) {
  RelaxationLp rel = build_relaxation(inst, CutFamily::kNone);
  int n = inst.n;
  ZeroPoint out;
  out.values.assign(static_cast<size_t>(rel.lp.num_vars()), Rat(0));

  for (int s = 0; s < inst.dim; ++s) {
    Rat half_floor = inst.floor_len[s] / 2;
    for (int i = 1; i <= n; ++i)
      out.values[static_cast<size_t>(rel.c_var[s][static_cast<size_t>(i - 1)])] = half_floor;
    Rat zval = inst.dim == 1 ? Rat(1, 2) : Rat(1, 4);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        if (i != j)
          out.values[static_cast<size_t>(
              rel.z_var[s][static_cast<size_t>((i - 1) * n + (j - 1))])] = zval;
  }
  if (inst.dim == 1) {
    out.halfwidth_rule = "fixed";
    return out;
  }

  // Halfwidth candidates, most literal first; the first one the row set
  // accepts wins. The clamped rule is feasible whenever the instance area
  // invariant holds, so the ladder cannot fall through.
  struct Candidate {
    std::string rule;
    std::vector<Rat> l[2];
    bool exact = true;
  };
  std::vector<Candidate> candidates(3);
  candidates[0].rule = "sqrt-area";
  candidates[1].rule = "half-sqrt-area";
  candidates[2].rule = "area-clamped";
  for (int i = 1; i <= n; ++i) {
    const ComponentSpec& spec = inst.comp(i);
    bool exact0 = true, exact1 = true, exact2 = true;
    Rat root = rat_sqrt(spec.area, &exact0);
    exact1 = exact2 = exact0;
    candidates[0].l[0].push_back(std::max(spec.lb[0], root));
    candidates[0].l[1].push_back(std::max(spec.lb[1], root));
    candidates[1].l[0].push_back(std::max(spec.lb[0], Rat(root / 2)));
    candidates[1].l[1].push_back(std::max(spec.lb[1], Rat(root / 2)));
    Rat lx = root / 2;
    if (lx <= spec.lb[0]) {
      lx = spec.lb[0];
      exact2 = true;
    } else if (lx >= spec.ub[0]) {
      lx = spec.ub[0];
      exact2 = true;
    }
    Rat ly = spec.area == 0 ? spec.lb[1]
                            : std::max(spec.lb[1], Rat(spec.area / (4 * lx)));
    if (ly > spec.ub[1]) ly = spec.ub[1];
    candidates[2].l[0].push_back(lx);
    candidates[2].l[1].push_back(ly);
    candidates[0].exact = candidates[0].exact && exact0;
    candidates[1].exact = candidates[1].exact && exact1;
    candidates[2].exact = candidates[2].exact && exact2;
  }

  for (size_t ci = 0; ci < candidates.size(); ++ci) {
    Candidate& cand = candidates[ci];
    for (int s = 0; s < 2; ++s)
      for (int i = 0; i < n; ++i)
        out.values[static_cast<size_t>(rel.l_var[s][static_cast<size_t>(i)])] =
            cand.l[s][static_cast<size_t>(i)];
    bool ok;
    if (cand.exact) {
      ok = check_point(rel.lp, out.values, Rat(0)).feasible;
    } else {
      std::vector<double> fpoint(out.values.size());
      for (size_t j = 0; j < out.values.size(); ++j) fpoint[j] = to_double(out.values[j]);
      ok = check_point(rel.lp, fpoint, 1e-12).feasible;
    }
    if (ok || ci + 1 == candidates.size()) {
      out.exact = cand.exact;
      out.halfwidth_rule = cand.rule;
      return out;
    }
  }
  return out;  // unreachable
}

// ---------------------------------------------------------------------------
// Lifted one-axis system

namespace {

// Lex rank of the ordered pair (r, s) over distinct 1-based ids.
int orank(int n, int r, int s) { return (r - 1) * (n - 1) + (s - 1) - (s > r ? 1 : 0); }

std::pair<int, int> orank_inverse(int n, int rank) {
  int r = rank / (n - 1) + 1;
  int rem = rank % (n - 1);
  int s = rem + 1 + (rem + 1 >= r ? 1 : 0);
  return {r, s};
}

}  // namespace

int LiftedSystem::c(int i) const { return c_cols[static_cast<size_t>(i - 1)]; }

int LiftedSystem::d(int i, int j) const {
  if (i > j) std::swap(i, j);
  return d_cols[static_cast<size_t>(pair_index(n, i, j))];
}

int LiftedSystem::z(int r, int s) const {
  return z_cols[static_cast<size_t>((r - 1) * n + (s - 1))];
}

int LiftedSystem::yc(int i, int r, int s) const {
  return yc_cols[static_cast<size_t>((i - 1) * n * n + (r - 1) * n + (s - 1))];
}

int LiftedSystem::yd(int i, int j, int r, int s) const {
  if (i > j) std::swap(i, j);
  return yd_cols[static_cast<size_t>(pair_index(n, i, j) * n * n + (r - 1) * n + (s - 1))];
}

int LiftedSystem::yzz(int i, int j, int r, int s) const {
  int a = orank(n, i, j), b = orank(n, r, s);
  if (a == b) return z(i, j);
  int m = n * (n - 1);
  return yzz_cols[static_cast<size_t>(a * m + b)];
}

int LiftedSystem::moment_dim() const { return n * (n - 1) + 1; }

int LiftedSystem::moment_index(int r, int s) const { return 1 + orank(n, r, s); }

std::pair<int, int> LiftedSystem::moment_pair(int idx) const {
  if (idx == 0) return {0, 0};
  return orank_inverse(n, idx - 1);
}

LiftedSystem build_lifted(const Instance& inst) {
  if (inst.dim != 1) throw std::invalid_argument("lifted system is one-axis only");
  LiftedSystem sys;
  sys.n = inst.n;
  int n = inst.n;
  int m_o = n * (n - 1);
  LinearProgram& lp = sys.lp;
  const Rat& L = inst.floor_len[0];
  auto halfw = [&](int i) { return inst.comp(i).lb[0]; };

  for (int i = 1; i <= n; ++i) {
    int col = lp.add_var("c_" + num(i));
    lp.make_free(col);
    sys.c_cols.push_back(col);
  }
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      int col = lp.add_var("d_" + num(i) + "_" + num(j), inst.weight(i, j));
      lp.make_free(col);
      sys.d_cols.push_back(col);
    }
  sys.z_cols.assign(static_cast<size_t>(n) * static_cast<size_t>(n), -1);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      int col = lp.add_var("z_" + num(i) + "_" + num(j));
      lp.make_free(col);
      sys.z_cols[static_cast<size_t>((i - 1) * n + (j - 1))] = col;
    }
  sys.yc_cols.assign(static_cast<size_t>(n) * static_cast<size_t>(n) * static_cast<size_t>(n),
                     -1);
  for (int i = 1; i <= n; ++i)
    for (int r = 1; r <= n; ++r)
      for (int s = 1; s <= n; ++s) {
        if (r == s) continue;
        int col = lp.add_var("y_c_" + num(i) + "_z_" + num(r) + "_" + num(s));
        lp.make_free(col);
        sys.yc_cols[static_cast<size_t>((i - 1) * n * n + (r - 1) * n + (s - 1))] = col;
      }
  sys.yd_cols.assign(static_cast<size_t>(pair_count(n)) * static_cast<size_t>(n) *
                         static_cast<size_t>(n),
                     -1);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int r = 1; r <= n; ++r)
        for (int s = 1; s <= n; ++s) {
          if (r == s) continue;
          int col = lp.add_var("y_d_" + num(i) + "_" + num(j) + "_z_" + num(r) + "_" + num(s));
          lp.make_free(col);
          sys.yd_cols[static_cast<size_t>(pair_index(n, i, j) * n * n + (r - 1) * n +
                                          (s - 1))] = col;
        }
  sys.yzz_cols.assign(static_cast<size_t>(m_o) * static_cast<size_t>(m_o), -1);
  for (int a = 0; a < m_o; ++a)
    for (int b = a + 1; b < m_o; ++b) {
      auto [i, j] = orank_inverse(n, a);
      auto [r, s] = orank_inverse(n, b);
      int col = lp.add_var("y_z_" + num(i) + "_" + num(j) + "_z_" + num(r) + "_" + num(s));
      lp.make_free(col);
      sys.yzz_cols[static_cast<size_t>(a * m_o + b)] = col;
      sys.yzz_cols[static_cast<size_t>(b * m_o + a)] = col;
    }

  RowBuilder rb;
  auto otag = [&](int i, int j, int r, int s) {
    return "[" + num(i) + "," + num(j) + "|" + num(r) + "," + num(s) + "]";
  };

  // Base rows multiplied by z_rs ("on") and by 1 - z_rs ("off").
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int r = 1; r <= n; ++r)
        for (int s = 1; s <= n; ++s) {
          if (r == s) continue;
          std::string tag = otag(i, j, r, s);
          Rat lsum = halfw(i) + halfw(j);
          int dij = sys.d(i, j), ydij = sys.yd(i, j, r, s);
          int yci = sys.yc(i, r, s), ycj = sys.yc(j, r, s);
          // d >= c_i - c_j
          rb.add(dij, 1).add(sys.c(i), -1).add(sys.c(j), 1).add(ydij, -1).add(yci, 1).add(ycj,
                                                                                          -1);
          rb.emit(lp, "dist_fwd_off" + tag, Sense::kGe, Rat(0));
          rb.add(ydij, 1).add(yci, -1).add(ycj, 1);
          rb.emit(lp, "dist_fwd_on" + tag, Sense::kGe, Rat(0));
          // d >= c_j - c_i
          rb.add(dij, 1).add(sys.c(i), 1).add(sys.c(j), -1).add(ydij, -1).add(yci, -1).add(ycj,
                                                                                           1);
          rb.emit(lp, "dist_bwd_off" + tag, Sense::kGe, Rat(0));
          rb.add(ydij, 1).add(yci, 1).add(ycj, -1);
          rb.emit(lp, "dist_bwd_on" + tag, Sense::kGe, Rat(0));
          // z_ij z_rs + z_ji z_rs = z_rs
          rb.add(sys.yzz(i, j, r, s), 1).add(sys.yzz(j, i, r, s), 1).add(sys.z(r, s), -1);
          rb.emit(lp, "prod_z_sum" + tag, Sense::kEq, Rat(0));
          // d >= l_i + l_j
          rb.add(dij, 1).add(ydij, -1).add(sys.z(r, s), lsum);
          rb.emit(lp, "dist_cut_off" + tag, Sense::kGe, lsum);
          rb.add(ydij, 1).add(sys.z(r, s), -lsum);
          rb.emit(lp, "dist_cut_on" + tag, Sense::kGe, Rat(0));
        }

  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      for (int r = 1; r <= n; ++r)
        for (int s = 1; s <= n; ++s) {
          if (r == s) continue;
          std::string tag = otag(i, j, r, s);
          Rat lsum = halfw(i) + halfw(j);
          int zij = sys.z(i, j), zrs = sys.z(r, s);
          int yzz = sys.yzz(i, j, r, s);
          int yci = sys.yc(i, r, s), ycj = sys.yc(j, r, s);
          // c_i + l_i <= c_j - l_j + L(1 - z_ij)
          rb.add(zij, -L).add(zrs, lsum - L).add(yzz, L).add(sys.c(i), -1).add(sys.c(j), 1);
          rb.add(yci, 1).add(ycj, -1);
          rb.emit(lp, "sep_off" + tag, Sense::kGe, lsum - L);
          rb.add(zrs, L - lsum).add(yzz, -L).add(yci, -1).add(ycj, 1);
          rb.emit(lp, "sep_on" + tag, Sense::kGe, Rat(0));
          // 0 <= z_ij <= 1
          rb.add(zij, 1).add(yzz, -1);
          rb.emit(lp, "z_prod_hi" + tag, Sense::kGe, Rat(0));
          rb.add(yzz, 1);
          rb.emit(lp, "z_prod_lo" + tag, Sense::kGe, Rat(0));
          rb.add(zij, -1).add(zrs, -1).add(yzz, 1);
          rb.emit(lp, "z_comp_hi" + tag, Sense::kGe, Rat(-1));
          rb.add(zrs, 1).add(yzz, -1);
          rb.emit(lp, "z_comp_lo" + tag, Sense::kGe, Rat(0));
        }
    }

  for (int i = 1; i <= n; ++i)
    for (int r = 1; r <= n; ++r)
      for (int s = 1; s <= n; ++s) {
        if (r == s) continue;
        std::string tag = "[" + num(i) + "|" + num(r) + "," + num(s) + "]";
        int yci = sys.yc(i, r, s);
        // 0 <= c_i <= L
        rb.add(sys.c(i), 1).add(yci, -1);
        rb.emit(lp, "center_prod_hi" + tag, Sense::kGe, Rat(0));
        rb.add(yci, 1);
        rb.emit(lp, "center_prod_lo" + tag, Sense::kGe, Rat(0));
        rb.add(sys.c(i), -1).add(sys.z(r, s), -L).add(yci, 1);
        rb.emit(lp, "center_comp_hi" + tag, Sense::kGe, -L);
        rb.add(sys.z(r, s), L).add(yci, -1);
        rb.emit(lp, "center_comp_lo" + tag, Sense::kGe, Rat(0));
      }

  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      rb.add(sys.z(i, j), 1).add(sys.z(j, i), 1);
      rb.emit(lp, "rel_sum[" + num(i) + "," + num(j) + "]", Sense::kEq, Rat(1));
    }
  sys.lifted_rows = lp.rows.size();

  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      rb.add(sys.d(i, j), 1);
      rb.emit(lp, "dist_cut[" + num(i) + "," + num(j) + "]", Sense::kGe, halfw(i) + halfw(j));
    }
  sys.cut_rows = lp.rows.size() - sys.lifted_rows;
  return sys;
}

std::vector<Rat> lifted_point(const Instance& inst, const LiftedSystem& sys) {
  int n = sys.n;
  const Rat& L = inst.floor_len[0];
  auto halfw = [&](int i) { return inst.comp(i).lb[0]; };
  std::vector<Rat> pt(static_cast<size_t>(sys.lp.num_vars()), Rat(0));

  for (int i = 1; i <= n; ++i) pt[static_cast<size_t>(sys.c(i))] = L / 2;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      pt[static_cast<size_t>(sys.d(i, j))] = halfw(i) + halfw(j);
  for (int r = 1; r <= n; ++r)
    for (int s = 1; s <= n; ++s)
      if (r != s) pt[static_cast<size_t>(sys.z(r, s))] = Rat(1, 2);
  for (int i = 1; i <= n; ++i)
    for (int r = 1; r <= n; ++r)
      for (int s = 1; s <= n; ++s) {
        if (r == s) continue;
        // Shift by the component's own halfwidth: left when it is the left
        // member of the ordered pair, right when it is the right member.
        // Bounded drift keeps every distance row valid whatever the other
        // halfwidths are, as long as the floor dominates the total extent.
        Rat value;
        if (r == i)
          value = (L / 2 - halfw(i)) / 2;
        else if (s == i)
          value = (L / 2 + halfw(i)) / 2;
        else
          value = L / 4;
        pt[static_cast<size_t>(sys.yc(i, r, s))] = value;
      }
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int r = 1; r <= n; ++r)
        for (int s = 1; s <= n; ++s) {
          if (r == s) continue;
          pt[static_cast<size_t>(sys.yd(i, j, r, s))] = (halfw(i) + halfw(j)) / 2;
        }
  int m_o = n * (n - 1);
  for (int a = 0; a < m_o; ++a)
    for (int b = a + 1; b < m_o; ++b) {
      auto [i, j] = orank_inverse(n, a);
      auto [r, s] = orank_inverse(n, b);
      Rat value = (i == s && j == r) ? Rat(0) : Rat(1, 4);
      pt[static_cast<size_t>(sys.yzz(i, j, r, s))] = value;
    }
  return pt;
}

AuditReport audit_lifted_point(const Instance& inst, const LiftedSystem& sys,
                               std::span<const Rat> point) {
  AuditReport rep;
  rep.name = "lifted-lp";
  FeasibilityVerdict verdict = check_point(sys.lp, point, Rat(0));
  rep.families = family_verdicts(sys.lp, verdict, "rational");
  rep.objective = objective_at(sys.lp, point);
  rep.expected = omega2_closed_form(inst);
  rep.objective_match = rep.objective == rep.expected;
  finish_report(rep);
  return rep;
}

AuditReport audit_lifted_point(const Instance& inst) {
  LiftedSystem sys = build_lifted(inst);
  std::vector<Rat> pt = lifted_point(inst, sys);
  return audit_lifted_point(inst, sys, pt);
}

// ---------------------------------------------------------------------------
// Moment matrix

MomentMatrix build_moment_matrix(const Instance& inst) {
  if (inst.dim != 1) throw std::invalid_argument("moment matrix is one-axis only");
  MomentMatrix m;
  m.n = inst.n;
  int n = inst.n;
  int dim = n * (n - 1) + 1;
  m.entries.assign(static_cast<size_t>(dim), std::vector<Rat>(static_cast<size_t>(dim), Rat(0)));
  m.entries[0][0] = 1;
  for (int a = 1; a < dim; ++a) {
    m.entries[0][static_cast<size_t>(a)] = Rat(1, 2);
    m.entries[static_cast<size_t>(a)][0] = Rat(1, 2);
    m.entries[static_cast<size_t>(a)][static_cast<size_t>(a)] = Rat(1, 2);
  }
  for (int a = 1; a < dim; ++a)
    for (int b = 1; b < dim; ++b) {
      if (a == b) continue;
      auto [i, j] = orank_inverse(n, a - 1);
      auto [r, s] = orank_inverse(n, b - 1);
      bool transpose = (i == s && j == r);
      m.entries[static_cast<size_t>(a)][static_cast<size_t>(b)] =
          transpose ? Rat(0) : Rat(1, 4);
    }
  return m;
}

AuditReport audit_moment_matrix(const MomentMatrix& m) {
  AuditReport rep;
  rep.name = "moment-matrix";
  int n = m.n;
  int dim = n * (n - 1) + 1;
  auto idx = [](int v) { return static_cast<size_t>(v); };

  FamilyVerdict sym;
  sym.family = "symmetric";
  sym.mode = "rational";
  for (int a = 0; a < dim; ++a)
    for (int b = a + 1; b < dim; ++b) {
      sym.rows += 1;
      Rat diff = m.entries[idx(a)][idx(b)] - m.entries[idx(b)][idx(a)];
      if (diff < 0) diff = -diff;
      if (diff > 0) {
        sym.satisfied = false;
        if (diff > sym.worst) {
          sym.worst = diff;
          sym.worst_row = "symmetric[" + num(a) + "," + num(b) + "]";
        }
      }
    }

  // Congruence passes: unit elementary row operations mirrored on columns.
  std::vector<std::vector<Rat>> e = m.entries;
  for (int a = 1; a < dim; ++a)
    for (int col = 0; col < dim; ++col)
      e[idx(a)][idx(col)] -= e[idx(0)][idx(col)] / 2;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      int lo = 1 + orank(n, i, j), hi = 1 + orank(n, j, i);
      for (int col = 0; col < dim; ++col) e[idx(hi)][idx(col)] += e[idx(lo)][idx(col)];
    }
  for (int b = 1; b < dim; ++b)
    for (int row = 0; row < dim; ++row)
      e[idx(row)][idx(b)] -= e[idx(row)][idx(0)] / 2;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      int lo = 1 + orank(n, i, j), hi = 1 + orank(n, j, i);
      for (int row = 0; row < dim; ++row) e[idx(row)][idx(hi)] += e[idx(row)][idx(lo)];
    }

  FamilyVerdict diag;
  diag.family = "diagonal";
  diag.mode = "rational";
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      if (a == b) continue;
      diag.rows += 1;
      Rat v = e[idx(a)][idx(b)];
      if (v < 0) v = -v;
      if (v > 0) {
        diag.satisfied = false;
        if (v > diag.worst) {
          diag.worst = v;
          diag.worst_row = "diagonal[" + num(a) + "," + num(b) + "]";
        }
      }
    }

  FamilyVerdict values;
  values.family = "diagonal_values";
  values.mode = "rational";
  FamilyVerdict nonneg;
  nonneg.family = "diagonal_nonneg";
  nonneg.mode = "rational";
  for (int a = 0; a < dim; ++a) {
    values.rows += 1;
    nonneg.rows += 1;
    const Rat& v = e[idx(a)][idx(a)];
    if (!(v == 1 || v == Rat(1, 4) || v == 0)) {
      values.satisfied = false;
      values.worst_row = "diagonal_values[" + num(a) + "]";
      values.worst = std::max(values.worst, v < 0 ? Rat(-v) : v);
    }
    if (v < 0) {
      nonneg.satisfied = false;
      nonneg.worst_row = "diagonal_nonneg[" + num(a) + "]";
      nonneg.worst = std::max(nonneg.worst, Rat(-v));
    }
  }

  rep.families = {sym, diag, values, nonneg};
  rep.objective = 0;
  rep.expected = 0;
  rep.objective_match = true;
  finish_report(rep);
  return rep;
}

AuditReport audit_moment_matrix(const Instance& inst) {
  return audit_moment_matrix(build_moment_matrix(inst));
}

void export_lifted(const LiftedSystem& sys, std::ostream& out) {
  write_lp_format(sys.lp, out);
  int dim = sys.moment_dim();
  out << "\\ product matrix M: symmetric, indexed by the ordered pairs below;\n";
  out << "\\ slot 0 is the constant one. Entries name LP columns; the matrix\n";
  out << "\\ is constrained positive semidefinite.\n";
  out << "\\ index map:\n";
  out << "\\   0 : 1\n";
  for (int a = 1; a < dim; ++a) {
    auto [r, s] = sys.moment_pair(a);
    out << "\\   " << a << " : " << sys.lp.var_names[static_cast<size_t>(sys.z(r, s))] << "\n";
  }
  out << "\\ lower triangle (row col entry):\n";
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b <= a; ++b) {
      out << "\\   " << a << " " << b << " ";
      if (a == 0 && b == 0) {
        out << "1\n";
        continue;
      }
      if (b == 0) {
        auto [r, s] = sys.moment_pair(a);
        out << sys.lp.var_names[static_cast<size_t>(sys.z(r, s))] << "\n";
        continue;
      }
      auto [i, j] = sys.moment_pair(a);
      auto [r, s] = sys.moment_pair(b);
      out << sys.lp.var_names[static_cast<size_t>(sys.yzz(i, j, r, s))] << "\n";
    }
}

// ---------------------------------------------------------------------------
// Width-coordinate SDP relaxation

SdpSystem build_sdp_system(const Instance& inst) {
  if (inst.dim != 2) throw std::invalid_argument("SDP relaxation is two-axis only");
  SdpSystem sys;
  sys.n = inst.n;
  int n = inst.n;
  LinearProgram& lp = sys.lp;
  const char* ax_name[2] = {"x", "y"};

  for (int s = 0; s < 2; ++s) {
    sys.floor_len[s] = inst.floor_len[s];
    for (int i = 1; i <= n; ++i) {
      sys.wlb[s].push_back(2 * inst.comp(i).lb[s]);
      sys.wub[s].push_back(2 * inst.comp(i).ub[s]);
    }
  }
  for (int i = 1; i <= n; ++i) sys.area.push_back(inst.comp(i).area);

  for (int s = 0; s < 2; ++s)
    for (int i = 1; i <= n; ++i) {
      int col = lp.add_var(std::string("c_") + ax_name[s] + "_" + num(i));
      lp.make_free(col);
      sys.c_var[s].push_back(col);
    }
  for (int s = 0; s < 2; ++s)
    for (int i = 1; i <= n; ++i) {
      int col = lp.add_var(std::string("w_") + ax_name[s] + "_" + num(i));
      lp.make_free(col);
      sys.w_var[s].push_back(col);
    }
  for (int s = 0; s < 2; ++s)
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        int col = lp.add_var(std::string("d_") + ax_name[s] + "_" + num(i) + "_" + num(j),
                             inst.weight(i, j));
        lp.make_free(col);
        sys.d_var[s].push_back(col);
      }
  for (int s = 0; s < 2; ++s)
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        int col = lp.add_var(std::string("S_") + ax_name[s] + "_" + num(i) + "_" + num(j));
        lp.make_free(col);
        sys.s_var[s].push_back(col);
      }
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      int col = lp.add_var("sigma_" + num(i) + "_" + num(j));
      lp.make_free(col);
      sys.sigma_var.push_back(col);
    }
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      int col = lp.add_var("alpha_" + num(i) + "_" + num(j));
      lp.make_free(col);
      sys.alpha_var.push_back(col);
    }
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      int col = lp.add_var("sa_" + num(i) + "_" + num(j));
      lp.make_free(col);
      sys.prod_var.push_back(col);
    }

  auto cvar = [&](int s, int i) { return sys.c_var[s][static_cast<size_t>(i - 1)]; };
  auto wvar = [&](int s, int i) { return sys.w_var[s][static_cast<size_t>(i - 1)]; };
  auto rank = [&](int i, int j) { return static_cast<size_t>(pair_index(n, i, j)); };
  RowBuilder rb;

  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      std::string tag = "[" + num(i) + "," + num(j) + "]";
      size_t pr = rank(i, j);
      int sg = sys.sigma_var[pr], al = sys.alpha_var[pr], sa = sys.prod_var[pr];

      for (int s = 0; s < 2; ++s) {
        const Rat& L = sys.floor_len[s];
        std::string ax = ax_name[s];
        int dv = sys.d_var[s][pr], sv = sys.s_var[s][pr];
        Rat sig_dir = s == 0 ? Rat(1) : Rat(-1);  // direction +1 separates on x

        // objective variable vs the component extents and the floor
        rb.add(dv, 1).add(wvar(s, i), Rat(-1, 2)).add(wvar(s, j), Rat(-1, 2));
        rb.add(sg, -sig_dir * L / 2);
        rb.emit(lp, "dist_floor_" + ax + tag, Sense::kGe, -L / 2);

        // slack coupling d = (c_j - c_i) + 2S
        rb.add(dv, 1).add(sv, -2).add(cvar(s, j), -1).add(cvar(s, i), 1);
        rb.emit(lp, "slack_link_" + ax + tag, Sense::kEq, Rat(0));
        rb.add(sv, 1);
        rb.emit(lp, "slack_nonneg_" + ax + tag, Sense::kGe, Rat(0));
        rb.add(sv, 1).add(cvar(s, j), 1).add(cvar(s, i), -1);
        rb.emit(lp, "slack_shift_" + ax + tag, Sense::kGe, Rat(0));

        // slack caps; the cap constant shrinks the floor by the minimum widths
        Rat cap = L - (sys.wlb[s][static_cast<size_t>(i - 1)] +
                       sys.wlb[s][static_cast<size_t>(j - 1)]) /
                          2;
        Rat q = cap / 4;
        rb.add(sv, 1).add(sg, sig_dir * q).add(al, q).add(sa, sig_dir * q);
        rb.emit(lp, "slack_cap_" + ax + tag, Sense::kLe, 3 * q);
        rb.add(sv, 1).add(cvar(s, j), 1).add(cvar(s, i), -1);
        rb.add(sg, sig_dir * q).add(al, -q).add(sa, -sig_dir * q);
        rb.emit(lp, "slack_cap_shift_" + ax + tag, Sense::kLe, 3 * q);

        // distance cuts: d^s at least the half-sum of minimum widths when the
        // pair separates along s, vacuous on the other axis
        Rat wsum = (sys.wlb[s][static_cast<size_t>(i - 1)] +
                    sys.wlb[s][static_cast<size_t>(j - 1)]) /
                   2;
        rb.add(dv, 1).add(sg, -sig_dir * wsum / 2);
        rb.emit(lp, "dist_cut_" + ax + tag, Sense::kGe, wsum / 2);

        // span caps on the center offsets
        rb.add(cvar(s, i), 1).add(cvar(s, j), -1);
        rb.add(wvar(s, i), Rat(1, 2)).add(wvar(s, j), Rat(1, 2));
        rb.add(sg, sig_dir * L / 2).add(al, L / 2).add(sa, sig_dir * L / 2);
        rb.emit(lp, "span_fwd_" + ax + tag, Sense::kLe, 3 * L / 2);
        rb.add(cvar(s, j), 1).add(cvar(s, i), -1);
        rb.add(wvar(s, i), Rat(1, 2)).add(wvar(s, j), Rat(1, 2));
        rb.add(sg, sig_dir * L / 2).add(al, -L / 2).add(sa, -sig_dir * L / 2);
        rb.emit(lp, "span_bwd_" + ax + tag, Sense::kLe, 3 * L / 2);
      }

      rb.add(sg, 1);
      rb.emit(lp, "sigma_hi" + tag, Sense::kLe, Rat(1));
      rb.add(sg, 1);
      rb.emit(lp, "sigma_lo" + tag, Sense::kGe, Rat(-1));
      rb.add(al, 1);
      rb.emit(lp, "alpha_hi" + tag, Sense::kLe, Rat(1));
      rb.add(al, 1);
      rb.emit(lp, "alpha_lo" + tag, Sense::kGe, Rat(-1));
    }

  for (int s = 0; s < 2; ++s)
    for (int i = 1; i <= n; ++i) {
      std::string tag = std::string("[") + ax_name[s] + "," + num(i) + "]";
      rb.add(wvar(s, i), 1);
      rb.emit(lp, "width_lo" + tag, Sense::kGe, sys.wlb[s][static_cast<size_t>(i - 1)]);
      rb.add(wvar(s, i), 1);
      rb.emit(lp, "width_hi" + tag, Sense::kLe, sys.wub[s][static_cast<size_t>(i - 1)]);
    }

  sys.quartic_rows = static_cast<size_t>(n) * static_cast<size_t>(n - 1) *
                     static_cast<size_t>(std::max(0, n - 2));
  return sys;
}

std::vector<Rat> sdp_point(const Instance&, const SdpSystem& sys) {
  int n = sys.n;
  std::vector<Rat> pt(static_cast<size_t>(sys.lp.num_vars()), Rat(0));
  auto rank = [&](int i, int j) { return static_cast<size_t>(pair_index(n, i, j)); };

  // Separation axis per pair: the one with the smaller minimum-width sum,
  // ties to x.
  auto axis_of = [&](int i, int j) {
    Rat sx = sys.wlb[0][static_cast<size_t>(i - 1)] + sys.wlb[0][static_cast<size_t>(j - 1)];
    Rat sy = sys.wlb[1][static_cast<size_t>(i - 1)] + sys.wlb[1][static_cast<size_t>(j - 1)];
    return sx <= sy ? 0 : 1;
  };

  // Widths: on every axis a component separates along, sit at the minimum
  // width; complete the area on the free axis. A component pulled both ways
  // keeps both minimums (the area block then reports whatever is true).
  std::vector<Rat> width[2];
  for (int i = 1; i <= n; ++i) {
    bool used[2] = {false, false};
    for (int j = 1; j <= n; ++j)
      if (j != i) used[axis_of(std::min(i, j), std::max(i, j))] = true;
    const Rat& a = sys.area[static_cast<size_t>(i - 1)];
    Rat wx = sys.wlb[0][static_cast<size_t>(i - 1)];
    Rat wy = sys.wlb[1][static_cast<size_t>(i - 1)];
    if (!used[1]) {
      if (a > 0) wy = std::max(wy, Rat(a / wx));
    } else if (!used[0]) {
      if (a > 0) wx = std::max(wx, Rat(a / wy));
    }
    width[0].push_back(wx);
    width[1].push_back(wy);
  }
  for (int s = 0; s < 2; ++s)
    for (int i = 1; i <= n; ++i)
      pt[static_cast<size_t>(sys.w_var[s][static_cast<size_t>(i - 1)])] =
          width[s][static_cast<size_t>(i - 1)];

  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      size_t pr = rank(i, j);
      int axis = axis_of(i, j);
      pt[static_cast<size_t>(sys.sigma_var[pr])] = axis == 0 ? Rat(1) : Rat(-1);
      Rat dist = (width[axis][static_cast<size_t>(i - 1)] +
                  width[axis][static_cast<size_t>(j - 1)]) /
                 2;
      pt[static_cast<size_t>(sys.d_var[axis][pr])] = dist;
      pt[static_cast<size_t>(sys.s_var[axis][pr])] = dist / 2;
    }
  return pt;
}

AuditReport audit_sdp_point(const Instance& inst) {
  SdpSystem sys = build_sdp_system(inst);
  std::vector<Rat> pt = sdp_point(inst, sys);
  int n = sys.n;
  auto rank = [&](int i, int j) { return static_cast<size_t>(pair_index(n, i, j)); };

  AuditReport rep;
  rep.name = "sdp";
  FeasibilityVerdict verdict = check_point(sys.lp, pt, Rat(0));
  rep.families = family_verdicts(sys.lp, verdict, "rational");

  // 2x2 area blocks [[w^x, sqrt(a)], [sqrt(a), w^y]]: nonnegative diagonal
  // and determinant checked by squaring, so the radical never materializes.
  FamilyVerdict area;
  area.family = "area_block";
  area.mode = "rational";
  for (int i = 1; i <= n; ++i) {
    area.rows += 1;
    const Rat& wx = pt[static_cast<size_t>(sys.w_var[0][static_cast<size_t>(i - 1)])];
    const Rat& wy = pt[static_cast<size_t>(sys.w_var[1][static_cast<size_t>(i - 1)])];
    Rat det = wx * wy - sys.area[static_cast<size_t>(i - 1)];
    Rat bad = 0;
    if (wx < 0) bad = std::max(bad, Rat(-wx));
    if (wy < 0) bad = std::max(bad, Rat(-wy));
    if (det < 0) bad = std::max(bad, Rat(-det));
    if (bad > 0) {
      area.satisfied = false;
      if (bad > area.worst) {
        area.worst = bad;
        area.worst_row = "area_block[" + num(i) + "]";
      }
    }
  }
  rep.families.push_back(area);

  // 2x2 floor blocks [[(L-w)/2, c], [c, (L-w)/2]]: (L-w)/2 >= |c|.
  FamilyVerdict floor_blk;
  floor_blk.family = "floor_block";
  floor_blk.mode = "rational";
  const char* ax_name[2] = {"x", "y"};
  for (int s = 0; s < 2; ++s)
    for (int i = 1; i <= n; ++i) {
      floor_blk.rows += 1;
      const Rat& w = pt[static_cast<size_t>(sys.w_var[s][static_cast<size_t>(i - 1)])];
      const Rat& c = pt[static_cast<size_t>(sys.c_var[s][static_cast<size_t>(i - 1)])];
      Rat margin = (sys.floor_len[s] - w) / 2;
      Rat cc = c < 0 ? Rat(-c) : c;
      if (margin < cc) {
        floor_blk.satisfied = false;
        Rat bad = cc - margin;
        if (bad > floor_blk.worst) {
          floor_blk.worst = bad;
          floor_blk.worst_row = std::string("floor_block[") + ax_name[s] + "," + num(i) + "]";
        }
      }
    }
  rep.families.push_back(floor_blk);

  // Quartic complementarity rows, evaluated as polynomials. The order
  // variables are antisymmetric under index reversal.
  FamilyVerdict quart;
  quart.family = "complementarity";
  quart.mode = "rational";
  auto sigma_at = [&](int a, int b) {
    return pt[static_cast<size_t>(sys.sigma_var[rank(std::min(a, b), std::max(a, b))])];
  };
  auto alpha_at = [&](int a, int b) {
    const Rat& v = pt[static_cast<size_t>(sys.alpha_var[rank(std::min(a, b), std::max(a, b))])];
    return a < b ? v : Rat(-v);
  };
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (j == i) continue;
      for (int k = 1; k <= n; ++k) {
        if (k == i || k == j) continue;
        quart.rows += 1;
        Rat value = (sigma_at(i, j) + sigma_at(j, k)) * (sigma_at(i, j) + sigma_at(i, k)) *
                    (alpha_at(i, j) + alpha_at(j, k)) * (alpha_at(i, j) - alpha_at(i, k));
        if (value != 0) {
          quart.satisfied = false;
          Rat bad = value < 0 ? Rat(-value) : value;
          if (bad > quart.worst) {
            quart.worst = bad;
            quart.worst_row =
                "complementarity[" + num(i) + "," + num(j) + "," + num(k) + "]";
          }
        }
      }
    }
  rep.families.push_back(quart);

  // Linearized products: consistency makes the rank-one product matrix
  // positive semidefinite by construction.
  FamilyVerdict prod;
  prod.family = "product_matrix";
  prod.mode = "rational";
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      prod.rows += 1;
      size_t pr = rank(i, j);
      Rat expect = pt[static_cast<size_t>(sys.sigma_var[pr])] *
                   pt[static_cast<size_t>(sys.alpha_var[pr])];
      Rat got = pt[static_cast<size_t>(sys.prod_var[pr])];
      Rat diff = got - expect;
      if (diff < 0) diff = -diff;
      if (diff > 0) {
        prod.satisfied = false;
        if (diff > prod.worst) {
          prod.worst = diff;
          prod.worst_row = "product_matrix[" + num(i) + "," + num(j) + "]";
        }
      }
    }
  rep.families.push_back(prod);

  rep.objective = objective_at(sys.lp, pt);
  rep.expected = omega2_closed_form(inst);
  rep.objective_match = rep.objective == rep.expected;
  finish_report(rep);
  return rep;
}

// ---------------------------------------------------------------------------
// Relaxation consistency

AuditReport audit_relaxation(const Instance& inst) {
  AuditReport rep;
  rep.name = "relaxation";
  bool exact = inst.dim == 1;
  std::string mode = exact ? "rational" : "float";
  double slack = 1e-9;

  Rat v0 = relaxation_value(inst, CutFamily::kNone);
  FamilyVerdict base;
  base.family = "cut_free_value";
  base.mode = mode;
  base.rows = 1;
  Rat mag0 = v0 < 0 ? Rat(-v0) : v0;
  base.satisfied = exact ? mag0 == 0 : to_double(mag0) <= slack;
  if (!base.satisfied) {
    base.worst = mag0;
    base.worst_row = "cut_free_value[0]";
  }
  rep.families.push_back(base);

  RelaxationLp rel = build_relaxation(inst, CutFamily::kNone);
  ZeroPoint zp = zero_point(inst);
  FamilyVerdict zpf;
  zpf.family = "zero_point";
  zpf.rows = rel.lp.rows.size();
  FeasibilityVerdict verdict;
  if (zp.exact) {
    zpf.mode = "rational";
    verdict = check_point(rel.lp, zp.values, Rat(0));
  } else {
    zpf.mode = "float";
    std::vector<double> fpoint(zp.values.size());
    for (size_t j = 0; j < zp.values.size(); ++j) fpoint[j] = to_double(zp.values[j]);
    verdict = check_point(rel.lp, fpoint, 1e-12);
  }
  zpf.satisfied = verdict.feasible;
  for (const Violation& v : verdict.violations)
    if (v.amount > zpf.worst) {
      zpf.worst = v.amount;
      zpf.worst_row = v.constraint;
    }
  rep.families.push_back(zpf);

  Rat v1 = relaxation_value(inst, CutFamily::kObjectiveCuts);
  Rat w2 = omega2_closed_form(inst);
  FamilyVerdict cutv;
  cutv.family = "cut_value";
  cutv.mode = mode;
  cutv.rows = 1;
  Rat diff = v1 - w2;
  if (diff < 0) diff = -diff;
  cutv.satisfied = exact ? diff == 0 : to_double(diff) <= slack;
  if (!cutv.satisfied) {
    cutv.worst = diff;
    cutv.worst_row = "cut_value[0]";
  }
  rep.families.push_back(cutv);

  rep.objective = v1;
  rep.expected = w2;
  rep.objective_match = cutv.satisfied;
  finish_report(rep);
  return rep;
}

}  // namespace flp
