#include "flp/bound.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <thread>

namespace flp {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

SubsetFamily build_family(const Instance& inst, int k) {
  if (k < 2 || k > inst.n) throw std::invalid_argument("family level out of range");
  std::vector<int> active = active_components(inst);
  SubsetFamily fam;
  fam.tag = "level-" + std::to_string(k);
  int m = static_cast<int>(active.size());
  int cap = std::min(k, m);
  // Subsets in lex order directly: grow a prefix, emit once size >= 2.
  std::vector<int> cur;
  std::function<void(int)> grow = [&](int from) {
    if (static_cast<int>(cur.size()) >= 2) fam.subsets.push_back(cur);
    if (static_cast<int>(cur.size()) == cap) return;
    for (int a = from; a < m; ++a) {
      cur.push_back(active[a]);
      grow(a + 1);
      cur.pop_back();
    }
  };
  grow(0);
  std::sort(fam.subsets.begin(), fam.subsets.end());
  return fam;
}

SubsetFamily prune_family(const Instance& inst, const SubsetFamily& fam) {
  SubsetFamily out;
  out.tag = fam.tag.rfind("level-", 0) == 0 ? "pruned-from-" + fam.tag.substr(6) : "pruned";
  for (const std::vector<int>& subset : fam.subsets) {
    // Repeatedly delete members with zero weight to everything remaining;
    // each deletion can isolate another member, hence the fixed point loop.
    std::vector<int> cur = subset;
    bool changed = true;
    while (changed && cur.size() >= 2) {
      changed = false;
      for (size_t a = 0; a < cur.size(); ++a) {
        bool tied = false;
        for (size_t b = 0; b < cur.size() && !tied; ++b) {
          if (a == b) continue;
          int i = std::min(cur[a], cur[b]), j = std::max(cur[a], cur[b]);
          tied = inst.weight(i, j) > 0;
        }
        if (!tied) {
          cur.erase(cur.begin() + static_cast<std::ptrdiff_t>(a));
          changed = true;
          break;
        }
      }
    }
    // A subset that shrank is dominated by the row its remainder (still in the
    // family when it has >= 2 members) generates; drop it either way.
    if (cur.size() == subset.size()) out.subsets.push_back(cur);
  }
  std::sort(out.subsets.begin(), out.subsets.end());
  out.subsets.erase(std::unique(out.subsets.begin(), out.subsets.end()), out.subsets.end());
  return out;
}

LinearProgram build_master_lp(const Instance& inst, std::span<const SubsetBound> bounds) {
  LinearProgram lp;
  std::vector<int> dvar(static_cast<size_t>(pair_count(inst.n)), -1);
  for (int i = 1; i <= inst.n; ++i)
    for (int j = i + 1; j <= inst.n; ++j) {
      const Rat& w = inst.weight(i, j);
      if (w > 0)
        dvar[pair_index(inst.n, i, j)] =
            lp.add_var("d_" + std::to_string(i) + "_" + std::to_string(j), w);
    }
  for (const SubsetBound& sb : bounds) {
    std::string name = "cover";
    for (int id : sb.subset) name += "_" + std::to_string(id);
    LpRow& row = lp.add_row(name, Sense::kGe, sb.gamma);
    for (size_t a = 0; a < sb.subset.size(); ++a)
      for (size_t b = a + 1; b < sb.subset.size(); ++b) {
        int i = sb.subset[a], j = sb.subset[b];
        const Rat& w = inst.weight(i, j);
        if (w > 0) row.terms.emplace_back(dvar[pair_index(inst.n, i, j)], w);
      }
  }
  return lp;
}

BoundResult master_bound(const Instance& inst, std::vector<SubsetBound> bounds,
                         std::optional<ArithMode> mode) {
  auto t0 = std::chrono::steady_clock::now();
  std::sort(bounds.begin(), bounds.end(),
            [](const SubsetBound& a, const SubsetBound& b) { return a.subset < b.subset; });

  BoundResult res;
  res.solved_size = bounds.size();
  if (bounds.empty()) {
    res.omega = 0;
    res.master_seconds = seconds_since(t0);
    return res;
  }

  LinearProgram lp = build_master_lp(inst, bounds);

  LpOptions opt;
  opt.mode = mode.value_or(inst.n <= 15 ? ArithMode::kRational : ArithMode::kFloat);
  LpSolution sol = solve_lp(lp, opt);
  if (sol.status != LpStatus::kOptimal)
    throw SolverError("master aggregation did not solve to optimality");

  res.omega = sol.value;
  res.duals = sol.dual;
  res.bounds = std::move(bounds);
  res.master_seconds = seconds_since(t0);
  return res;
}

Rat omega2_closed_form(const Instance& inst) {
  Rat total = 0;
  for (int i = 1; i <= inst.n; ++i)
    for (int j = i + 1; j <= inst.n; ++j) {
      const Rat& w = inst.weight(i, j);
      if (w == 0) continue;
      const ComponentSpec& ci = inst.comp(i);
      const ComponentSpec& cj = inst.comp(j);
      if (inst.dim == 1) {
        total += w * (ci.lb[0] + cj.lb[0]);
      } else {
        Rat x = ci.lb[0] + cj.lb[0];
        Rat y = ci.lb[1] + cj.lb[1];
        total += w * (x < y ? x : y);
      }
    }
  return total;
}

namespace {

SubsetBound solve_subset(const Instance& inst, const std::vector<int>& subset,
                         const BoundConfig& cfg) {
  if (inst.dim == 1) return gamma_1d(inst, subset);
  return gamma_2d(inst, subset, cfg.refine);
}

// Runs the missing subsets on cfg.workers threads. Slots are preassigned so
// the merge is order-independent; exceptions surface after the join.
void solve_batch(const Instance& inst, const BoundConfig& cfg,
                 const std::vector<std::vector<int>>& jobs,
                 std::map<std::vector<int>, SubsetBound>& memo) {
  std::vector<SubsetBound> slot(jobs.size());
  std::atomic<size_t> next{0};
  std::vector<std::exception_ptr> err(
      static_cast<size_t>(std::max(1, cfg.workers)), nullptr);
  auto run = [&](size_t worker) {
    for (size_t idx; (idx = next.fetch_add(1)) < jobs.size();) {
      try {
        slot[idx] = solve_subset(inst, jobs[idx], cfg);
      } catch (...) {
        err[worker] = std::current_exception();
        return;
      }
    }
  };
  int nw = std::min<int>(std::max(1, cfg.workers), static_cast<int>(jobs.size()));
  if (nw <= 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (int wkr = 1; wkr < nw; ++wkr) pool.emplace_back(run, static_cast<size_t>(wkr));
    run(0);
    for (std::thread& t : pool) t.join();
  }
  for (const std::exception_ptr& e : err)
    if (e) std::rethrow_exception(e);
  for (size_t idx = 0; idx < jobs.size(); ++idx) memo[jobs[idx]] = std::move(slot[idx]);
}

}  // namespace

std::vector<BoundResult> hierarchy(const Instance& inst, int k_max, const BoundConfig& cfg) {
  int hard_cap = inst.dim == 1 ? 9 : 5;
  if (k_max < 2) throw std::invalid_argument("hierarchy needs k_max >= 2");
  if (k_max > inst.n) throw SizeCapError("hierarchy level exceeds component count");
  if (k_max > hard_cap) throw SizeCapError("hierarchy level exceeds the enumeration cap");

  std::map<std::vector<int>, SubsetBound> memo;
  std::vector<BoundResult> out;
  for (int k = 2; k <= k_max; ++k) {
    SubsetFamily fam = build_family(inst, k);
    size_t before = fam.subsets.size();
    if (cfg.prune) fam = prune_family(inst, fam);

    auto t0 = std::chrono::steady_clock::now();
    std::vector<std::vector<int>> jobs;
    for (const std::vector<int>& subset : fam.subsets)
      if (!memo.count(subset)) jobs.push_back(subset);
    std::sort(jobs.begin(), jobs.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
      if (a.size() != b.size()) return a.size() > b.size();
      return a < b;
    });
    solve_batch(inst, cfg, jobs, memo);
    double sub_secs = seconds_since(t0);

    std::vector<SubsetBound> rows;
    rows.reserve(fam.subsets.size());
    for (const std::vector<int>& subset : fam.subsets) rows.push_back(memo.at(subset));
    BoundResult res = master_bound(inst, std::move(rows), cfg.master_mode);
    res.level = k;
    res.family_size = before;
    res.subproblem_seconds = sub_secs;
    out.push_back(std::move(res));
  }
  return out;
}

SubsetBound exact_optimum(const Instance& inst, const RefineConfig& cfg) {
  std::vector<int> all(static_cast<size_t>(inst.n));
  for (int i = 0; i < inst.n; ++i) all[static_cast<size_t>(i)] = i + 1;
  if (inst.dim == 1) {
    if (inst.n > 8) throw SizeCapError("exact enumeration capped at 8 components");
    return gamma_1d(inst, all);
  }
  if (inst.n > 4) throw SizeCapError("exact enumeration capped at 4 components");
  return gamma_2d(inst, all, cfg);
}

}  // namespace flp
