// End-to-end acceptance checks. Each criterion prints one [PASS]/[FAIL] line;
// the exit code is the number of failures. The command-line binary path
// arrives as argv[1] for the spawned-process checks.
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "flp/bound.hpp"
#include "flp/errors.hpp"
#include "flp/instance.hpp"
#include "flp/theory_audit.hpp"
#include "oracles.hpp"

using flp::Instance;
using flp::Rat;

namespace {

constexpr double kFloatTol = 1e-9;    // two-axis value comparisons
constexpr double kOmega2Ms = 10.0;    // closed-form budget, milliseconds
constexpr double kMasterSec = 1.0;    // level-two master budget, seconds
constexpr double kChain1dSec = 60.0;  // criterion 1 wall budget
constexpr double kChain2dSec = 300.0; // criterion 2 wall budget

std::string g_flp;

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

Instance triple_1d() {
  std::istringstream text(
      "FLP 1\nN 3\nL 100\nCOMP 1 1\nCOMP 2 2\nCOMP 3 3\nP 1 2 1\nP 1 3 1\nP 2 3 1\n");
  return flp::parse_instance(text);
}

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  std::string cmd = "\"" + g_flp + "\" " + args + " 2>/dev/null";
  CliResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return res;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
  int status = pclose(pipe);
  res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

// --- criterion 1: 1D hierarchy is monotone and exact at the top ------------

bool criterion1(std::string& detail) {
  double t0 = now_seconds();
  int checked = 0;
  for (int i = 0; i < 50; ++i) {
    unsigned seed = 100 + static_cast<unsigned>(i);
    int n = 2 + i % 6;
    double density = i % 3 == 0 ? 0.3 : (i % 3 == 1 ? 0.7 : 1.0);
    Instance inst = flp::generate_instance(1, n, density, seed);
    std::vector<flp::BoundResult> levels = flp::hierarchy(inst, n);
    for (size_t k = 1; k < levels.size(); ++k)
      if (!(levels[k].omega >= levels[k - 1].omega)) {
        detail = "chain not monotone at seed " + std::to_string(seed);
        return false;
      }
    flp::SubsetBound exact = flp::exact_optimum(inst);
    if (!(levels.back().omega == exact.gamma)) {
      detail = "top level misses the optimum at seed " + std::to_string(seed);
      return false;
    }
    ++checked;
  }
  double dt = now_seconds() - t0;
  detail = std::to_string(checked) + " instances, " + fmt(dt) + "s";
  return dt < kChain1dSec;
}

// --- criterion 2: 2D hierarchy is monotone and below the witness -----------

bool criterion2(std::string& detail) {
  double t0 = now_seconds();
  int checked = 0;
  for (int i = 0; i < 20; ++i) {
    unsigned seed = 200 + static_cast<unsigned>(i);
    Instance inst = flp::generate_instance(2, 4, 1.0, seed);
    std::vector<flp::BoundResult> levels = flp::hierarchy(inst, 4);
    for (size_t k = 1; k < levels.size(); ++k)
      if (flp::to_double(levels[k].omega) < flp::to_double(levels[k - 1].omega) - kFloatTol) {
        detail = "chain dips at seed " + std::to_string(seed);
        return false;
      }
    flp::SubsetBound exact = flp::exact_optimum(inst);
    if (flp::to_double(levels.back().omega) > flp::to_double(exact.upper) + kFloatTol) {
      detail = "bound exceeds the witness at seed " + std::to_string(seed);
      return false;
    }
    ++checked;
  }
  double dt = now_seconds() - t0;
  detail = std::to_string(checked) + " instances, " + fmt(dt) + "s";
  return dt < kChain2dSec;
}

// --- criterion 3: pair-level master equals the closed form -----------------

bool criterion3(std::string& detail) {
  int checked = 0;
  for (int i = 0; i < 15; ++i) {
    unsigned seed = 300 + static_cast<unsigned>(i);
    int dim = i < 10 ? 1 : 2;
    int n = dim == 1 ? 3 + i % 5 : 4;
    double density = i % 3 == 0 ? 0.5 : 1.0;
    Instance inst = flp::generate_instance(dim, n, density, seed);
    std::vector<flp::SubsetBound> bounds;
    for (const auto& subset : flp::build_family(inst, 2).subsets)
      bounds.push_back(dim == 1 ? flp::gamma_1d(inst, subset) : flp::gamma_2d(inst, subset));
    flp::BoundResult level2 = flp::master_bound(inst, std::move(bounds));
    Rat closed = flp::omega2_closed_form(inst);
    bool ok = dim == 1 ? level2.omega == closed
                       : std::abs(flp::to_double(level2.omega) - flp::to_double(closed)) <=
                             kFloatTol;
    if (!ok) {
      detail = "master disagrees with the closed form at seed " + std::to_string(seed);
      return false;
    }
    ++checked;
  }
  detail = std::to_string(checked) + " instances";
  return true;
}

// --- criterion 4: relaxation value, zero point, and cut value --------------

bool criterion4(std::string& detail) {
  int checked = 0;
  for (int i = 0; i < 8; ++i) {
    unsigned seed = 400 + static_cast<unsigned>(i);
    int dim = i % 2 == 0 ? 1 : 2;
    Instance inst = flp::generate_instance(dim, dim == 1 ? 5 : 4, 0.8, seed);

    Rat v0 = flp::relaxation_value(inst, flp::CutFamily::kNone);
    bool zero_ok = dim == 1 ? v0 == 0 : std::abs(flp::to_double(v0)) <= kFloatTol;
    if (!zero_ok) {
      detail = "cut-free value nonzero at seed " + std::to_string(seed);
      return false;
    }

    flp::ZeroPoint zp = flp::zero_point(inst);
    flp::RelaxationLp rel = flp::build_relaxation(inst, flp::CutFamily::kNone);
    bool point_ok;
    if (zp.exact) {
      point_ok = flp::check_point(rel.lp, zp.values, Rat(0)).feasible;
    } else {
      std::vector<double> fp(zp.values.size());
      for (size_t j = 0; j < fp.size(); ++j) fp[j] = flp::to_double(zp.values[j]);
      point_ok = flp::check_point(rel.lp, fp, kFloatTol).feasible;
    }
    if (!point_ok) {
      detail = "zero point rejected at seed " + std::to_string(seed);
      return false;
    }

    Rat vc = flp::relaxation_value(inst, flp::CutFamily::kObjectiveCuts);
    Rat closed = flp::omega2_closed_form(inst);
    bool cut_ok = dim == 1
                      ? vc == closed
                      : std::abs(flp::to_double(vc) - flp::to_double(closed)) <= kFloatTol;
    if (!cut_ok) {
      detail = "cut value misses the aggregate bound at seed " + std::to_string(seed);
      return false;
    }
    ++checked;
  }
  detail = std::to_string(checked) + " instances";
  return true;
}

// --- criterion 5: pruning is value-neutral and sometimes strictly smaller ---

bool criterion5(std::string& detail) {
  int strictly_smaller = 0;
  for (int i = 0; i < 20; ++i) {
    unsigned seed = 500 + static_cast<unsigned>(i);
    Instance inst = flp::generate_instance(1, 6, 0.3, seed);
    flp::BoundConfig keep;
    keep.prune = false;
    std::vector<flp::BoundResult> pruned = flp::hierarchy(inst, 3);
    std::vector<flp::BoundResult> full = flp::hierarchy(inst, 3, keep);
    if (pruned.size() != full.size()) {
      detail = "level counts differ at seed " + std::to_string(seed);
      return false;
    }
    for (size_t k = 0; k < pruned.size(); ++k) {
      if (!(pruned[k].omega == full[k].omega)) {
        detail = "pruning changed a bound at seed " + std::to_string(seed);
        return false;
      }
      if (pruned[k].solved_size < full[k].solved_size) ++strictly_smaller;
    }
  }
  detail = std::to_string(strictly_smaller) + " levels solved strictly fewer subsets";
  return strictly_smaller >= 1;
}

// --- criterion 6: lifted and product-matrix audits, plus tamper checks -----

bool criterion6(std::string& detail) {
  for (int n = 2; n <= 6; ++n) {
    Instance inst = flp::generate_instance(1, n, 1.0, 600 + static_cast<unsigned>(n));
    flp::AuditReport lifted = flp::audit_lifted_point(inst);
    if (!lifted.pass || lifted.objective != flp::omega2_closed_form(inst)) {
      detail = "lifted audit failed at n=" + std::to_string(n);
      return false;
    }
    if (!flp::audit_moment_matrix(inst).pass) {
      detail = "product-matrix audit failed at n=" + std::to_string(n);
      return false;
    }
  }

  Instance triple = triple_1d();
  flp::LiftedSystem sys = flp::build_lifted(triple);
  std::vector<Rat> pt = flp::lifted_point(triple, sys);
  pt[static_cast<size_t>(sys.yzz(1, 2, 2, 1))] = Rat(1, 4);
  if (flp::audit_lifted_point(triple, sys, pt).pass) {
    detail = "corrupted lifted point slipped through";
    return false;
  }

  flp::MomentMatrix warped = flp::build_moment_matrix(triple);
  size_t a = static_cast<size_t>(sys.moment_index(1, 2));
  size_t b = static_cast<size_t>(sys.moment_index(1, 3));
  warped.entries[a][b] = Rat(1, 2);
  warped.entries[b][a] = Rat(1, 2);
  if (flp::audit_moment_matrix(warped).pass) {
    detail = "corrupted product matrix slipped through";
    return false;
  }

  detail = "n=2..6 audits pass, both tampered audits fail";
  return true;
}

// --- criterion 7: width-coordinate audit matches the aggregate bound -------

bool criterion7(std::string& detail) {
  int checked = 0;
  for (int n = 2; n <= 4; ++n)
    for (unsigned s = 0; s < 2; ++s) {
      Instance inst = flp::generate_instance(2, n, 1.0, 700 + 10u * s + static_cast<unsigned>(n));
      flp::AuditReport report = flp::audit_sdp_point(inst);
      double gap =
          std::abs(flp::to_double(report.objective) - flp::to_double(flp::omega2_closed_form(inst)));
      if (!report.pass || gap > kFloatTol) {
        detail = "audit failed at n=" + std::to_string(n) + " seed offset " + std::to_string(s);
        return false;
      }
      ++checked;
    }
  detail = std::to_string(checked) + " instances";
  return true;
}

// --- criterion 8: subset bounds against the reference oracle ---------------

bool criterion8(std::string& detail) {
  int checked = 0;
  for (int i = 0; i < 10; ++i) {
    unsigned seed = 800 + static_cast<unsigned>(i);
    Instance inst = flp::generate_instance(1, 6, 0.7, seed);
    std::vector<int> ids = flp::active_components(inst);
    if (static_cast<int>(ids.size()) > 4) ids.resize(4);
    if (ids.size() < 2) continue;
    flp::SubsetBound sb = flp::gamma_1d(inst, ids);
    flp::test::OracleBound oracle = flp::test::gamma_exact_small(inst, ids);
    if (!(sb.gamma == oracle.lower)) {
      detail = "1D subset bound differs from the oracle at seed " + std::to_string(seed);
      return false;
    }
    ++checked;
  }
  for (int i = 0; i < 10; ++i) {
    unsigned seed = 850 + static_cast<unsigned>(i);
    Instance inst = flp::generate_instance(2, 4, 1.0, seed);
    std::vector<int> ids = {1, 2, 3, 4};
    flp::SubsetBound sb = flp::gamma_2d(inst, ids);
    flp::test::OracleBound oracle = flp::test::gamma_exact_small(inst, ids);
    double lo = flp::to_double(sb.gamma), hi = flp::to_double(sb.upper);
    if (lo > hi + kFloatTol || lo < flp::to_double(oracle.lower) - kFloatTol ||
        lo > flp::to_double(oracle.upper) + kFloatTol) {
      detail = "2D bracket broken at seed " + std::to_string(seed);
      return false;
    }
    ++checked;
  }
  detail = std::to_string(checked) + " subset comparisons";
  return true;
}

// --- criterion 9: closed form and master stay inside their time budgets ----

bool criterion9(std::string& detail) {
  Instance inst = flp::generate_instance(1, 33, 1.0, 900);
  double t0 = now_seconds();
  Rat closed = flp::omega2_closed_form(inst);
  double closed_ms = (now_seconds() - t0) * 1000.0;

  t0 = now_seconds();
  std::vector<flp::BoundResult> levels = flp::hierarchy(inst, 2);
  double master_s = now_seconds() - t0;

  double gap = std::abs(flp::to_double(levels.back().omega) - flp::to_double(closed));
  detail = "closed form " + fmt(closed_ms) + "ms, master " + fmt(master_s) + "s";
  return closed_ms < kOmega2Ms && master_s < kMasterSec && gap <= kFloatTol;
}

// --- criterion 10: reports are byte-identical across worker counts ---------

bool criterion10(std::string& detail) {
  std::filesystem::create_directories("acceptance_scratch");
  struct Suite {
    int dim, n;
    double density;
    unsigned seed;
  };
  const Suite suite[3] = {{1, 6, 0.7, 1001}, {1, 5, 1.0, 1002}, {2, 3, 1.0, 1003}};
  for (int t = 0; t < 3; ++t) {
    Instance inst = flp::generate_instance(suite[t].dim, suite[t].n, suite[t].density,
                                           suite[t].seed);
    std::string path = "acceptance_scratch/workers_" + std::to_string(t) + ".flp";
    std::ofstream(path) << flp::serialize_instance(inst);
    std::string base;
    for (int workers : {1, 2, 8}) {
      CliResult res = run_cli("bound -i " + path + " -k 3 --workers " +
                              std::to_string(workers) + " --machine");
      if (res.code != 0) {
        detail = "bound exited with " + std::to_string(res.code) + " on suite " +
                 std::to_string(t);
        return false;
      }
      if (workers == 1) {
        base = res.out;
      } else if (res.out != base) {
        detail = "workers=" + std::to_string(workers) + " changed the report on suite " +
                 std::to_string(t);
        return false;
      }
    }
  }
  detail = "3 instances, workers {1,2,8}";
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <path-to-flp-binary>\n");
    return 2;
  }
  g_flp = argv[1];

  struct Entry {
    const char* label;
    bool (*fn)(std::string&);
  };
  const Entry entries[10] = {
      {"1D hierarchy monotone, exact at the top level", criterion1},
      {"2D hierarchy monotone, below the packed witness", criterion2},
      {"pair-level master equals the closed form", criterion3},
      {"relaxation value, zero point, and cut value", criterion4},
      {"pruning value-neutral, strictly smaller somewhere", criterion5},
      {"lifted and product-matrix audits with tamper checks", criterion6},
      {"width-coordinate audit at the aggregate bound", criterion7},
      {"subset bounds agree with the reference oracle", criterion8},
      {"closed form under 10ms, level-2 master under 1s", criterion9},
      {"machine reports byte-identical across workers", criterion10},
  };

  int failures = 0;
  for (int i = 0; i < 10; ++i) {
    std::string detail;
    bool ok = false;
    try {
      ok = entries[i].fn(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!ok) ++failures;
    std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", i + 1, entries[i].label,
                detail.c_str());
    std::fflush(stdout);
  }
  if (failures) std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
