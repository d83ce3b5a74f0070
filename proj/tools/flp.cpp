#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "flp/bound.hpp"
#include "flp/layout.hpp"
#include "flp/report.hpp"
#include "flp/subproblem.hpp"
#include "flp/theory_audit.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAuditFail = 1;
constexpr int kExitParse = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitSizeCap = 4;
constexpr int kExitSolver = 5;

flp::Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw flp::ParseError(0, "cannot open " + path);
  return flp::parse_instance(in);
}

double env_or(const char* name, double fallback) {
  const char* raw = std::getenv(name);
  if (!raw || !*raw) return fallback;
  char* end = nullptr;
  double value = std::strtod(raw, &end);
  return end && *end == '\0' ? value : fallback;
}

std::optional<flp::ArithMode> parse_mode(const std::string& mode) {
  if (mode == "rational") return flp::ArithMode::kRational;
  if (mode == "float") return flp::ArithMode::kFloat;
  return {};  // "auto"
}

void emit_report(const flp::Report& rep, bool machine, const std::string& out_path) {
  std::ostringstream text;
  if (machine)
    rep.write_machine(text);
  else
    rep.write_human(text);
  if (out_path.empty()) {
    std::cout << text.str();
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << text.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

void add_instance_keys(flp::Report& rep, const flp::Instance& inst) {
  rep.add("instance.dim", static_cast<std::size_t>(inst.dim));
  rep.add("instance.n", static_cast<std::size_t>(inst.n));
  rep.add("instance.digest", flp::instance_digest(inst));
}

struct CommonOpts {
  std::string instance_path;
  std::string out_path;
  bool machine = false;
};

int run_bound(const CommonOpts& common, int k, unsigned workers, const std::string& mode,
              bool no_prune, double ub, bool has_ub, const flp::RefineConfig& refine) {
  flp::Instance inst = load_instance(common.instance_path);
  flp::BoundConfig cfg;
  cfg.workers = static_cast<int>(workers);
  cfg.prune = !no_prune;
  cfg.refine = refine;
  cfg.master_mode = parse_mode(mode);

  std::vector<flp::BoundResult> levels = flp::hierarchy(inst, k, cfg);

  flp::Report rep;
  add_instance_keys(rep, inst);
  for (const flp::BoundResult& result : levels) flp::append_bound(rep, result);
  if (has_ub) {
    const flp::Rat& best = levels.back().omega;
    double gap = ub == 0 ? 0 : 100.0 * (ub - flp::to_double(best)) / ub;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", gap);
    rep.add("bound.gap_percent", std::string(buf));
  }
  emit_report(rep, common.machine, common.out_path);
  return kExitOk;
}

int run_exact(const CommonOpts& common, const std::string& layout_path,
              const flp::RefineConfig& refine) {
  flp::Instance inst = load_instance(common.instance_path);
  flp::SubsetBound result = flp::exact_optimum(inst, refine);

  flp::Report rep;
  add_instance_keys(rep, inst);
  rep.add("exact.gamma", result.gamma);
  rep.add("exact.gamma_decimal", flp::format_decimal(result.gamma, 6));
  rep.add("exact.upper", result.upper);
  rep.add("exact.upper_decimal", flp::format_decimal(result.upper, 6));
  emit_report(rep, common.machine, common.out_path);
  if (!layout_path.empty())
    write_text_file(layout_path, flp::serialize_layout(inst, result.witness));
  return kExitOk;
}

int run_gen(int dim, int n, double density, std::uint64_t seed, const std::string& out_path) {
  flp::Instance inst = flp::generate_instance(dim, n, density, seed);
  write_text_file(out_path, flp::serialize_instance(inst));
  return kExitOk;
}

int run_audit(const CommonOpts& common, const std::string& which) {
  flp::Instance inst = load_instance(common.instance_path);

  std::vector<std::string> selected;
  if (which == "all") {
    selected = {"relaxation"};
    if (inst.dim == 1) {
      selected.push_back("lifted-lp");
      selected.push_back("moment-matrix");
    } else {
      selected.push_back("sdp");
    }
  } else {
    selected = {which};
  }

  flp::Report rep;
  add_instance_keys(rep, inst);
  bool all_pass = true;
  for (const std::string& name : selected) {
    flp::AuditReport audit;
    if (name == "relaxation")
      audit = flp::audit_relaxation(inst);
    else if (name == "lifted-lp")
      audit = flp::audit_lifted_point(inst);
    else if (name == "moment-matrix")
      audit = flp::audit_moment_matrix(inst);
    else
      audit = flp::audit_sdp_point(inst);
    flp::append_audit(rep, audit);
    all_pass = all_pass && audit.pass;
  }
  rep.add("audit.all_pass", std::string(all_pass ? "1" : "0"));
  emit_report(rep, common.machine, common.out_path);
  return all_pass ? kExitOk : kExitAuditFail;
}

int run_export(const CommonOpts& common, const std::string& what, int k,
               const flp::RefineConfig& refine) {
  flp::Instance inst = load_instance(common.instance_path);
  std::ostringstream text;
  if (what == "lifted") {
    flp::LiftedSystem sys = flp::build_lifted(inst);
    flp::export_lifted(sys, text);
  } else {
    flp::SubsetFamily fam = flp::build_family(inst, k);
    std::vector<flp::SubsetBound> bounds;
    bounds.reserve(fam.subsets.size());
    for (const std::vector<int>& subset : fam.subsets)
      bounds.push_back(inst.dim == 1 ? flp::gamma_1d(inst, subset)
                                     : flp::gamma_2d(inst, subset, refine));
    flp::LinearProgram lp = flp::build_master_lp(inst, bounds);
    flp::write_lp_format(lp, text);
  }
  write_text_file(common.out_path, text.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dual bounds and formulation audits for floor layout instances"};
  app.require_subcommand(1);

  unsigned hardware = std::thread::hardware_concurrency();
  if (hardware == 0) hardware = 1;

  CommonOpts common;
  int k = 3;
  unsigned workers = hardware;
  std::string mode = "auto";
  bool no_prune = false;
  double ub = 0;
  std::string layout_path;
  std::string which = "all";
  std::string what = "lifted";
  int gen_dim = 1, gen_n = 8;
  double gen_density = 1.0;
  std::uint64_t gen_seed = 1;

  flp::RefineConfig refine;
  refine.eps_area = env_or("FLP_EPS_AREA", refine.eps_area);
  refine.lp_tol = env_or("FLP_LP_TOL", refine.lp_tol);

  auto add_common = [&](CLI::App* cmd, bool with_out) {
    cmd->add_option("-i,--instance", common.instance_path, "Instance file")->required();
    cmd->add_flag("--machine", common.machine, "Line-oriented key<TAB>value report");
    if (with_out) cmd->add_option("-o,--out", common.out_path, "Write output to a file");
  };

  CLI::App* bound = app.add_subcommand("bound", "Aggregated lower bounds up to level k");
  add_common(bound, true);
  bound->add_option("-k,--k", k, "Highest subset size in the hierarchy");
  bound->add_option("-w,--workers", workers, "Subproblem worker threads");
  bound->add_option("--mode", mode, "Master arithmetic: auto|rational|float")
      ->check(CLI::IsMember({"auto", "rational", "float"}));
  bound->add_flag("--no-prune", no_prune, "Keep dominated subsets in the master");
  CLI::Option* ub_opt =
      bound->add_option("--ub", ub, "Known upper bound; reports the relative gap");
  bound->add_option("--rounds", refine.max_rounds, "Extra tangent refinement rounds");
  bound->add_option("--eps-area", refine.eps_area, "Relative area shortfall tolerance");
  bound->add_option("--lp-tol", refine.lp_tol, "Float LP feasibility tolerance");

  CLI::App* exact = app.add_subcommand("exact", "Reference optimum for small instances");
  add_common(exact, true);
  exact->add_option("--emit-layout", layout_path, "Write the witness placement to a file");
  exact->add_option("--rounds", refine.max_rounds, "Extra tangent refinement rounds");

  CLI::App* gen = app.add_subcommand("gen", "Write a pseudorandom instance");
  gen->add_option("--dim", gen_dim, "1 or 2")->check(CLI::IsMember({1, 2}));
  gen->add_option("-n,--n", gen_n, "Component count");
  gen->add_option("--density", gen_density, "Fraction of pairs with positive weight");
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("-o,--out", common.out_path, "Output file (default stdout)");

  CLI::App* audit = app.add_subcommand("audit", "Check the formulation comparisons");
  add_common(audit, true);
  audit->add_option("--which", which, "relaxation|lifted-lp|moment-matrix|sdp|all")
      ->check(CLI::IsMember({"relaxation", "lifted-lp", "moment-matrix", "sdp", "all"}));

  CLI::App* exp = app.add_subcommand("export", "Write a system in LP interchange text");
  add_common(exp, true);
  exp->add_option("--what", what, "lifted|master")->check(CLI::IsMember({"lifted", "master"}));
  exp->add_option("-k,--k", k, "Subset size for the master system");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (bound->parsed())
      return run_bound(common, k, workers == 0 ? 1 : workers, mode, no_prune, ub,
                       ub_opt->count() > 0, refine);
    if (exact->parsed()) return run_exact(common, layout_path, refine);
    if (gen->parsed()) return run_gen(gen_dim, gen_n, gen_density, gen_seed, common.out_path);
    if (audit->parsed()) return run_audit(common, which);
    return run_export(common, what, k, refine);
  } catch (const flp::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const flp::ValidationError& e) {
    std::cerr << "invalid instance: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const flp::SizeCapError& e) {
    std::cerr << "size cap: " << e.what() << "\n";
    return kExitSizeCap;
  } catch (const flp::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid request: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  }
}
