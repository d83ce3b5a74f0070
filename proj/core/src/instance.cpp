#include "flp/instance.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

namespace flp {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream ss(line);
  std::string t;
  while (ss >> t) {
    if (t[0] == '#') break;  // trailing comment
    toks.push_back(t);
  }
  return toks;
}

Rat parse_value(const std::string& tok, int line) {
  try {
    return rat_from_string(tok);
  } catch (const NumberFormatError& e) {
    throw ParseError(line, e.what());
  }
}

int parse_int(const std::string& tok, int line) {
  for (char c : tok)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw ParseError(line, "expected integer, got '" + tok + "'");
  if (tok.size() > 9) throw ParseError(line, "integer out of range: " + tok);
  return std::stoi(tok);
}

const char* axis_name(int s) { return s == 0 ? "x" : "y"; }

}  // namespace

Instance parse_instance(std::istream& in) {
  Instance inst;
  std::string line;
  int lineno = 0;
  // Sections appear in fixed order: FLP, N, L, COMP lines, P lines.
  enum Stage { kFlp, kN, kL, kComp, kP } stage = kFlp;
  int comps_seen = 0;
  std::vector<bool> id_seen;
  std::vector<bool> pair_seen;

  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    const std::string& kw = toks[0];

    if (stage == kFlp) {
      if (kw != "FLP") throw ParseError(lineno, "expected FLP header, got '" + kw + "'");
      if (toks.size() != 2) throw ParseError(lineno, "FLP takes one argument");
      inst.dim = parse_int(toks[1], lineno);
      if (inst.dim != 1 && inst.dim != 2) throw ParseError(lineno, "dimension must be 1 or 2");
      stage = kN;
      continue;
    }
    if (stage == kN) {
      if (kw != "N") throw ParseError(lineno, "expected N line, got '" + kw + "'");
      if (toks.size() != 2) throw ParseError(lineno, "N takes one argument");
      inst.n = parse_int(toks[1], lineno);
      if (inst.n < 1) throw ParseError(lineno, "N must be at least 1");
      inst.comps.resize(inst.n);
      inst.w.assign(static_cast<size_t>(inst.n) * inst.n, Rat(0));
      id_seen.assign(inst.n + 1, false);
      pair_seen.assign(pair_count(inst.n), false);
      stage = kL;
      continue;
    }
    if (stage == kL) {
      if (kw != "L") throw ParseError(lineno, "expected L line, got '" + kw + "'");
      if (static_cast<int>(toks.size()) != 1 + inst.dim)
        throw ParseError(lineno, "L takes one value per axis");
      for (int s = 0; s < inst.dim; ++s) inst.floor_len[s] = parse_value(toks[1 + s], lineno);
      stage = kComp;
      continue;
    }
    if (stage == kComp && kw == "COMP") {
      size_t want = inst.dim == 1 ? 3 : 7;
      if (toks.size() != want)
        throw ParseError(lineno, inst.dim == 1 ? "COMP takes: id halfwidth"
                                               : "COMP takes: id lb_x ub_x lb_y ub_y area");
      int id = parse_int(toks[1], lineno);
      if (id < 1 || id > inst.n) throw ParseError(lineno, "component id out of range");
      if (id_seen[id]) throw ParseError(lineno, "duplicate component id " + std::to_string(id));
      id_seen[id] = true;
      ComponentSpec& c = inst.comps[id - 1];
      c.id = id;
      if (inst.dim == 1) {
        c.lb[0] = c.ub[0] = parse_value(toks[2], lineno);
      } else {
        c.lb[0] = parse_value(toks[2], lineno);
        c.ub[0] = parse_value(toks[3], lineno);
        c.lb[1] = parse_value(toks[4], lineno);
        c.ub[1] = parse_value(toks[5], lineno);
        c.area = parse_value(toks[6], lineno);
      }
      if (++comps_seen == inst.n) stage = kP;
      continue;
    }
    if (stage == kComp) throw ParseError(lineno, "expected COMP line, got '" + kw + "'");
    if (kw != "P") throw ParseError(lineno, "expected P line, got '" + kw + "'");
    if (toks.size() != 4) throw ParseError(lineno, "P takes: i j weight");
    int i = parse_int(toks[1], lineno), j = parse_int(toks[2], lineno);
    if (i < 1 || i > inst.n || j < 1 || j > inst.n)
      throw ParseError(lineno, "pair index out of range");
    if (i >= j) throw ParseError(lineno, "pair must satisfy i < j");
    if (pair_seen[pair_index(inst.n, i, j)])
      throw ParseError(lineno, "duplicate pair " + std::to_string(i) + "," + std::to_string(j));
    pair_seen[pair_index(inst.n, i, j)] = true;
    inst.set_weight(i, j, parse_value(toks[3], lineno));
  }

  if (stage != kP) throw ParseError(lineno, "incomplete instance (missing header or COMP lines)");
  validate_instance(inst);
  return inst;
}

Instance parse_instance_text(const std::string& text) {
  std::istringstream ss(text);
  return parse_instance(ss);
}

std::string serialize_instance(const Instance& inst) {
  std::ostringstream out;
  out << "FLP " << inst.dim << "\n";
  out << "N " << inst.n << "\n";
  out << "L";
  for (int s = 0; s < inst.dim; ++s) out << " " << rat_to_string(inst.floor_len[s]);
  out << "\n";
  for (const auto& c : inst.comps) {
    out << "COMP " << c.id;
    if (inst.dim == 1) {
      out << " " << rat_to_string(c.lb[0]);
    } else {
      out << " " << rat_to_string(c.lb[0]) << " " << rat_to_string(c.ub[0]) << " "
          << rat_to_string(c.lb[1]) << " " << rat_to_string(c.ub[1]) << " "
          << rat_to_string(c.area);
    }
    out << "\n";
  }
  for (int i = 1; i <= inst.n; ++i)
    for (int j = i + 1; j <= inst.n; ++j)
      if (inst.weight(i, j) != 0)
        out << "P " << i << " " << j << " " << rat_to_string(inst.weight(i, j)) << "\n";
  return out.str();
}

void validate_instance(const Instance& inst) {
  if (inst.dim != 1 && inst.dim != 2)
    throw ValidationError("dimension", "dimension must be 1 or 2");
  if (inst.n < 1 || static_cast<int>(inst.comps.size()) != inst.n)
    throw ValidationError("component-count", "component list does not match N");

  for (const auto& c : inst.comps) {
    for (int s = 0; s < inst.dim; ++s) {
      if (c.lb[s] <= 0)
        throw ValidationError("halfwidth-positive",
                              "component " + std::to_string(c.id) + ": half-width lower bound on axis " +
                                  axis_name(s) + " must be positive");
      if (c.lb[s] > c.ub[s])
        throw ValidationError("halfwidth-order",
                              "component " + std::to_string(c.id) + ": lb > ub on axis " + axis_name(s));
    }
    if (inst.dim == 2) {
      if (c.area < 0)
        throw ValidationError("area-nonnegative",
                              "component " + std::to_string(c.id) + ": area must be nonnegative");
      // Keeps the narrowest shape on each axis feasible: with 4*lb_s*ub_s' >= area
      // a component can sit at its minimum half-width on either axis.
      for (int s = 0; s < 2; ++s) {
        if (c.area > 4 * c.lb[s] * c.ub[1 - s])
          throw ValidationError(
              "area-shape",
              "component " + std::to_string(c.id) + ": area exceeds 4*lb_" + axis_name(s) +
                  "*ub_" + axis_name(1 - s));
      }
    }
  }

  // Floors must admit every arrangement: the widest chain of components has
  // total extent 2 * sum(ub) on each axis.
  for (int s = 0; s < inst.dim; ++s) {
    Rat total = 0;
    for (const auto& c : inst.comps) total += c.ub[s];
    if (inst.floor_len[s] < 2 * total)
      throw ValidationError("floor-too-small", std::string("floor too small on axis ") +
                                                   axis_name(s) + ": need at least " +
                                                   rat_to_string(2 * total));
  }

  for (int i = 1; i <= inst.n; ++i) {
    if (inst.weight(i, i) != 0)
      throw ValidationError("weight-diagonal", "self weight on component " + std::to_string(i));
    for (int j = i + 1; j <= inst.n; ++j) {
      if (inst.weight(i, j) < 0)
        throw ValidationError("weight-nonnegative", "negative weight on pair " + std::to_string(i) +
                                                        "," + std::to_string(j));
      if (inst.weight(i, j) != inst.weight(j, i))
        throw ValidationError("weight-symmetric", "asymmetric weight storage");
    }
  }
}

Instance generate_instance(int dim, int n, double density, std::uint64_t seed) {
  n = std::clamp(n, 2, 64);
  density = std::clamp(density, 0.0, 1.0);

  std::mt19937_64 rng(seed);
  auto uniform = [&rng](unsigned long lo, unsigned long hi) {
    return lo + rng() % (hi - lo + 1);
  };

  Instance inst;
  inst.dim = dim == 2 ? 2 : 1;
  inst.n = n;
  inst.comps.resize(n);
  inst.w.assign(static_cast<size_t>(n) * n, Rat(0));

  for (int i = 0; i < n; ++i) {
    ComponentSpec& c = inst.comps[i];
    c.id = i + 1;
    Rat lb = Rat(uniform(5, 20), 10);  // 0.5 .. 2.0 in steps of 0.1
    lb.canonicalize();
    if (inst.dim == 1) {
      c.lb[0] = c.ub[0] = lb;
    } else {
      // Equal lower bounds on both axes; stretch factors differ per axis.
      Rat stretch[2];
      for (int s = 0; s < 2; ++s) {
        c.lb[s] = lb;
        stretch[s] = Rat(10 + uniform(0, 10), 10);  // ub/lb in [1, 2]
        stretch[s].canonicalize();
        c.ub[s] = lb * stretch[s];
        c.ub[s].canonicalize();
      }
      // Area within [4*lb^2, 4*lb^2*min(stretch)]: the narrowest shape on
      // either axis stays area-feasible.
      Rat rmin = std::min(stretch[0], stretch[1]);
      Rat u = Rat(uniform(0, 10), 10);
      u.canonicalize();
      Rat f = 1 + u * (rmin - 1);
      c.area = 4 * lb * lb * f;
      c.area.canonicalize();
    }
  }

  // Spacious floor: 4 * sum of halfwidth upper bounds per axis.  Fitting only
  // needs twice the sum; the extra factor keeps the product-lifting audits in
  // their proven regime (sum of halfwidths at most a quarter of the floor).
  for (int s = 0; s < inst.dim; ++s) {
    Rat total = 0;
    for (const auto& c : inst.comps) total += c.ub[s];
    inst.floor_len[s] = 4 * total;
  }

  // Exactly ceil(density * #pairs) weighted pairs.
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) pairs.emplace_back(i, j);
  for (size_t k = pairs.size(); k > 1; --k)
    std::swap(pairs[k - 1], pairs[uniform(0, k - 1)]);
  auto want = static_cast<size_t>(std::ceil(density * pairs.size()));
  for (size_t k = 0; k < want && k < pairs.size(); ++k) {
    Rat w = Rat(uniform(1, 40), 10);  // 0.1 .. 4.0
    w.canonicalize();
    inst.set_weight(pairs[k].first, pairs[k].second, w);
  }

  validate_instance(inst);
  return inst;
}

std::vector<int> active_components(const Instance& inst) {
  std::vector<int> ids;
  for (int i = 1; i <= inst.n; ++i) {
    bool active = false;
    for (int j = 1; j <= inst.n && !active; ++j)
      if (j != i && inst.weight(std::min(i, j), std::max(i, j)) > 0) active = true;
    if (active) ids.push_back(i);
  }
  return ids;
}

std::string instance_digest(const Instance& inst) {
  std::string text = serialize_instance(inst);
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace flp
