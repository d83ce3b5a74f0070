#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "flp/errors.hpp"
#include "flp/rational.hpp"

namespace flp {

// Axis-aligned rectangular component described by its half-widths.
// dim=1 instances use axis 0 only and have lb == ub there.
struct ComponentSpec {
  int id = 0;      // 1-based
  Rat lb[2];       // half-width lower bounds per axis, strictly positive
  Rat ub[2];       // half-width upper bounds per axis, lb <= ub
  Rat area;        // dim=2: lower bound on 4*lx*ly (full area); 0 for dim=1
};

struct Instance {
  int dim = 1;
  int n = 0;
  Rat floor_len[2];                 // floor side lengths
  std::vector<ComponentSpec> comps; // comps[i-1].id == i
  std::vector<Rat> w;               // dense n*n pair weights, symmetric, zero diagonal

  const Rat& weight(int i, int j) const { return w[(i - 1) * n + (j - 1)]; }
  void set_weight(int i, int j, const Rat& v) {
    w[(i - 1) * n + (j - 1)] = v;
    w[(j - 1) * n + (i - 1)] = v;
  }
  const ComponentSpec& comp(int id) const { return comps[id - 1]; }
};

// Count and row-major rank of unordered pairs {i<j} over 1..n.
inline int pair_count(int n) { return n * (n - 1) / 2; }
inline int pair_index(int n, int i, int j) {
  // 1-based ids, i < j
  return (i - 1) * n - i * (i + 1) / 2 + j - 1;
}

// Line-oriented text format; see README for the grammar.
Instance parse_instance(std::istream& in);
Instance parse_instance_text(const std::string& text);
std::string serialize_instance(const Instance& inst);

// Checks every model invariant; throws ValidationError naming the first failure.
void validate_instance(const Instance& inst);

// Deterministic pseudorandom instance. Clamps n to [2,64] and density to [0,1].
// Exactly ceil(density * n*(n-1)/2) pairs get a positive weight. The floor is
// sized so every arrangement of the components fits.
Instance generate_instance(int dim, int n, double density, std::uint64_t seed);

// Ids participating in at least one positive-weight pair, ascending.
std::vector<int> active_components(const Instance& inst);

// Stable content fingerprint of the canonical serialization.
std::string instance_digest(const Instance& inst);

}  // namespace flp
