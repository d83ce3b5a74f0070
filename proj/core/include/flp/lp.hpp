#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "flp/errors.hpp"
#include "flp/layout.hpp"
#include "flp/rational.hpp"

namespace flp {

enum class Sense : std::uint8_t { kGe, kLe, kEq };

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

enum class ArithMode { kRational, kFloat };

struct LpRow {
  std::string name;
  std::vector<std::pair<int, Rat>> terms;  // (column, coefficient), columns unique
  Sense sense = Sense::kGe;
  Rat rhs;
};

// Minimization problem over named variables with optional bounds.
struct LinearProgram {
  std::vector<std::string> var_names;
  std::vector<Rat> objective;
  std::vector<Rat> lower, upper;
  std::vector<std::uint8_t> has_lower, has_upper;
  std::vector<LpRow> rows;

  int num_vars() const { return static_cast<int>(var_names.size()); }

  // Default bounds: [0, +inf). Returns the new column index.
  int add_var(const std::string& name, const Rat& obj = Rat(0));
  void set_bounds(int var, const Rat& lo, const Rat& hi);
  void set_lower(int var, const Rat& lo);
  void set_upper(int var, const Rat& hi);
  void make_free(int var);
  LpRow& add_row(const std::string& name, Sense sense, const Rat& rhs);
};

struct LpOptions {
  ArithMode mode = ArithMode::kFloat;
  double tol = 1e-9;           // float-mode feasibility/pivot tolerance
  long max_iterations = 500000;
  long stall_threshold = 0;    // 0 = auto; degenerate pivots before switching to the
                               // index-order anti-cycling rule
};

struct LpSolution {
  LpStatus status = LpStatus::kOptimal;
  Rat value;                // primal objective
  std::vector<Rat> primal;  // per variable
  // Per original row. Sign convention for the minimization dual: >= rows
  // carry nonnegative multipliers, <= rows nonpositive, = rows free.
  std::vector<Rat> dual;
  Rat dual_value;           // dual objective; equals value at optimality
  long iterations = 0;
};

// Dense two-phase primal simplex. Largest-reduced-cost pricing with ties by
// lowest column index; switches to the index-order rule after a run of
// degenerate pivots. Rational mode pivots exactly.
LpSolution solve_lp(const LinearProgram& lp, const LpOptions& opts = {});

// Evaluates all rows and bounds at the point; tol is an absolute slack.
// Exact when the point is rational and tol == 0.
FeasibilityVerdict check_point(const LinearProgram& lp, std::span<const Rat> point,
                               const Rat& tol);
FeasibilityVerdict check_point(const LinearProgram& lp, std::span<const double> point,
                               double tol);

// Text interchange form (objective / constraint / bounds sections). Values
// print as exact decimals when finite, otherwise as fractions p/q; the reader
// accepts both. read_lp_format(write_lp_format(lp)) reproduces the program.
void write_lp_format(const LinearProgram& lp, std::ostream& out);
LinearProgram read_lp_format(std::istream& in);

}  // namespace flp
