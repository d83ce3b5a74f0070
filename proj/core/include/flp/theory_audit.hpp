#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "flp/instance.hpp"
#include "flp/lp.hpp"

namespace flp {

// Optional strengthening rows for the continuous relaxation: per-pair lower
// bounds on the distance variables implied by the minimum component sizes.
enum class CutFamily { kNone, kObjectiveCuts };

// Continuous relaxation of the layout program: integrality dropped, the area
// constraint replaced by its tangent outer approximation in dim 2. Column
// maps use 1-based component ids shifted down by one.
struct RelaxationLp {
  LinearProgram lp;
  std::vector<int> c_var[2];  // centers per axis; axis 1 unused in dim 1
  std::vector<int> l_var[2];  // halfwidths, dim 2 only
  std::vector<int> d_var[2];  // per unordered pair rank; axis 1 unused in dim 1
  std::vector<int> z_var[2];  // per ordered pair (i-1)*n+(j-1); -1 on the diagonal
};

RelaxationLp build_relaxation(const Instance& inst, CutFamily cuts);

// Optimal value of the relaxation: zero without cuts, the first-level
// aggregate bound with them. Mode defaults to rational in dim 1 and float in
// dim 2 (tangent abscissas make rational pivots expensive).
Rat relaxation_value(const Instance& inst, CutFamily cuts, std::optional<ArithMode> mode = {});

// The centered zero-objective point of the cut-free relaxation. In dim 2 the
// halfwidths come from the first rule in a fixed candidate ladder that checks
// out against the full row set; `exact` drops when a square root was needed.
struct ZeroPoint {
  std::vector<Rat> values;     // indexed like the RelaxationLp columns
  bool exact = true;
  std::string halfwidth_rule;  // "fixed" (dim 1), else the candidate rule name
};

ZeroPoint zero_point(const Instance& inst);

// ---------------------------------------------------------------------------
// Audit reports

struct FamilyVerdict {
  std::string family;
  std::size_t rows = 0;
  bool satisfied = true;
  Rat worst;              // largest violation, 0 when satisfied
  std::string worst_row;  // empty when satisfied
  std::string mode;       // "rational" | "float"
};

struct AuditReport {
  std::string name;
  std::vector<FamilyVerdict> families;
  Rat objective;  // objective at the audited point
  Rat expected;   // first-level aggregate bound
  bool objective_match = false;
  bool pass = false;  // every family satisfied and the objective matches
};

// ---------------------------------------------------------------------------
// Lifted one-axis system

// The one-axis program lifted by multiplying every base constraint with each
// relation variable and its complement. Product columns y(u, z_rs) exist for
// u in {c_i, d_ij, z_ij}; y(z_rs, z_rs) is identified with z_rs itself.
struct LiftedSystem {
  LinearProgram lp;
  int n = 0;
  std::size_t lifted_rows = 0;  // rows produced by the multiplication
  std::size_t cut_rows = 0;     // per-pair distance cuts kept alongside

  // Column lookups; (i, j) and (r, s) range over ordered pairs of distinct
  // 1-based ids.
  int c(int i) const;
  int d(int i, int j) const;
  int z(int r, int s) const;
  int yc(int i, int r, int s) const;
  int yd(int i, int j, int r, int s) const;
  int yzz(int i, int j, int r, int s) const;  // falls back to z on equal pairs

  // Index set for the relation-product matrix: slot 0 is the constant, the
  // rest enumerate ordered pairs.
  int moment_dim() const;
  int moment_index(int r, int s) const;
  std::pair<int, int> moment_pair(int idx) const;

  std::vector<int> c_cols, d_cols, z_cols, yc_cols, yd_cols, yzz_cols;
};

LiftedSystem build_lifted(const Instance& inst);  // dim 1 only

// The closed-form feasible point: centers at L/2, distances at the halfwidth
// sums, relations at 1/2, products per the published case split.
std::vector<Rat> lifted_point(const Instance& inst, const LiftedSystem& sys);

AuditReport audit_lifted_point(const Instance& inst);
AuditReport audit_lifted_point(const Instance& inst, const LiftedSystem& sys,
                               std::span<const Rat> point);

// Relation-product matrix assembled at the lifted point.
struct MomentMatrix {
  int n = 0;
  std::vector<std::vector<Rat>> entries;  // square, side = n(n-1)+1
};

MomentMatrix build_moment_matrix(const Instance& inst);

// Congruence diagonalization by unit elementary operations: asserts symmetry,
// runs the four mirrored row/column passes, asserts the result is diagonal
// with entries in {1, 1/4, 0}. A nonnegative diagonal under a unit-diagonal
// congruence certifies the matrix is positive semidefinite.
AuditReport audit_moment_matrix(const MomentMatrix& m);
AuditReport audit_moment_matrix(const Instance& inst);

// Lifted rows in LP interchange text plus the product-matrix block as a
// comment sidecar (index map and lower triangle) for external SDP solvers.
void export_lifted(const LiftedSystem& sys, std::ostream& out);

// ---------------------------------------------------------------------------
// Width-coordinate SDP relaxation

// Alternative two-axis relaxation stated over full widths on a floor centered
// at the origin. Direction variables sigma and order variables alpha live in
// [-1, 1] with linearized pairwise products; each component carries a 2x2
// area block and per-axis floor blocks; quartic complementarity rows are kept
// in polynomial form and evaluated directly at audited points.
struct SdpSystem {
  LinearProgram lp;  // all linear row families
  int n = 0;
  Rat floor_len[2];                 // width-space floor lengths
  std::vector<Rat> area;            // per component (id-1)
  std::vector<Rat> wlb[2], wub[2];  // width bounds per axis

  std::vector<int> c_var[2], w_var[2];              // per component
  std::vector<int> d_var[2], s_var[2];              // per unordered pair rank
  std::vector<int> sigma_var, alpha_var, prod_var;  // per unordered pair rank
  std::size_t quartic_rows = 0;  // complementarity rows (triples of ids)
};

SdpSystem build_sdp_system(const Instance& inst);  // dim 2 only

// Direction-aware feasible point: everything centered at the origin, each
// pair separated along its cheaper axis (sigma = +1 for x, -1 for y, ties to
// x), orders neutral (alpha = 0), widths at the lower bound on the separating
// axis with the area completed on the other. Fully rational.
std::vector<Rat> sdp_point(const Instance& inst, const SdpSystem& sys);

AuditReport audit_sdp_point(const Instance& inst);

// Relaxation-consistency audit used by the command line: the cut-free value
// is zero, the zero point checks out, and the cut value matches the
// first-level aggregate bound.
AuditReport audit_relaxation(const Instance& inst);

}  // namespace flp
