#include "flp/lp.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <ostream>
#include <sstream>

namespace flp {

int LinearProgram::add_var(const std::string& name, const Rat& obj) {
  var_names.push_back(name);
  objective.push_back(obj);
  lower.push_back(Rat(0));
  upper.push_back(Rat(0));
  has_lower.push_back(1);
  has_upper.push_back(0);
  return num_vars() - 1;
}

void LinearProgram::set_bounds(int var, const Rat& lo, const Rat& hi) {
  lower[var] = lo;
  upper[var] = hi;
  has_lower[var] = 1;
  has_upper[var] = 1;
}

void LinearProgram::set_lower(int var, const Rat& lo) {
  lower[var] = lo;
  has_lower[var] = 1;
}

void LinearProgram::set_upper(int var, const Rat& hi) {
  upper[var] = hi;
  has_upper[var] = 1;
}

void LinearProgram::make_free(int var) {
  has_lower[var] = 0;
  has_upper[var] = 0;
}

LpRow& LinearProgram::add_row(const std::string& name, Sense sense, const Rat& rhs) {
  rows.push_back(LpRow{name.empty() ? "r" + std::to_string(rows.size()) : name, {}, sense, rhs});
  return rows.back();
}

namespace {

// Arithmetic glue so one simplex serves both modes. Rational mode treats the
// tolerance as zero.
template <typename T>
struct Num;

template <>
struct Num<double> {
  static double from_rat(const Rat& r) { return to_double(r); }
  static Rat to_rat(double v) { return rat_from_double(v); }
  static bool is_neg(double v, double tol) { return v < -tol; }
  static bool is_pos(double v, double tol) { return v > tol; }
  static bool is_zero(double v, double tol) { return std::abs(v) <= tol; }
};

template <>
struct Num<Rat> {
  static const Rat& from_rat(const Rat& r) { return r; }
  static const Rat& to_rat(const Rat& v) { return v; }
  static bool is_neg(const Rat& v, double) { return v < 0; }
  static bool is_pos(const Rat& v, double) { return v > 0; }
  static bool is_zero(const Rat& v, double) { return v == 0; }
};

// How an original variable maps into the nonnegative standard form.
struct VarMap {
  enum Kind { kFixed, kShift, kFlip, kSplit } kind = kShift;
  int col = -1;       // first standard column
  Rat offset;         // kShift: x = offset + x';  kFlip: x = offset - x'
  int bound_row = -1; // standard row index of x' <= u - l, if any
};

template <typename T>
class Simplex {
 public:
  Simplex(const LinearProgram& lp, const LpOptions& opts) : lp_(lp), opts_(opts) {}

  LpSolution run() {
    build();
    if (infeasible_early_) return finish(LpStatus::kInfeasible);
    if (m_ == 0 && ncols_ == 0) return extract();  // everything fixed
    if (narts_ > 0) {
      LpStatus st = phase(true);
      if (st != LpStatus::kOptimal) return finish(st);
      if (!Num<T>::is_zero(current_objective(), phase1_tol())) return finish(LpStatus::kInfeasible);
      purge_artificials();
      load_phase2_costs();
    } else {
      load_phase2_costs();
    }
    LpStatus st = phase(false);
    if (st != LpStatus::kOptimal) return finish(st);
    return extract();
  }

 private:
  const LinearProgram& lp_;
  const LpOptions& opts_;

  int m_ = 0;       // standard rows
  int nstd_ = 0;    // structural standard columns
  int ncols_ = 0;   // structural + slack + artificial
  int narts_ = 0;
  std::vector<T> a_;          // (m_+1) x (ncols_+1); row m_ = cost row, col ncols_ = rhs
  std::vector<int> basis_;
  std::vector<T> b_orig_;     // standard rhs before pivoting (for the dual objective)
  std::vector<T> cost_;       // phase-2 costs per standard column
  std::vector<int> art_col_of_row_;   // unit column of each row (slack or artificial)
  std::vector<int> row_sign_;         // -1 when the original row was negated
  std::vector<int> row_of_orig_;      // original row -> standard row
  std::vector<VarMap> vmap_;
  Rat const_term_;            // objective constant from fixed/shifted variables
  bool infeasible_early_ = false;
  long iterations_ = 0;
  bool bland_ = false;
  long stall_ = 0;

  T& at(int r, int c) { return a_[static_cast<size_t>(r) * (ncols_ + 1) + c]; }
  T& rhs(int r) { return at(r, ncols_); }
  T current_objective() { return T(0) - rhs(m_); }  // cost row keeps -z in the rhs slot

  double phase1_tol() const { return opts_.mode == ArithMode::kFloat ? opts_.tol : 0.0; }

  void build() {
    int n = lp_.num_vars();
    vmap_.resize(n);
    const_term_ = 0;

    // Fixed variables drop out; free variables split; a finite lower bound
    // shifts, an upper-only bound flips. Residual upper bounds become rows.
    struct PendingBound { int col; Rat width; };
    std::vector<PendingBound> bound_rows;
    nstd_ = 0;
    for (int j = 0; j < n; ++j) {
      VarMap& vm = vmap_[j];
      bool lo = lp_.has_lower[j], hi = lp_.has_upper[j];
      if (lo && hi && lp_.lower[j] == lp_.upper[j]) {
        vm.kind = VarMap::kFixed;
        vm.offset = lp_.lower[j];
        const_term_ += lp_.objective[j] * vm.offset;
        continue;
      }
      if (lo && hi && lp_.lower[j] > lp_.upper[j]) {
        infeasible_early_ = true;
        return;
      }
      if (lo) {
        vm.kind = VarMap::kShift;
        vm.offset = lp_.lower[j];
        vm.col = nstd_++;
        const_term_ += lp_.objective[j] * vm.offset;
        if (hi) bound_rows.push_back({vm.col, lp_.upper[j] - lp_.lower[j]});
      } else if (hi) {
        vm.kind = VarMap::kFlip;
        vm.offset = lp_.upper[j];
        vm.col = nstd_++;
        const_term_ += lp_.objective[j] * vm.offset;
      } else {
        vm.kind = VarMap::kSplit;
        vm.col = nstd_;
        nstd_ += 2;
      }
    }

    // Assemble rows in rational arithmetic, then convert once.
    struct StdRow { std::vector<Rat> coef; Rat rhs; Sense sense; int orig; };
    std::vector<StdRow> srows;
    row_of_orig_.assign(lp_.rows.size(), -1);
    for (size_t r = 0; r < lp_.rows.size(); ++r) {
      const LpRow& row = lp_.rows[r];
      StdRow s{std::vector<Rat>(nstd_, Rat(0)), row.rhs, row.sense, static_cast<int>(r)};
      for (const auto& [j, coef] : row.terms) {
        const VarMap& vm = vmap_[j];
        switch (vm.kind) {
          case VarMap::kFixed: s.rhs -= coef * vm.offset; break;
          case VarMap::kShift:
            s.coef[vm.col] += coef;
            s.rhs -= coef * vm.offset;
            break;
          case VarMap::kFlip:
            s.coef[vm.col] -= coef;
            s.rhs -= coef * vm.offset;
            break;
          case VarMap::kSplit:
            s.coef[vm.col] += coef;
            s.coef[vm.col + 1] -= coef;
            break;
        }
      }
      bool empty = true;
      for (const Rat& c : s.coef)
        if (c != 0) { empty = false; break; }
      if (empty) {
        bool ok = (s.sense == Sense::kGe && s.rhs <= 0) || (s.sense == Sense::kLe && s.rhs >= 0) ||
                  (s.sense == Sense::kEq && s.rhs == 0);
        if (!ok) { infeasible_early_ = true; return; }
        continue;  // redundant row; no dual weight
      }
      srows.push_back(std::move(s));
    }
    for (const auto& pb : bound_rows) {
      StdRow s{std::vector<Rat>(nstd_, Rat(0)), pb.width, Sense::kLe, -1};
      s.coef[pb.col] = 1;
      srows.push_back(std::move(s));
    }

    m_ = static_cast<int>(srows.size());
    row_sign_.assign(m_, 1);
    for (int i = 0; i < m_; ++i) {
      if (srows[i].rhs < 0) {
        for (Rat& c : srows[i].coef) c = -c;
        srows[i].rhs = -srows[i].rhs;
        srows[i].sense = srows[i].sense == Sense::kGe
                             ? Sense::kLe
                             : (srows[i].sense == Sense::kLe ? Sense::kGe : Sense::kEq);
        row_sign_[i] = -1;
      }
      if (srows[i].orig >= 0) row_of_orig_[srows[i].orig] = i;
    }

    // Column layout: structural | slacks | artificials. <= rows seed the basis
    // with their slack; >= and = rows get an artificial.
    int nslack = 0, nart = 0;
    for (const auto& s : srows) {
      if (s.sense != Sense::kEq) ++nslack;
      if (s.sense != Sense::kLe) ++nart;
    }
    narts_ = nart;
    ncols_ = nstd_ + nslack + nart;
    a_.assign(static_cast<size_t>(m_ + 1) * (ncols_ + 1), T(0));
    basis_.assign(m_, -1);
    b_orig_.resize(m_);
    art_col_of_row_.assign(m_, -1);

    int slack_at = nstd_, art_at = nstd_ + nslack;
    for (int i = 0; i < m_; ++i) {
      const StdRow& s = srows[i];
      for (int j = 0; j < nstd_; ++j)
        if (s.coef[j] != 0) at(i, j) = Num<T>::from_rat(s.coef[j]);
      rhs(i) = Num<T>::from_rat(s.rhs);
      b_orig_[i] = rhs(i);
      if (s.sense == Sense::kLe) {
        at(i, slack_at) = T(1);
        basis_[i] = slack_at;
        art_col_of_row_[i] = slack_at;
        ++slack_at;
      } else if (s.sense == Sense::kGe) {
        at(i, slack_at) = T(-1);
        ++slack_at;
        at(i, art_at) = T(1);
        basis_[i] = art_at;
        art_col_of_row_[i] = art_at;
        ++art_at;
      } else {
        at(i, art_at) = T(1);
        basis_[i] = art_at;
        art_col_of_row_[i] = art_at;
        ++art_at;
      }
    }

    cost_.assign(ncols_, T(0));
    for (int j = 0; j < lp_.num_vars(); ++j) {
      const VarMap& vm = vmap_[j];
      if (vm.kind == VarMap::kFixed) continue;
      T c = Num<T>::from_rat(lp_.objective[j]);
      if (vm.kind == VarMap::kFlip)
        cost_[vm.col] = T(0) - c;
      else if (vm.kind == VarMap::kSplit) {
        cost_[vm.col] = c;
        cost_[vm.col + 1] = T(0) - c;
      } else {
        cost_[vm.col] = c;
      }
    }

    // Phase-1 cost row: minimize the artificial sum.
    if (narts_ > 0) {
      for (int i = 0; i < m_; ++i) {
        if (basis_[i] < nstd_ + nslack) continue;  // slack-basic row
        for (int j = 0; j <= ncols_; ++j) at(m_, j) -= at(i, j);
        at(m_, basis_[i]) = T(0);
      }
    }
  }

  void load_phase2_costs() {
    for (int j = 0; j <= ncols_; ++j) at(m_, j) = T(0);
    for (int j = 0; j < ncols_; ++j) at(m_, j) = cost_[j];
    for (int i = 0; i < m_; ++i) {
      const T& cb = cost_[basis_[i]];
      if (Num<T>::is_zero(cb, 0.0)) continue;
      T f = cb;
      for (int j = 0; j <= ncols_; ++j) at(m_, j) -= f * at(i, j);
    }
    for (int i = 0; i < m_; ++i) at(m_, basis_[i]) = T(0);
  }

  // Pivot basic artificials out where a structural/slack pivot exists; rows
  // that stay artificial-basic are linearly dependent and remain at zero.
  void purge_artificials() {
    int art_start = ncols_ - narts_;
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < art_start) continue;
      for (int j = 0; j < art_start; ++j) {
        if (!Num<T>::is_zero(at(i, j), opts_.mode == ArithMode::kFloat ? opts_.tol : 0.0)) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  LpStatus phase(bool phase1) {
    long stall_threshold =
        opts_.stall_threshold > 0 ? opts_.stall_threshold : 2L * (m_ + ncols_) + 16;
    int art_start = ncols_ - narts_;
    double tol = opts_.mode == ArithMode::kFloat ? opts_.tol : 0.0;
    for (;;) {
      if (iterations_ >= opts_.max_iterations) return LpStatus::kIterationLimit;
      // Entering column: artificials never re-enter.
      int enter = -1;
      if (!bland_) {
        const T* best = nullptr;
        for (int j = 0; j < art_start; ++j) {
          const T& c = at(m_, j);
          if (Num<T>::is_neg(c, tol) && (best == nullptr || c < *best)) {
            best = &at(m_, j);
            enter = j;
          }
        }
      } else {
        for (int j = 0; j < art_start; ++j)
          if (Num<T>::is_neg(at(m_, j), tol)) { enter = j; break; }
      }
      if (enter < 0) return LpStatus::kOptimal;

      int leave = -1;
      T best_ratio{};
      for (int i = 0; i < m_; ++i) {
        const T& piv = at(i, enter);
        if (!Num<T>::is_pos(piv, tol)) continue;
        T ratio = rhs(i) / piv;
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) {
        if (phase1) throw SolverError("feasibility subproblem became unbounded");
        return LpStatus::kUnbounded;
      }

      bool degenerate = Num<T>::is_zero(rhs(leave), tol);
      pivot(leave, enter);
      ++iterations_;
      if (degenerate) {
        if (++stall_ > stall_threshold) bland_ = true;
      } else {
        stall_ = 0;
      }
    }
  }

  void pivot(int r, int c) {
    T piv = at(r, c);
    for (int j = 0; j <= ncols_; ++j) at(r, j) = at(r, j) / piv;
    at(r, c) = T(1);
    for (int i = 0; i <= m_; ++i) {
      if (i == r) continue;
      T f = at(i, c);
      if (Num<T>::is_zero(f, 0.0)) continue;
      for (int j = 0; j <= ncols_; ++j) at(i, j) -= f * at(r, j);
      at(i, c) = T(0);
    }
    basis_[r] = c;
  }

  LpSolution finish(LpStatus st) {
    LpSolution sol;
    sol.status = st;
    sol.iterations = iterations_;
    return sol;
  }

  LpSolution extract() {
    LpSolution sol;
    sol.status = LpStatus::kOptimal;
    sol.iterations = iterations_;

    std::vector<Rat> xstd(ncols_, Rat(0));
    for (int i = 0; i < m_; ++i) xstd[basis_[i]] = Num<T>::to_rat(rhs(i));

    sol.primal.resize(lp_.num_vars());
    for (int j = 0; j < lp_.num_vars(); ++j) {
      const VarMap& vm = vmap_[j];
      switch (vm.kind) {
        case VarMap::kFixed: sol.primal[j] = vm.offset; break;
        case VarMap::kShift: sol.primal[j] = vm.offset + xstd[vm.col]; break;
        case VarMap::kFlip: sol.primal[j] = vm.offset - xstd[vm.col]; break;
        case VarMap::kSplit: sol.primal[j] = xstd[vm.col] - xstd[vm.col + 1]; break;
      }
    }
    sol.value = 0;
    for (int j = 0; j < lp_.num_vars(); ++j)
      if (lp_.objective[j] != 0) sol.value += lp_.objective[j] * sol.primal[j];

    // Duals: each standard row keeps a +/- unit column (its slack or
    // artificial); the cost row there equals -(y_i * sign).
    std::vector<Rat> ystd(m_, Rat(0));
    sol.dual_value = const_term_;
    for (int i = 0; i < m_; ++i) {
      Rat y = -Num<T>::to_rat(at(m_, art_col_of_row_[i]));
      ystd[i] = y;
      sol.dual_value += y * Num<T>::to_rat(b_orig_[i]);
    }
    sol.dual.assign(lp_.rows.size(), Rat(0));
    for (size_t r = 0; r < lp_.rows.size(); ++r) {
      int i = row_of_orig_[r];
      if (i >= 0) sol.dual[r] = row_sign_[i] < 0 ? Rat(-ystd[i]) : ystd[i];
    }
    return sol;
  }
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const LpOptions& opts) {
  if (opts.mode == ArithMode::kRational) return Simplex<Rat>(lp, opts).run();
  return Simplex<double>(lp, opts).run();
}

FeasibilityVerdict check_point(const LinearProgram& lp, std::span<const Rat> point,
                               const Rat& tol) {
  FeasibilityVerdict verdict;
  auto add = [&verdict](std::string name, const Rat& amount) {
    verdict.feasible = false;
    verdict.violations.push_back({std::move(name), amount});
  };
  if (static_cast<int>(point.size()) != lp.num_vars())
    throw std::invalid_argument("check_point: point size does not match variable count");

  for (int j = 0; j < lp.num_vars(); ++j) {
    if (lp.has_lower[j] && point[j] < lp.lower[j] - tol)
      add("bound[" + lp.var_names[j] + "]", lp.lower[j] - point[j]);
    if (lp.has_upper[j] && point[j] > lp.upper[j] + tol)
      add("bound[" + lp.var_names[j] + "]", point[j] - lp.upper[j]);
  }
  for (const LpRow& row : lp.rows) {
    Rat lhs = 0;
    for (const auto& [j, coef] : row.terms) lhs += coef * point[j];
    Rat gap = lhs - row.rhs;
    bool bad = (row.sense == Sense::kGe && gap < -tol) || (row.sense == Sense::kLe && gap > tol) ||
               (row.sense == Sense::kEq && (gap < -tol || gap > tol));
    if (bad) add(row.name, gap < 0 ? Rat(-gap) : gap);
  }
  return verdict;
}

FeasibilityVerdict check_point(const LinearProgram& lp, std::span<const double> point,
                               double tol) {
  FeasibilityVerdict verdict;
  auto add = [&verdict](std::string name, double amount) {
    verdict.feasible = false;
    verdict.violations.push_back({std::move(name), rat_from_double(amount)});
  };
  if (static_cast<int>(point.size()) != lp.num_vars())
    throw std::invalid_argument("check_point: point size does not match variable count");

  for (int j = 0; j < lp.num_vars(); ++j) {
    if (lp.has_lower[j] && point[j] < to_double(lp.lower[j]) - tol)
      add("bound[" + lp.var_names[j] + "]", to_double(lp.lower[j]) - point[j]);
    if (lp.has_upper[j] && point[j] > to_double(lp.upper[j]) + tol)
      add("bound[" + lp.var_names[j] + "]", point[j] - to_double(lp.upper[j]));
  }
  for (const LpRow& row : lp.rows) {
    double lhs = 0;
    for (const auto& [j, coef] : row.terms) lhs += to_double(coef) * point[j];
    double gap = lhs - to_double(row.rhs);
    bool bad = (row.sense == Sense::kGe && gap < -tol) || (row.sense == Sense::kLe && gap > tol) ||
               (row.sense == Sense::kEq && std::abs(gap) > tol);
    if (bad) add(row.name, std::abs(gap));
  }
  return verdict;
}

namespace {

bool is_default_bounds(const LinearProgram& lp, int j) {
  return lp.has_lower[j] && !lp.has_upper[j] && lp.lower[j] == 0;
}

}  // namespace

void write_lp_format(const LinearProgram& lp, std::ostream& out) {
  out << "Minimize\n obj:";
  bool any = false;
  for (int j = 0; j < lp.num_vars(); ++j) {
    if (lp.objective[j] == 0) continue;
    Rat c = lp.objective[j];
    out << (c < 0 ? " - " : (any ? " + " : " "));
    Rat mag = c < 0 ? Rat(-c) : c;
    if (mag != 1) out << rat_to_string(mag) << " ";
    out << lp.var_names[j];
    any = true;
  }
  if (!any) out << " 0 " << (lp.num_vars() ? lp.var_names[0] : "x0");
  out << "\nSubject To\n";
  for (const LpRow& row : lp.rows) {
    out << " " << row.name << ":";
    bool first = true;
    for (const auto& [j, coef] : row.terms) {
      if (coef == 0) continue;
      Rat c = coef;
      out << (c < 0 ? " - " : (first ? " " : " + "));
      Rat mag = c < 0 ? Rat(-c) : c;
      if (mag != 1) out << rat_to_string(mag) << " ";
      out << lp.var_names[j];
      first = false;
    }
    if (first) out << " 0 " << lp.var_names[0];
    out << (row.sense == Sense::kGe ? " >= " : row.sense == Sense::kLe ? " <= " : " = ")
        << rat_to_string(row.rhs) << "\n";
  }
  out << "Bounds\n";
  for (int j = 0; j < lp.num_vars(); ++j) {
    if (is_default_bounds(lp, j)) continue;
    if (!lp.has_lower[j] && !lp.has_upper[j]) {
      out << " " << lp.var_names[j] << " free\n";
    } else if (lp.has_lower[j] && lp.has_upper[j]) {
      out << " " << rat_to_string(lp.lower[j]) << " <= " << lp.var_names[j] << " <= "
          << rat_to_string(lp.upper[j]) << "\n";
    } else if (lp.has_lower[j]) {
      out << " " << lp.var_names[j] << " >= " << rat_to_string(lp.lower[j]) << "\n";
    } else {
      out << " -infinity <= " << lp.var_names[j] << " <= " << rat_to_string(lp.upper[j]) << "\n";
    }
  }
  out << "End\n";
}

namespace {

struct LpToken {
  enum Kind { kIdent, kNumber, kOp, kEnd } kind;
  std::string text;
};

class LpLexer {
 public:
  explicit LpLexer(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
      auto cut = line.find('\\');
      if (cut != std::string::npos) line.erase(cut);
      text_ += line + "\n";
    }
  }

  LpToken next() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ >= text_.size()) return {LpToken::kEnd, ""};
    char c = text_[pos_];
    if (c == '+' || c == '-' || c == ':' || c == '<' || c == '>' || c == '=') {
      size_t start = pos_++;
      while (pos_ < text_.size() &&
             (text_[pos_] == '=' || text_[pos_] == '<' || text_[pos_] == '>'))
        ++pos_;
      return {LpToken::kOp, text_.substr(start, pos_ - start)};
    }
    size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '+' && text_[pos_] != '-' && text_[pos_] != ':' && text_[pos_] != '<' &&
           text_[pos_] != '>' && text_[pos_] != '=')
      ++pos_;
    std::string tok = text_.substr(start, pos_ - start);
    bool numeric = std::isdigit(static_cast<unsigned char>(tok[0])) || tok[0] == '.';
    return {numeric ? LpToken::kNumber : LpToken::kIdent, tok};
  }

  LpToken peek() {
    size_t save = pos_;
    LpToken t = next();
    pos_ = save;
    return t;
  }

 private:
  std::string text_;
  size_t pos_ = 0;
};

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

LinearProgram read_lp_format(std::istream& in) {
  LpLexer lex(in);
  LinearProgram lp;
  auto var_index = [&lp](const std::string& name) {
    for (int j = 0; j < lp.num_vars(); ++j)
      if (lp.var_names[j] == name) return j;
    return lp.add_var(name);
  };

  LpToken t = lex.next();
  if (t.kind != LpToken::kIdent || lower(t.text) != "minimize")
    throw ParseError(0, "LP text must start with Minimize");

  // Objective: optional "name:" then a linear expression.
  struct Term { Rat coef; std::string var; };
  auto read_expr = [&](LpToken& tok, std::vector<Term>& terms) {
    Rat sign = 1;
    bool have_coef = false;
    Rat coef = 1;
    for (;;) {
      if (tok.kind == LpToken::kOp && (tok.text == "+" || tok.text == "-")) {
        if (have_coef) throw ParseError(0, "dangling coefficient in LP text");
        sign = tok.text == "-" ? -1 : 1;
        tok = lex.next();
        continue;
      }
      if (tok.kind == LpToken::kNumber) {
        coef = rat_from_string(tok.text);
        have_coef = true;
        tok = lex.next();
        continue;
      }
      if (tok.kind == LpToken::kIdent) {
        std::string word = lower(tok.text);
        if (word == "subject" || word == "bounds" || word == "end" || word == "st" ||
            word == "s.t.")
          return;
        terms.push_back({sign * coef, tok.text});
        sign = 1;
        coef = 1;
        have_coef = false;
        tok = lex.next();
        continue;
      }
      return;  // operator ends the expression (relation) or EOF
    }
  };

  t = lex.next();
  std::vector<Term> obj_terms;
  if (t.kind == LpToken::kIdent && lex.peek().kind == LpToken::kOp && lex.peek().text == ":") {
    lex.next();
    t = lex.next();
  }
  read_expr(t, obj_terms);
  for (const Term& term : obj_terms) {
    int j = var_index(term.var);
    lp.objective[j] += term.coef;
  }

  if (!(t.kind == LpToken::kIdent && lower(t.text) == "subject"))
    throw ParseError(0, "expected Subject To section");
  t = lex.next();  // "To"
  if (!(t.kind == LpToken::kIdent && lower(t.text) == "to"))
    throw ParseError(0, "expected Subject To section");

  t = lex.next();
  while (!(t.kind == LpToken::kIdent &&
           (lower(t.text) == "bounds" || lower(t.text) == "end")) &&
         t.kind != LpToken::kEnd) {
    std::string row_name;
    if (t.kind == LpToken::kIdent && lex.peek().kind == LpToken::kOp && lex.peek().text == ":") {
      row_name = t.text;
      lex.next();
      t = lex.next();
    }
    std::vector<Term> terms;
    read_expr(t, terms);
    if (t.kind != LpToken::kOp) throw ParseError(0, "constraint without relation");
    Sense sense;
    if (t.text == ">=" || t.text == ">" || t.text == "=>")
      sense = Sense::kGe;
    else if (t.text == "<=" || t.text == "<" || t.text == "=<")
      sense = Sense::kLe;
    else if (t.text == "=")
      sense = Sense::kEq;
    else
      throw ParseError(0, "unknown relation " + t.text);
    t = lex.next();
    Rat sign = 1;
    while (t.kind == LpToken::kOp && (t.text == "+" || t.text == "-")) {
      if (t.text == "-") sign = -sign;
      t = lex.next();
    }
    if (t.kind != LpToken::kNumber) throw ParseError(0, "constraint rhs must be a number");
    LpRow& row = lp.add_row(row_name, sense, sign * rat_from_string(t.text));
    for (const Term& term : terms) {
      int j = var_index(term.var);
      bool merged = false;
      for (auto& [col, coef] : row.terms)
        if (col == j) {
          coef += term.coef;
          merged = true;
          break;
        }
      if (!merged) row.terms.emplace_back(j, term.coef);
    }
    t = lex.next();
  }

  if (t.kind == LpToken::kIdent && lower(t.text) == "bounds") {
    t = lex.next();
    while (!(t.kind == LpToken::kIdent && lower(t.text) == "end") && t.kind != LpToken::kEnd) {
      // Forms: v free | v >= a | v <= b | a <= v <= b | -infinity <= v <= b
      bool neg = false;
      if (t.kind == LpToken::kOp && (t.text == "-" || t.text == "+")) {
        neg = t.text == "-";
        t = lex.next();
      }
      if (t.kind == LpToken::kNumber ||
          (t.kind == LpToken::kIdent && (lower(t.text) == "infinity" || lower(t.text) == "inf"))) {
        bool lo_inf = t.kind == LpToken::kIdent;
        Rat lo = lo_inf ? Rat(0) : rat_from_string(t.text) * (neg ? -1 : 1);
        t = lex.next();  // <=
        if (!(t.kind == LpToken::kOp && (t.text == "<=" || t.text == "<")))
          throw ParseError(0, "malformed bound line");
        t = lex.next();
        if (t.kind != LpToken::kIdent) throw ParseError(0, "malformed bound line");
        int j = var_index(t.text);
        if (lo_inf)
          lp.has_lower[j] = 0;
        else
          lp.set_lower(j, lo);
        t = lex.next();
        if (t.kind == LpToken::kOp && (t.text == "<=" || t.text == "<")) {
          t = lex.next();
          neg = false;
          if (t.kind == LpToken::kOp && (t.text == "-" || t.text == "+")) {
            neg = t.text == "-";
            t = lex.next();
          }
          if (t.kind != LpToken::kNumber) throw ParseError(0, "malformed bound line");
          lp.set_upper(j, rat_from_string(t.text) * (neg ? -1 : 1));
          t = lex.next();
        }
        continue;
      }
      if (t.kind != LpToken::kIdent) throw ParseError(0, "malformed bound line");
      int j = var_index(t.text);
      t = lex.next();
      if (t.kind == LpToken::kIdent && lower(t.text) == "free") {
        lp.make_free(j);
        t = lex.next();
        continue;
      }
      if (t.kind == LpToken::kOp && (t.text == ">=" || t.text == ">")) {
        t = lex.next();
        neg = false;
        if (t.kind == LpToken::kOp && (t.text == "-" || t.text == "+")) {
          neg = t.text == "-";
          t = lex.next();
        }
        if (t.kind != LpToken::kNumber) throw ParseError(0, "malformed bound line");
        lp.set_lower(j, rat_from_string(t.text) * (neg ? -1 : 1));
        t = lex.next();
        continue;
      }
      if (t.kind == LpToken::kOp && (t.text == "<=" || t.text == "<")) {
        t = lex.next();
        neg = false;
        if (t.kind == LpToken::kOp && (t.text == "-" || t.text == "+")) {
          neg = t.text == "-";
          t = lex.next();
        }
        if (t.kind != LpToken::kNumber) throw ParseError(0, "malformed bound line");
        lp.set_upper(j, rat_from_string(t.text) * (neg ? -1 : 1));
        t = lex.next();
        continue;
      }
      throw ParseError(0, "malformed bound line");
    }
  }
  return lp;
}

}  // namespace flp
