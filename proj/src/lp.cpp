#include "raop/lp.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "raop/types.hpp"

namespace raop {

LinearProgram::LinearProgram(std::size_t num_vars)
    : objective(num_vars, 0.0), lower(num_vars, 0.0), upper(num_vars, kInf) {}

void LinearProgram::add_row(std::vector<double> coeffs, RowSense sense, double b) {
  rows.push_back(std::move(coeffs));
  senses.push_back(sense);
  rhs.push_back(b);
}

void LinearProgram::validate() const {
  const std::size_t n = num_vars();
  if (lower.size() != n || upper.size() != n) throw Error("LP bound vectors have the wrong size");
  if (senses.size() != rows.size() || rhs.size() != rows.size()) {
    throw Error("LP row data is inconsistent");
  }
  for (double c : objective) {
    if (!std::isfinite(c)) throw Error("LP objective must be finite");
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != n) throw Error("LP row " + std::to_string(i) + " has the wrong length");
    for (double a : rows[i]) {
      if (!std::isfinite(a)) throw Error("LP coefficients must be finite");
    }
    if (!std::isfinite(rhs[i])) throw Error("LP right-hand sides must be finite");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (std::isnan(lower[j]) || std::isnan(upper[j]) || lower[j] > upper[j] ||
        lower[j] == kInf || upper[j] == -kInf) {
      throw Error("LP variable " + std::to_string(j) + " has invalid bounds");
    }
  }
}

std::string to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration_limit";
  }
  return "unknown";
}

namespace {

// Original variable j = offset + sign * t[col] (- t[neg_col] when free).
struct VarMap {
  double offset = 0.0;
  double sign = 1.0;
  std::size_t col = 0;
  std::optional<std::size_t> neg_col;
};

class Tableau {
 public:
  Tableau(std::vector<std::vector<double>> rows, std::vector<double> b, std::size_t cols)
      : cols_(cols), t_(std::move(rows)), basis_(t_.size()) {
    for (std::size_t i = 0; i < t_.size(); ++i) {
      t_[i].resize(cols_ + 1, 0.0);
      t_[i][cols_] = b[i];
    }
    cost_.assign(cols_ + 1, 0.0);
  }

  std::size_t rows() const { return t_.size(); }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }
  std::vector<double>& row(std::size_t i) { return t_[i]; }
  double objective() const { return -cost_[cols_]; }

  // Reduced costs for maximizing c over the current basis.
  void price(const std::vector<double>& c) {
    for (std::size_t j = 0; j <= cols_; ++j) cost_[j] = j < cols_ ? c[j] : 0.0;
    for (std::size_t i = 0; i < t_.size(); ++i) {
      const double cb = c[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) cost_[j] -= cb * t_[i][j];
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    auto& pr = t_[r];
    const double inv = 1.0 / pr[c];
    for (double& a : pr) a *= inv;
    pr[c] = 1.0;
    auto eliminate = [&](std::vector<double>& row) {
      const double f = row[c];
      if (f == 0.0) return;
      for (std::size_t j = 0; j <= cols_; ++j) row[j] -= f * pr[j];
      row[c] = 0.0;
    };
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (i != r) eliminate(t_[i]);
    }
    eliminate(cost_);
    basis_[r] = c;
  }

  void erase_row(std::size_t r) {
    t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

  // Runs primal simplex over columns j < allowed.
  LpStatus run(std::size_t allowed, const SimplexOptions& opt, std::size_t& iterations,
               std::size_t max_iterations) {
    const std::size_t bland_after =
        opt.bland_after > 0 ? opt.bland_after : 5 * (t_.size() + cols_);
    std::size_t degenerate = 0;
    bool bland = false;
    while (true) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (cost_[j] <= opt.tol) continue;
        if (!enter || (!bland && cost_[j] > cost_[*enter])) enter = j;
        if (bland) break;
      }
      if (!enter) return LpStatus::Optimal;
      if (iterations >= max_iterations) return LpStatus::IterationLimit;

      double best_ratio = kInf;
      for (std::size_t i = 0; i < t_.size(); ++i) {
        const double a = t_[i][*enter];
        if (a > opt.tol) best_ratio = std::min(best_ratio, std::max(0.0, t_[i][cols_]) / a);
      }
      if (best_ratio == kInf) return LpStatus::Unbounded;
      // among near-minimal ratios prefer the smallest basic column index
      std::optional<std::size_t> leave;
      for (std::size_t i = 0; i < t_.size(); ++i) {
        const double a = t_[i][*enter];
        if (a <= opt.tol) continue;
        const double ratio = std::max(0.0, t_[i][cols_]) / a;
        if (ratio <= best_ratio + opt.tol && (!leave || basis_[i] < basis_[*leave])) leave = i;
      }
      if (best_ratio <= opt.tol) {
        if (++degenerate >= bland_after) bland = true;
      } else {
        degenerate = 0;
      }
      pivot(*leave, *enter);
      ++iterations;
    }
  }

 private:
  std::size_t cols_;
  std::vector<std::vector<double>> t_;
  std::vector<std::size_t> basis_;
  std::vector<double> cost_;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& options) {
  lp.validate();
  const std::size_t n = lp.num_vars();

  // shift, mirror or split each variable so that all working columns are >= 0
  std::vector<VarMap> map(n);
  std::size_t structural = 0;
  std::vector<std::pair<std::size_t, double>> upper_rows;  // column, bound
  for (std::size_t j = 0; j < n; ++j) {
    const double lo = lp.lower[j];
    const double hi = lp.upper[j];
    if (std::isfinite(lo)) {
      map[j] = {lo, 1.0, structural++, std::nullopt};
      if (std::isfinite(hi)) upper_rows.emplace_back(map[j].col, hi - lo);
    } else if (std::isfinite(hi)) {
      map[j] = {hi, -1.0, structural++, std::nullopt};
    } else {
      map[j] = {0.0, 1.0, structural, structural + 1};
      structural += 2;
    }
  }

  struct Row {
    std::vector<double> a;
    RowSense sense;
    double b;
  };
  std::vector<Row> work;
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    Row row{std::vector<double>(structural, 0.0), lp.senses[i], lp.rhs[i]};
    for (std::size_t j = 0; j < n; ++j) {
      const double a = lp.rows[i][j];
      if (a == 0.0) continue;
      row.b -= a * map[j].offset;
      row.a[map[j].col] += a * map[j].sign;
      if (map[j].neg_col) row.a[*map[j].neg_col] -= a;
    }
    work.push_back(std::move(row));
  }
  for (const auto& [col, bound] : upper_rows) {
    Row row{std::vector<double>(structural, 0.0), RowSense::LessEqual, bound};
    row.a[col] = 1.0;
    work.push_back(std::move(row));
  }
  for (auto& row : work) {
    if (row.b < 0.0) {
      for (double& a : row.a) a = -a;
      row.b = -row.b;
      if (row.sense == RowSense::LessEqual) {
        row.sense = RowSense::GreaterEqual;
      } else if (row.sense == RowSense::GreaterEqual) {
        row.sense = RowSense::LessEqual;
      }
    }
  }

  // columns: structural | slacks | artificials
  std::size_t slacks = 0;
  std::size_t artificials = 0;
  for (const auto& row : work) {
    if (row.sense != RowSense::Equal) ++slacks;
    if (row.sense != RowSense::LessEqual) ++artificials;
  }
  const std::size_t first_art = structural + slacks;
  const std::size_t cols = first_art + artificials;
  std::vector<std::vector<double>> rows(work.size());
  std::vector<double> b(work.size());
  std::vector<std::size_t> basis(work.size());
  {
    std::size_t s = structural;
    std::size_t a = first_art;
    for (std::size_t i = 0; i < work.size(); ++i) {
      rows[i] = std::move(work[i].a);
      rows[i].resize(cols, 0.0);
      b[i] = work[i].b;
      if (work[i].sense == RowSense::LessEqual) {
        rows[i][s] = 1.0;
        basis[i] = s++;
      } else {
        if (work[i].sense == RowSense::GreaterEqual) rows[i][s++] = -1.0;
        rows[i][a] = 1.0;
        basis[i] = a++;
      }
    }
  }
  Tableau tab(std::move(rows), b, cols);
  tab.basis() = basis;

  LpSolution sol;
  const std::size_t max_iterations = options.max_iterations > 0
                                         ? options.max_iterations
                                         : 200 * (work.size() + cols) + 1000;
  double scale = 1.0;
  for (double v : b) scale = std::max(scale, v);

  if (artificials > 0) {
    std::vector<double> phase1(cols, 0.0);
    for (std::size_t j = first_art; j < cols; ++j) phase1[j] = -1.0;
    tab.price(phase1);
    const auto status = tab.run(cols, options, sol.iterations, max_iterations);
    if (status == LpStatus::IterationLimit) {
      sol.status = status;
      return sol;
    }
    if (tab.objective() < -options.tol * scale * 10.0) {
      sol.status = LpStatus::Infeasible;
      return sol;
    }
    // pivot remaining zero-level artificials out, dropping redundant rows
    for (std::size_t i = tab.rows(); i-- > 0;) {
      if (tab.basis()[i] < first_art) continue;
      const auto& row = tab.row(i);
      std::optional<std::size_t> col;
      double best = options.tol;
      for (std::size_t j = 0; j < first_art; ++j) {
        if (std::abs(row[j]) > best) {
          best = std::abs(row[j]);
          col = j;
        }
      }
      if (col) {
        tab.pivot(i, *col);
      } else {
        tab.erase_row(i);
      }
    }
  }

  std::vector<double> phase2(cols, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    phase2[map[j].col] += lp.objective[j] * map[j].sign;
    if (map[j].neg_col) phase2[*map[j].neg_col] -= lp.objective[j];
  }
  tab.price(phase2);
  sol.status = tab.run(first_art, options, sol.iterations, max_iterations);
  if (sol.status != LpStatus::Optimal) return sol;

  std::vector<double> t(cols, 0.0);
  for (std::size_t i = 0; i < tab.rows(); ++i) t[tab.basis()[i]] = tab.row(i)[cols];
  sol.x.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    double v = map[j].offset + map[j].sign * t[map[j].col];
    if (map[j].neg_col) v -= t[*map[j].neg_col];
    sol.x[j] = std::clamp(v, lp.lower[j], lp.upper[j]);
  }
  sol.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) sol.objective += lp.objective[j] * sol.x[j];
  return sol;
}

}  // namespace raop
