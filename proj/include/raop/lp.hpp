#pragma once

// Dense two-phase primal simplex. Small LPs only (a few hundred columns).

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace raop {

enum class RowSense { LessEqual, Equal, GreaterEqual };

struct LinearProgram {
  // maximize c'x subject to rows, lower <= x <= upper
  std::vector<double> objective;
  std::vector<std::vector<double>> rows;
  std::vector<RowSense> senses;
  std::vector<double> rhs;
  std::vector<double> lower;  // may be -infinity
  std::vector<double> upper;  // may be +infinity

  explicit LinearProgram(std::size_t num_vars = 0);
  std::size_t num_vars() const { return objective.size(); }
  std::size_t num_rows() const { return rows.size(); }
  void add_row(std::vector<double> coeffs, RowSense sense, double b);
  // Throws Error on ragged rows, non-finite coefficients or lower > upper.
  void validate() const;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };
std::string to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0.0;
  std::vector<double> x;
  std::size_t iterations = 0;
};

struct SimplexOptions {
  double tol = 1e-9;
  // Dantzig pricing until this many consecutive degenerate pivots, then
  // Bland's rule. 0 means 5 * (rows + columns) of the working tableau.
  std::size_t bland_after = 0;
  std::size_t max_iterations = 0;  // 0: 200 * (rows + columns) + 1000
};

LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& options = {});

}  // namespace raop
