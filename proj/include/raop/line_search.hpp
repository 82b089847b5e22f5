#pragma once

// Univariate maximization over [0,1]: uniform grid scan followed by
// golden-section refinement around the best grid cell. The single-variable
// LC-MNL revenue is a sum of linear-fractional terms and can be multimodal,
// which rules out golden section alone.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "raop/instance.hpp"

namespace raop {

struct LineSearchOptions {
  std::size_t grid_points = 256;
  double tol = 1e-9;
};

struct LineMaximum {
  double x = 0.0;
  double value = 0.0;
};

template <class Objective>
LineMaximum line_maximize(Objective&& f, const LineSearchOptions& options = {}) {
  const std::size_t points = std::max<std::size_t>(options.grid_points, 3);
  const double step = 1.0 / static_cast<double>(points - 1);
  LineMaximum best{0.0, f(0.0)};
  std::size_t best_index = 0;
  for (std::size_t k = 1; k < points; ++k) {
    const double t = k + 1 == points ? 1.0 : static_cast<double>(k) * step;
    const double value = f(t);
    if (value > best.value) {
      best = {t, value};
      best_index = k;
    }
  }

  // golden-section on the two grid cells around the best grid point
  constexpr double kInvPhi = 0.6180339887498949;
  double lo = best_index == 0 ? 0.0 : static_cast<double>(best_index - 1) * step;
  double hi = std::min(1.0, static_cast<double>(best_index + 1) * step);
  double c = hi - kInvPhi * (hi - lo);
  double d = lo + kInvPhi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  const double tol = options.tol > 0.0 ? options.tol : 1e-9;
  while (hi - lo > tol) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kInvPhi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kInvPhi * (hi - lo);
      fd = f(d);
    }
  }
  for (const auto& [t, value] : {std::pair{c, fc}, std::pair{d, fd}}) {
    if (value > best.value) best = {t, value};
  }
  const double mid = 0.5 * (lo + hi);
  if (const double value = f(mid); value > best.value) best = {mid, value};
  return best;
}

// Discrete levels are scanned exhaustively; FullInterval uses the grid search.
template <class Objective>
LineMaximum line_maximize(Objective&& f, const DomainSpec& spec,
                          const LineSearchOptions& options = {}) {
  const auto levels = discrete_levels(spec);
  if (levels.empty()) return line_maximize(f, options);
  LineMaximum best{levels.front(), f(levels.front())};
  for (std::size_t k = 1; k < levels.size(); ++k) {
    const double value = f(levels[k]);
    if (value > best.value) best = {levels[k], value};
  }
  return best;
}

// Revenue as a function of one coordinate with the others held at `base`.
struct LineProblem {
  RefinementVector base;
  std::size_t free = 0;
};

// Evaluates the line objective in O(m) per call for linear LC-MNL by
// precomputing per-segment numerators and denominators of the fixed part;
// other models fall back to a full evaluation.
class LineObjective {
 public:
  LineObjective(const Instance& instance, const LineProblem& problem);
  double operator()(double t) const;

 private:
  const Instance* instance_;
  std::size_t free_;
  std::vector<double> theta_, fixed_num_, fixed_den_, free_num_, free_den_;
  mutable RefinementVector scratch_;
  bool fast_ = false;
};

// Domain-aware line maximization of the instance revenue.
LineMaximum line_maximize(const Instance& instance, const LineProblem& problem,
                          const LineSearchOptions& options = {});

}  // namespace raop
