#pragma once

// Sequential assortment commitment: a firm commits to offering product i
// from some period on, and forward-looking customers see utility u_{is} that
// decreases in the period s. Choosing the period for each product is a
// refinement problem over the finite menus {0} U {exp(u_{is} - u_{i1})}.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "raop/instance.hpp"

namespace raop {

struct SACPSchedule {
  // levels[i][s]: refinement level of product i when first offered in period
  // s (0-based). levels[i][0] == 1 and levels are strictly decreasing.
  std::vector<std::vector<double>> levels;

  // utilities[i][s] = u_{is}, strictly decreasing in s.
  static SACPSchedule from_period_utilities(const std::vector<std::vector<double>>& utilities);
  // Nonzero levels of each discrete domain, largest first. Throws for
  // FullInterval coordinates.
  static SACPSchedule from_domain(const RefinementDomain& domain);

  std::size_t num_products() const { return levels.size(); }
  // {0} U levels[i], ascending.
  std::vector<double> menu(std::size_t i) const;
  void validate() const;
};

struct SACPSolution {
  SolveResult result;
  // Period (0-based) whose level each product uses; nullopt = never offered.
  std::vector<std::optional<std::size_t>> period;
};

inline constexpr double kSacpMaxCombinations = 1e7;

using ChoiceFunction = std::function<ChoiceProbabilities(std::span<const double>)>;

// Exact enumeration of the product of menus for an arbitrary choice model.
// Ties go to the lexicographically smallest menu-index vector (product 0
// most significant). Throws SizeLimit above 1e7 combinations.
SACPSolution solve_sacp(std::span<const double> r, const ChoiceFunction& choice,
                        const SACPSchedule& schedule, int threads = 0);
SACPSolution solve_sacp(const Instance& instance, const SACPSchedule& schedule, int threads = 0);

}  // namespace raop
