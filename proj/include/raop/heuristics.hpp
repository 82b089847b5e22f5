#pragma once

// Refined revenue-ordered heuristics, the small-n grid oracle and solver
// dispatch by name.
//
// All heuristics walk products in decreasing revenue order (ties by index).
// RO1 refines the next product after a revenue-ordered prefix. RO2 continues
// down the revenue order, optimizing each later coordinate once with earlier
// ones frozen. RO3 greedily commits, among products outside the prefix, the
// single (product, level) pair with the largest gain until no gain exceeds
// 1e-12. Each returns the best over all starting prefixes.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "raop/instance.hpp"
#include "raop/line_search.hpp"
#include "raop/taop.hpp"

namespace raop {

struct HeuristicOptions {
  LineSearchOptions line;
  int threads = 0;
};

SolveResult ro1(const Instance& instance, const HeuristicOptions& options = {});
SolveResult ro2(const Instance& instance, const HeuristicOptions& options = {});
SolveResult ro3(const Instance& instance, const HeuristicOptions& options = {});

inline constexpr std::size_t kGridOracleMaxProducts = 3;
inline constexpr std::size_t kGridOracleMaxPerAxis = 201;

// Exhaustive grid (per_axis points on interval axes, all levels on discrete
// axes) followed by coordinate-ascent line searches from the best point.
// Lower-bounds the refined optimum. SizeLimit for n > 3 or per_axis > 201.
SolveResult grid_oracle_raop(const Instance& instance, std::size_t per_axis = 101,
                             const HeuristicOptions& options = {});

namespace reference {

// Serial twins with full re-evaluation in every line-search step.
SolveResult ro1(const Instance& instance, const LineSearchOptions& line = {});
SolveResult ro2(const Instance& instance, const LineSearchOptions& line = {});
SolveResult ro3(const Instance& instance, const LineSearchOptions& line = {});
SolveResult grid_oracle_raop(const Instance& instance, std::size_t per_axis = 101,
                             const LineSearchOptions& line = {});

}  // namespace reference

struct SolverOptions {
  HeuristicOptions heuristic;
  std::size_t enum_cap = kDefaultEnumCap;
  std::size_t grid_per_axis = 101;
};

// "ro", "ro1", "ro2", "ro3", "enum", "grid", "sacp".
const std::vector<std::string>& solver_names();
bool is_solver_name(std::string_view name);
SolveResult solve_by_name(const Instance& instance, std::string_view name,
                          const SolverOptions& options = {});

}  // namespace raop
