#include "raop/heuristics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <sstream>

#include "raop/parallel.hpp"
#include "raop/sacp.hpp"

namespace raop {

namespace {

constexpr double kGreedyGain = 1e-12;

struct Candidate {
  RefinementVector x;
  double value = 0.0;
};

// Line search over coordinate `free` with the rest fixed at `base`.
// Fast mode uses the O(m) LineObjective; reference mode re-evaluates R(x).
LineMaximum search(const Instance& instance, const RefinementVector& base, std::size_t free,
                   const LineSearchOptions& line, bool fast) {
  if (fast) return line_maximize(instance, LineProblem{base, free}, line);
  RefinementVector x = base;
  auto objective = [&](double t) {
    x[free] = t;
    return expected_revenue(instance, x);
  };
  return line_maximize(objective, instance.domain()[free], line);
}

Candidate ro1_candidate(const Instance& instance, const std::vector<std::size_t>& order,
                        std::size_t start, const LineSearchOptions& line, bool fast) {
  Candidate c{revenue_ordered_set(order, start), 0.0};
  const auto best = search(instance, c.x, order[start], line, fast);
  c.x[order[start]] = best.x;
  c.value = best.value;
  return c;
}

Candidate ro2_candidate(const Instance& instance, const std::vector<std::size_t>& order,
                        std::size_t start, const LineSearchOptions& line, bool fast) {
  Candidate c{revenue_ordered_set(order, start), 0.0};
  for (std::size_t k = start; k < order.size(); ++k) {
    const auto best = search(instance, c.x, order[k], line, fast);
    c.x[order[k]] = best.x;
    c.value = best.value;
  }
  return c;
}

Candidate ro3_candidate(const Instance& instance, const std::vector<std::size_t>& order,
                        std::size_t start, const LineSearchOptions& line, bool fast) {
  Candidate c{revenue_ordered_set(order, start), 0.0};
  c.value = expected_revenue(instance, c.x);
  std::vector<std::size_t> untouched(order.begin() + static_cast<std::ptrdiff_t>(start), order.end());
  while (!untouched.empty()) {
    std::size_t best_pos = untouched.size();
    LineMaximum best{0.0, c.value};
    for (std::size_t pos = 0; pos < untouched.size(); ++pos) {
      const auto trial = search(instance, c.x, untouched[pos], line, fast);
      if (trial.value > best.value) {
        best = trial;
        best_pos = pos;
      }
    }
    if (best_pos == untouched.size() || best.value - c.value <= kGreedyGain) break;
    c.x[untouched[best_pos]] = best.x;
    c.value = best.value;
    untouched.erase(untouched.begin() + static_cast<std::ptrdiff_t>(best_pos));
  }
  return c;
}

using CandidateFn = Candidate (*)(const Instance&, const std::vector<std::size_t>&, std::size_t,
                                  const LineSearchOptions&, bool);

SolveResult run_heuristic(const Instance& instance, CandidateFn candidate, const char* name,
                          const LineSearchOptions& line, int threads, bool fast) {
  const auto start = Clock::now();
  const std::size_t n = instance.n();
  const auto order = revenue_order(instance.r());
  std::vector<Candidate> candidates(n);
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) candidates[i] = candidate(instance, order, i, line, fast);
  } else {
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
      const auto idx = static_cast<std::size_t>(i);
      candidates[idx] = candidate(instance, order, idx, line, fast);
    }
  }
  // e^0 is the fallback; candidates only replace it with strictly more revenue
  Candidate best{RefinementVector(n, 0.0), 0.0};
  for (auto& c : candidates) {
    if (c.value > best.value) best = std::move(c);
  }
  return make_result(instance, project_to_domain(best.x, instance.domain()), name, start);
}

// Levels scanned along one grid axis.
std::vector<double> axis_levels(const DomainSpec& spec, std::size_t per_axis) {
  auto levels = discrete_levels(spec);
  if (!levels.empty()) return levels;
  levels.resize(per_axis);
  for (std::size_t k = 0; k < per_axis; ++k) {
    levels[k] = static_cast<double>(k) / static_cast<double>(per_axis - 1);
  }
  levels.back() = 1.0;
  return levels;
}

void check_grid(const Instance& instance, std::size_t per_axis) {
  if (instance.n() > kGridOracleMaxProducts || per_axis > kGridOracleMaxPerAxis || per_axis < 2) {
    std::ostringstream msg;
    msg << "grid oracle supports n <= " << kGridOracleMaxProducts << " and 2 <= per_axis <= "
        << kGridOracleMaxPerAxis << " (got n=" << instance.n() << ", per_axis=" << per_axis << ")";
    throw SizeLimit(msg.str());
  }
}

// Coordinate ascent from the best grid point.
Candidate polish(const Instance& instance, Candidate c, const LineSearchOptions& line, bool fast) {
  for (int sweep = 0; sweep < 100; ++sweep) {
    const double before = c.value;
    for (std::size_t i = 0; i < instance.n(); ++i) {
      const auto best = search(instance, c.x, i, line, fast);
      if (best.value > c.value) {
        c.x[i] = best.x;
        c.value = best.value;
      }
    }
    if (c.value - before <= 1e-12) break;
  }
  return c;
}

}  // namespace

SolveResult ro1(const Instance& instance, const HeuristicOptions& options) {
  return run_heuristic(instance, ro1_candidate, "ro1", options.line,
                       resolve_threads(options.threads), true);
}

SolveResult ro2(const Instance& instance, const HeuristicOptions& options) {
  return run_heuristic(instance, ro2_candidate, "ro2", options.line,
                       resolve_threads(options.threads), true);
}

SolveResult ro3(const Instance& instance, const HeuristicOptions& options) {
  return run_heuristic(instance, ro3_candidate, "ro3", options.line,
                       resolve_threads(options.threads), true);
}

SolveResult grid_oracle_raop(const Instance& instance, std::size_t per_axis,
                             const HeuristicOptions& options) {
  const auto start = Clock::now();
  check_grid(instance, per_axis);
  const std::size_t n = instance.n();
  if (n == 0) return make_result(instance, {}, "grid", start);

  std::array<std::vector<double>, kGridOracleMaxProducts> axes;
  for (std::size_t i = 0; i < kGridOracleMaxProducts; ++i) {
    axes[i] = i < n ? axis_levels(instance.domain()[i], per_axis) : std::vector<double>{0.0};
  }
  const LCMNLModel* model = instance.linear_lcmnl();
  const int threads = resolve_threads(options.threads);

  // one task per first-axis level; merged in index order
  std::vector<Candidate> best_per_row(axes[0].size());
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::int64_t a = 0; a < static_cast<std::int64_t>(axes[0].size()); ++a) {
    std::array<double, kGridOracleMaxProducts> x{};
    x[0] = axes[0][static_cast<std::size_t>(a)];
    const std::span<const double> view(x.data(), n);
    Candidate local{{}, -1.0};
    for (double b : axes[1]) {
      x[1] = b;
      for (double c : axes[2]) {
        x[2] = c;
        const double value =
            model ? lcmnl_revenue(*model, instance.r(), view) : expected_revenue(instance, view);
        if (value > local.value) local = {RefinementVector(view.begin(), view.end()), value};
      }
    }
    best_per_row[static_cast<std::size_t>(a)] = std::move(local);
  }
  Candidate best{{}, -1.0};
  for (auto& c : best_per_row) {
    if (c.value > best.value) best = std::move(c);
  }
  best = polish(instance, std::move(best), options.line, true);
  return make_result(instance, project_to_domain(best.x, instance.domain()), "grid", start);
}

namespace reference {

SolveResult ro1(const Instance& instance, const LineSearchOptions& line) {
  return run_heuristic(instance, ro1_candidate, "ro1", line, 1, false);
}

SolveResult ro2(const Instance& instance, const LineSearchOptions& line) {
  return run_heuristic(instance, ro2_candidate, "ro2", line, 1, false);
}

SolveResult ro3(const Instance& instance, const LineSearchOptions& line) {
  return run_heuristic(instance, ro3_candidate, "ro3", line, 1, false);
}

SolveResult grid_oracle_raop(const Instance& instance, std::size_t per_axis,
                             const LineSearchOptions& line) {
  const auto start = Clock::now();
  check_grid(instance, per_axis);
  const std::size_t n = instance.n();
  std::vector<std::vector<double>> axes(n);
  for (std::size_t i = 0; i < n; ++i) axes[i] = axis_levels(instance.domain()[i], per_axis);
  // odometer over all grid points, first coordinate fastest
  std::vector<std::size_t> digit(n, 0);
  RefinementVector x(n);
  Candidate best{RefinementVector(n, 0.0), -1.0};
  while (true) {
    for (std::size_t i = 0; i < n; ++i) x[i] = axes[i][digit[i]];
    const double value = expected_revenue(instance, x);
    if (value > best.value) best = {x, value};
    std::size_t i = 0;
    while (i < n && ++digit[i] == axes[i].size()) digit[i++] = 0;
    if (i == n) break;
  }
  best = polish(instance, std::move(best), line, false);
  return make_result(instance, project_to_domain(best.x, instance.domain()), "grid", start);
}

}  // namespace reference

const std::vector<std::string>& solver_names() {
  static const std::vector<std::string> names{"ro", "ro1", "ro2", "ro3", "enum", "grid", "sacp"};
  return names;
}

bool is_solver_name(std::string_view name) {
  const auto& names = solver_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

SolveResult solve_by_name(const Instance& instance, std::string_view name,
                          const SolverOptions& options) {
  if (name == "ro") return revenue_ordered(instance);
  if (name == "ro1") return ro1(instance, options.heuristic);
  if (name == "ro2") return ro2(instance, options.heuristic);
  if (name == "ro3") return ro3(instance, options.heuristic);
  if (name == "enum") {
    return enumerate_taop(instance, {options.enum_cap, options.heuristic.threads});
  }
  if (name == "grid") return grid_oracle_raop(instance, options.grid_per_axis, options.heuristic);
  if (name == "sacp") {
    return solve_sacp(instance, SACPSchedule::from_domain(instance.domain()),
                      options.heuristic.threads)
        .result;
  }
  throw Error("unknown solver name: " + std::string(name));
}

}  // namespace raop
