#include "raop/sacp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>

#include "raop/parallel.hpp"

namespace raop {

SACPSchedule SACPSchedule::from_period_utilities(
    const std::vector<std::vector<double>>& utilities) {
  SACPSchedule s;
  for (const auto& u : utilities) {
    if (u.empty()) throw InvalidInstance("every product needs at least one period");
    std::vector<double> lv(u.size());
    for (std::size_t t = 0; t < u.size(); ++t) lv[t] = std::exp(u[t] - u[0]);
    s.levels.push_back(std::move(lv));
  }
  s.validate();
  return s;
}

SACPSchedule SACPSchedule::from_domain(const RefinementDomain& domain) {
  SACPSchedule s;
  for (const auto& spec : domain.per_product()) {
    auto lv = discrete_levels(spec);
    if (lv.empty()) throw InvalidInstance("SACP needs a finite refinement domain");
    lv.erase(std::remove(lv.begin(), lv.end(), 0.0), lv.end());
    std::reverse(lv.begin(), lv.end());
    s.levels.push_back(std::move(lv));
  }
  s.validate();
  return s;
}

std::vector<double> SACPSchedule::menu(std::size_t i) const {
  std::vector<double> out{0.0};
  out.insert(out.end(), levels[i].rbegin(), levels[i].rend());
  return out;
}

void SACPSchedule::validate() const {
  for (const auto& lv : levels) {
    if (lv.empty() || lv.front() != 1.0) {
      throw InvalidInstance("each SACP level list must start at 1 (first period)");
    }
    for (std::size_t t = 1; t < lv.size(); ++t) {
      if (!(lv[t] < lv[t - 1] && lv[t] > 0.0)) {
        throw InvalidInstance("SACP levels must be positive and strictly decreasing in the period");
      }
    }
  }
}

namespace {

template <class Revenue>
SACPSolution enumerate_menus(std::size_t n, const SACPSchedule& schedule, Revenue&& revenue,
                             int threads) {
  schedule.validate();
  if (schedule.num_products() != n) throw InvalidInstance("SACP schedule size differs from n");
  std::vector<std::vector<double>> menus(n);
  double combos = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    menus[i] = schedule.menu(i);
    combos *= static_cast<double>(menus[i].size());
  }
  if (combos > kSacpMaxCombinations) {
    std::ostringstream msg;
    msg << "SACP menu product has " << combos << " combinations (limit 1e7)";
    throw SizeLimit(msg.str());
  }
  const auto total = static_cast<std::int64_t>(combos);
  // flat index: product n-1 varies fastest, so smaller index = lexicographically smaller
  auto decode = [&](std::int64_t flat, std::vector<std::size_t>& digit) {
    for (std::size_t i = n; i-- > 0;) {
      const auto base = static_cast<std::int64_t>(menus[i].size());
      digit[i] = static_cast<std::size_t>(flat % base);
      flat /= base;
    }
  };

  constexpr std::int64_t kChunk = 4096;
  const std::int64_t chunks = (total + kChunk - 1) / kChunk;
  std::vector<std::pair<double, std::int64_t>> best(static_cast<std::size_t>(chunks),
                                                    {-1.0, 0});
#pragma omp parallel for schedule(dynamic) num_threads(resolve_threads(threads))
  for (std::int64_t c = 0; c < chunks; ++c) {
    std::vector<std::size_t> digit(n);
    RefinementVector x(n);
    std::pair<double, std::int64_t> local{-1.0, 0};
    const std::int64_t first = c * kChunk;
    const std::int64_t last = std::min(total, first + kChunk);
    decode(first, digit);
    for (std::int64_t flat = first; flat < last; ++flat) {
      for (std::size_t i = 0; i < n; ++i) x[i] = menus[i][digit[i]];
      const double value = revenue(x);
      if (value > local.first) local = {value, flat};
      for (std::size_t i = n; i-- > 0;) {
        if (++digit[i] < menus[i].size()) break;
        digit[i] = 0;
      }
    }
    best[static_cast<std::size_t>(c)] = local;
  }
  std::pair<double, std::int64_t> winner{-1.0, 0};
  for (const auto& b : best) {
    if (b.first > winner.first) winner = b;
  }

  SACPSolution sol;
  std::vector<std::size_t> digit(n);
  decode(winner.second, digit);
  sol.result.x.resize(n);
  sol.period.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    sol.result.x[i] = menus[i][digit[i]];
    if (digit[i] > 0) sol.period[i] = menus[i].size() - 1 - digit[i];
  }
  return sol;
}

}  // namespace

SACPSolution solve_sacp(std::span<const double> r, const ChoiceFunction& choice,
                        const SACPSchedule& schedule, int threads) {
  const auto start = Clock::now();
  auto revenue = [&](std::span<const double> x) {
    const auto p = choice(x);
    return std::inner_product(r.begin(), r.end(), p.product.begin(), 0.0);
  };
  auto sol = enumerate_menus(r.size(), schedule, revenue, threads);
  sol.result.probabilities = choice(sol.result.x);
  sol.result.revenue =
      std::inner_product(r.begin(), r.end(), sol.result.probabilities.product.begin(), 0.0);
  sol.result.solver = "sacp";
  sol.result.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return sol;
}

SACPSolution solve_sacp(const Instance& instance, const SACPSchedule& schedule, int threads) {
  const auto start = Clock::now();
  auto revenue = [&](std::span<const double> x) { return expected_revenue(instance, x); };
  auto sol = enumerate_menus(instance.n(), schedule, revenue, threads);
  auto period = std::move(sol.period);
  sol.result = make_result(instance, std::move(sol.result.x), "sacp", start);
  sol.period = std::move(period);
  return sol;
}

}  // namespace raop
