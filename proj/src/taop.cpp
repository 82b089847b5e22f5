#include "raop/taop.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "raop/parallel.hpp"

namespace raop {

namespace {

struct Incumbent {
  double revenue = -1.0;
  std::uint64_t mask = 0;

  // Ties within a relative 1e-12 go to the smaller mask.
  void offer(double value, std::uint64_t candidate) {
    const double tol = 1e-12 * std::max(1.0, std::abs(revenue));
    if (value > revenue + tol || (std::abs(value - revenue) <= tol && candidate < mask)) {
      revenue = value;
      mask = candidate;
    }
  }
};

void check_cap(std::size_t n, std::size_t cap) {
  if (n > cap || n > 62) {
    std::ostringstream msg;
    msg << "enumeration over " << n << " products exceeds the cap of " << cap;
    throw SizeLimit(msg.str());
  }
}

constexpr std::uint64_t gray(std::uint64_t g) { return g ^ (g >> 1); }

// Fixed chunking of the Gray sequence; independent of the thread count.
constexpr int kChunkBits = 12;

Incumbent enumerate_lcmnl_chunks(const LCMNLModel& model, std::span<const double> r, int threads) {
  const std::size_t n = model.num_products();
  const std::size_t m = model.num_segments();
  const std::uint64_t total = std::uint64_t{1} << n;
  const std::uint64_t chunk = std::min<std::uint64_t>(total, std::uint64_t{1} << kChunkBits);
  const auto chunks = static_cast<std::int64_t>(total / chunk);

  // weighted numerator and denominator contributions, column-major by product
  std::vector<double> rv(n * m), v(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      v[i * m + j] = model.segments[j].v[i];
      rv[i * m + j] = r[i] * model.segments[j].v[i];
    }
  }

  std::vector<Incumbent> best(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::int64_t c = 0; c < chunks; ++c) {
    std::vector<double> num(m, 0.0), den(m);
    const std::uint64_t first = static_cast<std::uint64_t>(c) * chunk;
    std::uint64_t mask = gray(first);
    for (std::size_t j = 0; j < m; ++j) den[j] = model.segments[j].v0;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1U) {
        for (std::size_t j = 0; j < m; ++j) {
          num[j] += rv[i * m + j];
          den[j] += v[i * m + j];
        }
      }
    }
    Incumbent local;
    for (std::uint64_t g = first; g < first + chunk; ++g) {
      double value = 0.0;
      for (std::size_t j = 0; j < m; ++j) value += model.theta[j] * num[j] / den[j];
      local.offer(value, mask);
      if (g + 1 == first + chunk) break;
      const auto bit = static_cast<std::size_t>(std::countr_zero(g + 1));
      mask ^= std::uint64_t{1} << bit;
      const double sign = ((mask >> bit) & 1U) ? 1.0 : -1.0;
      for (std::size_t j = 0; j < m; ++j) {
        num[j] += sign * rv[bit * m + j];
        den[j] += sign * v[bit * m + j];
      }
    }
    best[static_cast<std::size_t>(c)] = local;
  }
  Incumbent merged;
  for (const auto& b : best) merged.offer(b.revenue, b.mask);
  return merged;
}

Incumbent enumerate_generic_chunks(const Instance& instance, int threads) {
  const std::size_t n = instance.n();
  const std::uint64_t total = std::uint64_t{1} << n;
  const std::uint64_t chunk = std::min<std::uint64_t>(total, std::uint64_t{1} << kChunkBits);
  const auto chunks = static_cast<std::int64_t>(total / chunk);
  std::vector<Incumbent> best(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::int64_t c = 0; c < chunks; ++c) {
    RefinementVector x(n);
    Incumbent local;
    const std::uint64_t first = static_cast<std::uint64_t>(c) * chunk;
    for (std::uint64_t mask = first; mask < first + chunk; ++mask) {
      for (std::size_t i = 0; i < n; ++i) x[i] = (mask >> i) & 1U ? 1.0 : 0.0;
      local.offer(expected_revenue(instance, x), mask);
    }
    best[static_cast<std::size_t>(c)] = local;
  }
  Incumbent merged;
  for (const auto& b : best) merged.offer(b.revenue, b.mask);
  return merged;
}

}  // namespace

RefinementVector AssortmentSubset::to_refinement(std::size_t n) const {
  RefinementVector x(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) x[i] = (mask >> i) & 1U ? 1.0 : 0.0;
  return x;
}

AssortmentSubset AssortmentSubset::from_refinement(std::span<const double> x) {
  AssortmentSubset s;
  for (std::size_t i = 0; i < x.size() && i < 64; ++i) {
    if (x[i] > 0.0) s.mask |= std::uint64_t{1} << i;
  }
  return s;
}

SolveResult enumerate_taop(const Instance& instance, const EnumerationOptions& options) {
  const auto start = Clock::now();
  const std::size_t n = instance.n();
  check_cap(n, options.cap);
  const int threads = resolve_threads(options.threads);
  const Incumbent best = instance.linear_lcmnl()
                             ? enumerate_lcmnl_chunks(*instance.linear_lcmnl(), instance.r(), threads)
                             : enumerate_generic_chunks(instance, threads);
  return make_result(instance, AssortmentSubset{best.mask}.to_refinement(n), "enum", start);
}

SolveResult revenue_ordered(const Instance& instance) {
  const auto start = Clock::now();
  const auto order = revenue_order(instance.r());
  std::size_t best_k = 0;
  double best = 0.0;
  for (std::size_t k = 1; k <= instance.n(); ++k) {
    const double value = expected_revenue(instance, revenue_ordered_set(order, k));
    if (value > best) {
      best = value;
      best_k = k;
    }
  }
  return make_result(instance, revenue_ordered_set(order, best_k), "ro", start);
}

SolveResult mnl_segment_optimum(const MNLSegment& segment, std::span<const double> r) {
  const auto start = Clock::now();
  const std::size_t n = segment.v.size();
  if (r.size() != n) throw InvalidInstance("segment and revenue sizes differ");
  const auto order = revenue_order(r);
  double num = 0.0;
  double den = segment.v0;
  double best = 0.0;
  std::size_t best_k = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t i = order[k - 1];
    num += r[i] * segment.v[i];
    den += segment.v[i];
    if (num / den > best) {
      best = num / den;
      best_k = k;
    }
  }
  SolveResult res;
  res.x = revenue_ordered_set(order, best_k);
  res.probabilities = mnl_probabilities(segment, res.x);
  res.revenue = std::inner_product(r.begin(), r.end(), res.probabilities.product.begin(), 0.0);
  res.solver = "mnl_ro";
  res.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return res;
}

namespace reference {

SolveResult enumerate_taop(const Instance& instance, std::size_t cap) {
  const auto start = Clock::now();
  const std::size_t n = instance.n();
  check_cap(n, cap);
  RefinementVector x(n);
  Incumbent best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    for (std::size_t i = 0; i < n; ++i) x[i] = (mask >> i) & 1U ? 1.0 : 0.0;
    best.offer(expected_revenue(instance, x), mask);
  }
  return make_result(instance, AssortmentSubset{best.mask}.to_refinement(n), "enum", start);
}

}  // namespace reference

}  // namespace raop
