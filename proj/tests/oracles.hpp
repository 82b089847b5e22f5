#pragma once

// Independent reference computations used as test oracles. Nothing here
// calls into the library's evaluation code.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

struct Segment {
  double v0;
  std::vector<double> v;
};

// p_i = v_i x_i / (v0 + sum_k v_k x_k), written out directly.
inline std::vector<double> mnl_probs(const Segment& s, const std::vector<double>& x) {
  double den = s.v0;
  for (std::size_t i = 0; i < x.size(); ++i) den += s.v[i] * x[i];
  std::vector<double> p(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) p[i] = s.v[i] * x[i] / den;
  return p;
}

inline double lcmnl_revenue(const std::vector<Segment>& segs, const std::vector<double>& theta,
                            const std::vector<double>& r, const std::vector<double>& x) {
  double total = 0.0;
  for (std::size_t j = 0; j < segs.size(); ++j) {
    const auto p = mnl_probs(segs[j], x);
    for (std::size_t i = 0; i < r.size(); ++i) total += theta[j] * r[i] * p[i];
  }
  return total;
}

// Best binary vector by exhaustive search, ties to the first mask found.
struct BinaryBest {
  std::uint64_t mask = 0;
  double value = 0.0;
};
inline BinaryBest best_subset(std::size_t n,
                              const std::function<double(const std::vector<double>&)>& f) {
  BinaryBest best{0, f(std::vector<double>(n, 0.0))};
  std::vector<double> x(n);
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    for (std::size_t i = 0; i < n; ++i) x[i] = (mask >> i) & 1 ? 1.0 : 0.0;
    const double v = f(x);
    if (v > best.value) best = {mask, v};
  }
  return best;
}

// RCS probabilities by summing over all 2^n consideration sets. Preference
// rank[i]: larger is more preferred. Attention lambda_i * x_i.
inline std::vector<double> rcs_probs(const std::vector<double>& lambda,
                                     const std::vector<std::size_t>& rank,
                                     const std::vector<double>& x) {
  const std::size_t n = lambda.size();
  std::vector<double> p(n, 0.0);
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << n); ++c) {
    double prob = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double a = lambda[i] * x[i];
      prob *= (c >> i) & 1 ? a : 1.0 - a;
    }
    if (prob == 0.0) continue;
    long best = -1;
    for (std::size_t i = 0; i < n; ++i) {
      if ((c >> i) & 1 && (best < 0 || rank[i] > rank[static_cast<std::size_t>(best)])) {
        best = static_cast<long>(i);
      }
    }
    if (best >= 0) p[static_cast<std::size_t>(best)] += prob;
  }
  return p;
}

inline std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double lo,
                                         double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (auto& e : v) e = d(rng);
  return v;
}

}  // namespace oracle
