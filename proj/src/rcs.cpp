#include "raop/rcs.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <sstream>

namespace raop {

void RCSModel::validate() const {
  const std::size_t n = lambda.size();
  for (double l : lambda) {
    if (!(l > 0.0 && l <= 1.0)) throw InvalidInstance("RCS attention probabilities must be in (0,1]");
  }
  if (pref.size() != n) throw InvalidInstance("RCS preference order has the wrong length");
  std::vector<bool> seen(n, false);
  for (std::size_t p : pref) {
    if (p >= n || seen[p]) throw InvalidInstance("RCS preference order is not a permutation");
    seen[p] = true;
  }
}

RCSModel rcs_identity_order(std::vector<double> lambda) {
  RCSModel m;
  m.pref.resize(lambda.size());
  std::iota(m.pref.begin(), m.pref.end(), std::size_t{0});
  m.lambda = std::move(lambda);
  return m;
}

ChoiceProbabilities rcs_probabilities(const RCSModel& model, std::span<const double> x) {
  const std::size_t n = model.num_products();
  if (x.size() != n) throw InvalidRefinement("refinement dimension does not match the RCS model");
  ChoiceProbabilities p;
  p.product.assign(n, 0.0);
  // Walk from most to least preferred; `none_yet` is P(no more-preferred product chosen).
  double none_yet = 1.0;
  for (std::size_t pos = n; pos-- > 0;) {
    const std::size_t i = model.pref[pos];
    const double attention = model.lambda[i] * x[i];
    if (attention > 0.0) {
      p.product[i] = attention * none_yet;
      none_yet *= 1.0 - attention;
    }
  }
  p.no_purchase = none_yet;
  return p;
}

ChoiceProbabilities rcs_choice_probabilities(const RCSModel& model,
                                             const std::vector<bool>& offered) {
  RefinementVector x(offered.size());
  for (std::size_t i = 0; i < offered.size(); ++i) x[i] = offered[i] ? 1.0 : 0.0;
  return rcs_probabilities(model, x);
}

double rcs_revenue(const RCSModel& model, std::span<const double> r, std::span<const double> x) {
  const auto p = rcs_probabilities(model, x);
  return std::inner_product(r.begin(), r.end(), p.product.begin(), 0.0);
}

BestOrderRevenue best_order_revenue(std::span<const double> lambda, std::span<const double> r) {
  if (lambda.size() != r.size()) throw InvalidInstance("lambda and r sizes differ");
  BestOrderRevenue out;
  out.trace.assign(1, 0.0);
  out.clamped_trace.assign(1, 0.0);
  for (std::size_t k = 0; k < lambda.size(); ++k) {
    const double h = out.trace.back();
    const double hc = out.clamped_trace.back();
    out.trace.push_back(h + lambda[k] * (r[k] - h));
    out.clamped_trace.push_back(hc + lambda[k] * std::max(r[k] - hc, 0.0));
  }
  return out;
}

std::vector<double> worst_order_trace(std::span<const double> lambda, std::span<const double> r) {
  if (lambda.size() != r.size()) throw InvalidInstance("lambda and r sizes differ");
  const std::size_t n = lambda.size();
  std::vector<double> g(1, 0.0);
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t i = n - k;  // 0-based index of product n+1-k
    g.push_back(g.back() + lambda[i] * std::max(r[i] - g.back(), 0.0));
  }
  return g;
}

double worst_order_revenue(std::span<const double> lambda, std::span<const double> r) {
  return worst_order_trace(lambda, r).back();
}

FSequences f_sequences(std::span<const double> lambda) {
  const std::size_t n = lambda.size();
  FSequences out;
  if (n == 0) return out;
  out.f.assign(n, 0.0);
  for (std::size_t k = 1; k < n; ++k) {
    out.f[k] = (1.0 - lambda[k]) * (lambda[k - 1] + out.f[k - 1]);
  }
  if (n >= 2) {
    out.f_hat.assign(n - 1, 0.0);
    for (std::size_t k = 1; k + 1 < n; ++k) {
      out.f_hat[k] = (1.0 - lambda[k + 1]) * (lambda[k] + out.f_hat[k - 1]);
    }
  }
  return out;
}

SolveResult rcs_optimal_assortment(const RCSModel& model, std::span<const double> r,
                                   std::size_t max_products) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = model.num_products();
  if (n > max_products || n > 30) {
    std::ostringstream msg;
    msg << "RCS enumeration over " << n << " products exceeds the cap of " << max_products;
    throw SizeLimit(msg.str());
  }
  std::uint64_t best_mask = 0;
  double best = 0.0;
  RefinementVector x(n, 0.0);
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    for (std::size_t i = 0; i < n; ++i) x[i] = (mask >> i) & 1U ? 1.0 : 0.0;
    const double v = rcs_revenue(model, r, x);
    if (v > best + 1e-12 * std::max(1.0, best)) {
      best = v;
      best_mask = mask;
    }
  }
  SolveResult res;
  res.x.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) res.x[i] = (best_mask >> i) & 1U ? 1.0 : 0.0;
  res.probabilities = rcs_probabilities(model, res.x);
  res.revenue = std::inner_product(r.begin(), r.end(), res.probabilities.product.begin(), 0.0);
  res.solver = "rcs_enum";
  res.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

}  // namespace raop
