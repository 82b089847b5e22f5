#include "raop/lcmnl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace raop {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_weights(std::span<const double> theta, std::size_t segments) {
  if (theta.size() != segments) {
    throw InvalidInstance("segment weight count differs from segment count");
  }
  double sum = 0.0;
  for (double t : theta) {
    if (!(t >= 0.0)) throw InvalidInstance("segment weights must be nonnegative");
    sum += t;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw InvalidInstance("segment weights must sum to 1");
}

void check_sizes(std::size_t model_n, std::span<const double> x) {
  if (x.size() != model_n) {
    throw InvalidRefinement("refinement dimension does not match the choice model");
  }
}

// log(exp(a_0) + sum exp(a_i)) over finite terms; terms equal to -inf are skipped.
double log_sum_exp(double first, std::span<const double> terms) {
  double hi = first;
  for (double t : terms) hi = std::max(hi, t);
  double sum = std::exp(first - hi);
  for (double t : terms) {
    if (t != kNegInf) sum += std::exp(t - hi);
  }
  return hi + std::log(sum);
}

}  // namespace

void LCMNLModel::validate() const {
  if (segments.empty()) throw InvalidInstance("LC-MNL model has no segments");
  const std::size_t n = num_products();
  for (const auto& seg : segments) {
    if (seg.v.size() != n) throw InvalidInstance("LC-MNL segments have different sizes");
    if (!(seg.v0 > 0.0) || !std::isfinite(seg.v0)) {
      throw InvalidInstance("outside-option attraction must be positive");
    }
    for (double v : seg.v) {
      if (!(v > 0.0) || !std::isfinite(v)) throw InvalidInstance("attractions must be positive");
    }
  }
  check_weights(theta, segments.size());
}

void LogLCMNLModel::validate() const {
  if (segments.empty()) throw InvalidInstance("LC-MNL model has no segments");
  const std::size_t n = num_products();
  for (const auto& seg : segments) {
    if (seg.log_v.size() != n) throw InvalidInstance("LC-MNL segments have different sizes");
    if (!std::isfinite(seg.log_v0)) {
      throw InvalidInstance("outside-option log attraction must be finite");
    }
    for (double lv : seg.log_v) {
      if (std::isnan(lv) || lv == std::numeric_limits<double>::infinity()) {
        throw InvalidInstance("log attractions must be finite or -inf");
      }
    }
  }
  check_weights(theta, segments.size());
}

ChoiceProbabilities mnl_probabilities(const MNLSegment& seg, std::span<const double> x) {
  check_sizes(seg.v.size(), x);
  ChoiceProbabilities p;
  p.product.assign(x.size(), 0.0);
  double denom = seg.v0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0) denom += seg.v[i] * x[i];
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0) p.product[i] = seg.v[i] * x[i] / denom;
  }
  p.no_purchase = seg.v0 / denom;
  return p;
}

double mnl_revenue(const MNLSegment& seg, std::span<const double> r,
                   std::span<const double> x) {
  check_sizes(seg.v.size(), x);
  double num = 0.0;
  double denom = seg.v0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0) {
      const double w = seg.v[i] * x[i];
      num += r[i] * w;
      denom += w;
    }
  }
  return num / denom;
}

ChoiceProbabilities lcmnl_probabilities(const LCMNLModel& model, std::span<const double> x) {
  check_sizes(model.num_products(), x);
  ChoiceProbabilities total;
  total.product.assign(x.size(), 0.0);
  total.no_purchase = 0.0;
  for (std::size_t j = 0; j < model.segments.size(); ++j) {
    const auto p = mnl_probabilities(model.segments[j], x);
    for (std::size_t i = 0; i < x.size(); ++i) total.product[i] += model.theta[j] * p.product[i];
    total.no_purchase += model.theta[j] * p.no_purchase;
  }
  return total;
}

double lcmnl_revenue(const LCMNLModel& model, std::span<const double> r,
                     std::span<const double> x) {
  double total = 0.0;
  for (std::size_t j = 0; j < model.segments.size(); ++j) {
    total += model.theta[j] * mnl_revenue(model.segments[j], r, x);
  }
  return total;
}

std::vector<double> mnl_revenue_gradient_v(const MNLSegment& seg, std::span<const double> r,
                                           std::span<const double> x) {
  const auto p = mnl_probabilities(seg, x);
  const double revenue = std::inner_product(r.begin(), r.end(), p.product.begin(), 0.0);
  std::vector<double> grad(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0) grad[i] = p.product[i] * (r[i] - revenue);
  }
  return grad;
}

namespace {

// Refined log attractions, -inf for excluded products.
std::vector<double> refined_log_terms(const LogAttraction& seg, std::span<const double> log_x) {
  std::vector<double> terms(log_x.size(), kNegInf);
  for (std::size_t i = 0; i < log_x.size(); ++i) {
    if (log_x[i] != kNegInf && seg.log_v[i] != kNegInf) terms[i] = seg.log_v[i] + log_x[i];
  }
  return terms;
}

ChoiceProbabilities log_mnl_probabilities_from_log_x(const LogAttraction& seg,
                                                     std::span<const double> log_x) {
  const auto terms = refined_log_terms(seg, log_x);
  const double log_denom = log_sum_exp(seg.log_v0, terms);
  ChoiceProbabilities p;
  p.product.assign(terms.size(), 0.0);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i] != kNegInf) p.product[i] = std::exp(terms[i] - log_denom);
  }
  p.no_purchase = std::exp(seg.log_v0 - log_denom);
  return p;
}

std::vector<double> log_of(std::span<const double> x) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] > 0.0 ? std::log(x[i]) : kNegInf;
  return out;
}

}  // namespace

ChoiceProbabilities log_mnl_probabilities(const LogAttraction& seg, std::span<const double> x) {
  check_sizes(seg.log_v.size(), x);
  return log_mnl_probabilities_from_log_x(seg, log_of(x));
}

ChoiceProbabilities lcmnl_probabilities_logspace(const LogLCMNLModel& model,
                                                 std::span<const double> x) {
  check_sizes(model.num_products(), x);
  const auto log_x = log_of(x);
  ChoiceProbabilities total;
  total.product.assign(x.size(), 0.0);
  total.no_purchase = 0.0;
  for (std::size_t j = 0; j < model.segments.size(); ++j) {
    const auto p = log_mnl_probabilities_from_log_x(model.segments[j], log_x);
    for (std::size_t i = 0; i < x.size(); ++i) total.product[i] += model.theta[j] * p.product[i];
    total.no_purchase += model.theta[j] * p.no_purchase;
  }
  return total;
}

double lcmnl_revenue_log_refined(const LogLCMNLModel& model, std::span<const double> r,
                                 std::span<const double> log_x) {
  check_sizes(model.num_products(), log_x);
  double total = 0.0;
  for (std::size_t j = 0; j < model.segments.size(); ++j) {
    if (model.theta[j] == 0.0) continue;
    const auto p = log_mnl_probabilities_from_log_x(model.segments[j], log_x);
    total += model.theta[j] * std::inner_product(r.begin(), r.end(), p.product.begin(), 0.0);
  }
  return total;
}

double lcmnl_revenue_logspace(const LogLCMNLModel& model, std::span<const double> r,
                              std::span<const double> x) {
  check_sizes(model.num_products(), x);
  return lcmnl_revenue_log_refined(model, r, log_of(x));
}

LogLCMNLModel to_log_scale(const LCMNLModel& model) {
  LogLCMNLModel out;
  out.theta = model.theta;
  out.segments.reserve(model.segments.size());
  for (const auto& seg : model.segments) {
    LogAttraction la;
    la.log_v0 = std::log(seg.v0);
    la.log_v = log_of(seg.v);
    out.segments.push_back(std::move(la));
  }
  return out;
}

bool needs_log_space(const LogLCMNLModel& model) {
  for (const auto& seg : model.segments) {
    if (std::abs(seg.log_v0) > kLogSpaceThreshold) return true;
    for (double lv : seg.log_v) {
      if (lv != kNegInf && std::abs(lv) > kLogSpaceThreshold) return true;
    }
  }
  return false;
}

std::optional<LCMNLModel> to_linear_scale(const LogLCMNLModel& model) {
  if (needs_log_space(model)) return std::nullopt;
  for (const auto& seg : model.segments) {
    // an excluded product has no positive linear attraction
    if (std::any_of(seg.log_v.begin(), seg.log_v.end(), [](double lv) { return lv == kNegInf; })) {
      return std::nullopt;
    }
  }
  LCMNLModel out;
  out.theta = model.theta;
  for (const auto& seg : model.segments) {
    MNLSegment s;
    s.v0 = std::exp(seg.log_v0);
    s.v.resize(seg.log_v.size());
    std::transform(seg.log_v.begin(), seg.log_v.end(), s.v.begin(),
                   [](double lv) { return std::exp(lv); });
    out.segments.push_back(std::move(s));
  }
  return out;
}

}  // namespace raop
