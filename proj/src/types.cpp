#include "raop/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace raop {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

FiniteSet make_finite_set(std::vector<double> values) {
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw InvalidInstance("finite refinement level outside [0,1]");
    }
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  if (values.empty() || values.front() != 0.0 || values.back() != 1.0) {
    throw InvalidInstance("finite refinement set must contain both 0 and 1");
  }
  return FiniteSet{std::move(values)};
}

bool domain_contains(const DomainSpec& spec, double value, double tol) {
  return std::visit(
      Overloaded{
          [&](const Binary&) { return std::abs(value) <= tol || std::abs(value - 1.0) <= tol; },
          [&](const FullInterval&) { return value >= -tol && value <= 1.0 + tol; },
          [&](const FiniteSet& s) {
            return std::any_of(s.values.begin(), s.values.end(),
                               [&](double v) { return std::abs(v - value) <= tol; });
          }},
      spec);
}

double nearest_admissible(const DomainSpec& spec, double value) {
  return std::visit(Overloaded{[&](const Binary&) { return value >= 0.5 ? 1.0 : 0.0; },
                               [&](const FullInterval&) { return std::clamp(value, 0.0, 1.0); },
                               [&](const FiniteSet& s) {
                                 double best = s.values.front();
                                 double best_dist = std::abs(best - value);
                                 for (double v : s.values) {
                                   const double d = std::abs(v - value);
                                   // values are ascending, so <= prefers the larger level on ties
                                   if (d <= best_dist) {
                                     best = v;
                                     best_dist = d;
                                   }
                                 }
                                 return best;
                               }},
                    spec);
}

std::vector<double> discrete_levels(const DomainSpec& spec) {
  return std::visit(Overloaded{[](const Binary&) { return std::vector<double>{0.0, 1.0}; },
                               [](const FullInterval&) { return std::vector<double>{}; },
                               [](const FiniteSet& s) { return s.values; }},
                    spec);
}

RefinementDomain::RefinementDomain(std::vector<DomainSpec> per_product)
    : per_product_(std::move(per_product)) {
  for (auto& spec : per_product_) {
    if (auto* s = std::get_if<FiniteSet>(&spec)) {
      *s = make_finite_set(std::move(s->values));
    }
  }
}

RefinementDomain RefinementDomain::binary(std::size_t n) {
  return RefinementDomain(std::vector<DomainSpec>(n, Binary{}));
}

RefinementDomain RefinementDomain::full(std::size_t n) {
  return RefinementDomain(std::vector<DomainSpec>(n, FullInterval{}));
}

bool RefinementDomain::contains(std::span<const double> x, double tol) const {
  if (x.size() != per_product_.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!domain_contains(per_product_[i], x[i], tol)) return false;
  }
  return true;
}

bool RefinementDomain::all_binary() const {
  return std::all_of(per_product_.begin(), per_product_.end(), [](const DomainSpec& s) {
    return std::holds_alternative<Binary>(s) ||
           (std::holds_alternative<FiniteSet>(s) && std::get<FiniteSet>(s).values.size() == 2);
  });
}

void check_refinement(std::span<const double> x, std::size_t expected_size) {
  if (x.size() != expected_size) {
    std::ostringstream msg;
    msg << "refinement has " << x.size() << " coordinates, instance has " << expected_size;
    throw InvalidRefinement(msg.str());
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= 0.0 && x[i] <= 1.0)) {
      std::ostringstream msg;
      msg << "refinement coordinate " << i << " = " << x[i] << " outside [0,1]";
      throw InvalidRefinement(msg.str());
    }
  }
}

RefinementVector project_to_domain(std::span<const double> x, const RefinementDomain& domain) {
  if (x.size() != domain.size()) {
    throw InvalidInstance("project_to_domain: dimension mismatch");
  }
  RefinementVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = nearest_admissible(domain[i], x[i]);
  return out;
}

std::vector<RefinedUtility> refine_utilities(std::span<const double> u,
                                             std::span<const double> x) {
  if (u.size() != x.size()) {
    throw InvalidInstance("refine_utilities: utility and refinement sizes differ");
  }
  check_refinement(x, u.size());
  std::vector<RefinedUtility> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (x[i] > 0.0) out[i] = u[i] + std::log(x[i]);
  }
  return out;
}

std::vector<std::size_t> revenue_order(std::span<const double> r) {
  std::vector<std::size_t> order(r.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return r[a] > r[b]; });
  return order;
}

RefinementVector revenue_ordered_set(std::span<const std::size_t> order, std::size_t k) {
  RefinementVector x(order.size(), 0.0);
  for (std::size_t i = 0; i < k && i < order.size(); ++i) x[order[i]] = 1.0;
  return x;
}

double ChoiceProbabilities::total() const {
  return std::accumulate(product.begin(), product.end(), no_purchase);
}

}  // namespace raop
