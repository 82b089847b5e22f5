#include "raop/instance.hpp"

#include <cmath>
#include <numeric>

namespace raop {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::size_t model_products(const ChoiceModelSpec& model) {
  return std::visit([](const auto& m) { return m.num_products(); }, model);
}

}  // namespace

Instance::Instance(RevenueVector r, RefinementDomain domain, ChoiceModelSpec model,
                   nlohmann::json metadata)
    : r_(std::move(r)),
      domain_(std::move(domain)),
      model_(std::move(model)),
      metadata_(std::move(metadata)) {
  for (double v : r_) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidInstance("revenues must be finite and >= 0");
  }
  if (domain_.size() != r_.size()) throw InvalidInstance("domain size differs from revenue count");
  std::visit([](const auto& m) { m.validate(); }, model_);
  if (model_products(model_) != r_.size()) {
    throw InvalidInstance("choice model dimension differs from revenue count");
  }
  if (const auto* m = std::get_if<LCMNLModel>(&model_)) {
    linear_ = *m;
  } else if (const auto* lm = std::get_if<LogLCMNLModel>(&model_)) {
    linear_ = to_linear_scale(*lm);
  }
}

std::size_t Instance::num_segments() const {
  return std::visit(Overloaded{[](const LCMNLModel& m) { return m.num_segments(); },
                               [](const LogLCMNLModel& m) { return m.num_segments(); },
                               [](const RCSModel&) { return std::size_t{1}; }},
                    model_);
}

Instance Instance::with_domain(RefinementDomain domain) const {
  return Instance(r_, std::move(domain), model_, metadata_);
}

ChoiceProbabilities choice_probabilities(const Instance& instance, std::span<const double> x) {
  check_refinement(x, instance.n());
  if (const auto* lin = instance.linear_lcmnl()) return lcmnl_probabilities(*lin, x);
  return std::visit(
      Overloaded{[&](const LCMNLModel& m) { return lcmnl_probabilities(m, x); },
                 [&](const LogLCMNLModel& m) { return lcmnl_probabilities_logspace(m, x); },
                 [&](const RCSModel& m) { return rcs_probabilities(m, x); }},
      instance.model());
}

double expected_revenue(const Instance& instance, std::span<const double> x) {
  check_refinement(x, instance.n());
  if (const auto* lin = instance.linear_lcmnl()) return lcmnl_revenue(*lin, instance.r(), x);
  return std::visit(
      Overloaded{
          [&](const LCMNLModel& m) { return lcmnl_revenue(m, instance.r(), x); },
          [&](const LogLCMNLModel& m) { return lcmnl_revenue_logspace(m, instance.r(), x); },
          [&](const RCSModel& m) { return rcs_revenue(m, instance.r(), x); }},
      instance.model());
}

SolveResult make_result(const Instance& instance, RefinementVector x, std::string solver,
                        Clock::time_point start) {
  SolveResult res;
  res.probabilities = choice_probabilities(instance, x);
  res.revenue = std::inner_product(instance.r().begin(), instance.r().end(),
                                   res.probabilities.product.begin(), 0.0);
  res.x = std::move(x);
  res.solver = std::move(solver);
  res.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return res;
}

}  // namespace raop
