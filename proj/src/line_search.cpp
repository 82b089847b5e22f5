#include "raop/line_search.hpp"

namespace raop {

LineObjective::LineObjective(const Instance& instance, const LineProblem& problem)
    : instance_(&instance), free_(problem.free) {
  if (problem.base.size() != instance.n() || problem.free >= instance.n()) {
    throw InvalidRefinement("line problem does not match the instance");
  }
  const LCMNLModel* model = instance.linear_lcmnl();
  if (model == nullptr) {
    scratch_ = problem.base;
    return;
  }
  fast_ = true;
  const auto& r = instance.r();
  const std::size_t m = model->num_segments();
  theta_ = model->theta;
  fixed_num_.assign(m, 0.0);
  fixed_den_.assign(m, 0.0);
  free_num_.assign(m, 0.0);
  free_den_.assign(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    const auto& seg = model->segments[j];
    double num = 0.0;
    double den = seg.v0;
    for (std::size_t i = 0; i < instance.n(); ++i) {
      if (i == free_ || problem.base[i] <= 0.0) continue;
      num += r[i] * seg.v[i] * problem.base[i];
      den += seg.v[i] * problem.base[i];
    }
    fixed_num_[j] = num;
    fixed_den_[j] = den;
    free_num_[j] = r[free_] * seg.v[free_];
    free_den_[j] = seg.v[free_];
  }
}

double LineObjective::operator()(double t) const {
  if (!fast_) {
    scratch_[free_] = t;
    return expected_revenue(*instance_, scratch_);
  }
  double total = 0.0;
  for (std::size_t j = 0; j < theta_.size(); ++j) {
    total += theta_[j] * (fixed_num_[j] + free_num_[j] * t) / (fixed_den_[j] + free_den_[j] * t);
  }
  return total;
}

LineMaximum line_maximize(const Instance& instance, const LineProblem& problem,
                          const LineSearchOptions& options) {
  const LineObjective objective(instance, problem);
  return line_maximize(objective, instance.domain()[problem.free], options);
}

}  // namespace raop
