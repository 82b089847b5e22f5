#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>

#include "json.hpp"
#include "raop/lcmnl.hpp"
#include "raop/rcs.hpp"
#include "raop/types.hpp"

namespace raop {

using ChoiceModelSpec = std::variant<LCMNLModel, LogLCMNLModel, RCSModel>;

// Revenues, refinement domain and choice model: the unit of every solver call.
// Immutable after construction and safe to share across threads.
class Instance {
 public:
  Instance(RevenueVector r, RefinementDomain domain, ChoiceModelSpec model,
           nlohmann::json metadata = nlohmann::json::object());

  std::size_t n() const { return r_.size(); }
  const RevenueVector& r() const { return r_; }
  const RefinementDomain& domain() const { return domain_; }
  const ChoiceModelSpec& model() const { return model_; }
  const nlohmann::json& metadata() const { return metadata_; }

  // Linear-scale LC-MNL view when the model is LC-MNL and representable in
  // double precision, nullptr otherwise.
  const LCMNLModel* linear_lcmnl() const { return linear_ ? &*linear_ : nullptr; }
  const RCSModel* rcs() const { return std::get_if<RCSModel>(&model_); }
  bool is_lcmnl() const { return !std::holds_alternative<RCSModel>(model_); }
  std::size_t num_segments() const;

  // Same instance with a different refinement domain.
  Instance with_domain(RefinementDomain domain) const;

 private:
  RevenueVector r_;
  RefinementDomain domain_;
  ChoiceModelSpec model_;
  nlohmann::json metadata_;
  std::optional<LCMNLModel> linear_;
};

ChoiceProbabilities choice_probabilities(const Instance& instance, std::span<const double> x);

// R(x) = sum_i r_i p_i(x). Throws InvalidRefinement outside [0,1]^n.
double expected_revenue(const Instance& instance, std::span<const double> x);

using Clock = std::chrono::steady_clock;

// Fills probabilities and revenue (as dot(r, p)) for a chosen refinement.
SolveResult make_result(const Instance& instance, RefinementVector x, std::string solver,
                        Clock::time_point start);

}  // namespace raop
