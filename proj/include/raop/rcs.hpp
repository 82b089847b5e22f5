#pragma once

// Random consideration set model: fixed preference order, product i is
// considered independently with attention probability lambda_i and the
// customer buys the most preferred considered product.

#include <cstddef>
#include <span>
#include <vector>

#include "raop/types.hpp"

namespace raop {

struct RCSModel {
  std::vector<double> lambda;
  // pref[k] is the product at preference position k; later positions are
  // more preferred.
  std::vector<std::size_t> pref;

  std::size_t num_products() const { return lambda.size(); }
  // Throws InvalidInstance unless 0 < lambda_i <= 1 and pref is a permutation.
  void validate() const;
};

// Preference order 0 < 1 < ... < n-1 (last product most preferred).
RCSModel rcs_identity_order(std::vector<double> lambda);

// Choice probabilities for the offered subset, given as membership flags.
ChoiceProbabilities rcs_choice_probabilities(const RCSModel& model,
                                             const std::vector<bool>& offered);

// Refined evaluation: attention becomes lambda_i * x_i, preference order fixed.
// Binary x gives exactly the subset probabilities above.
ChoiceProbabilities rcs_probabilities(const RCSModel& model, std::span<const double> x);
double rcs_revenue(const RCSModel& model, std::span<const double> r, std::span<const double> x);

// H_k = H_{k-1} + lambda_k (r_k - H_{k-1}), H_0 = 0, with r non-decreasing
// and preference following the index. `clamped` applies (.)^+ to the step.
struct BestOrderRevenue {
  std::vector<double> trace;          // H_0 .. H_n
  std::vector<double> clamped_trace;  // same recursion with (r_k - H_{k-1})^+
  double value() const { return trace.back(); }
  double clamped_value() const { return clamped_trace.back(); }
};

BestOrderRevenue best_order_revenue(std::span<const double> lambda, std::span<const double> r);

// G^n_k = G^n_{k-1} + lambda_{n+1-k} (r_{n+1-k} - G^n_{k-1})^+; returns G^n_0 .. G^n_n.
std::vector<double> worst_order_trace(std::span<const double> lambda, std::span<const double> r);
double worst_order_revenue(std::span<const double> lambda, std::span<const double> r);

// f(1) = 0, f(k) = (1 - lambda_k)(lambda_{k-1} + f(k-1)); f_hat is the same
// recursion shifted one index up. Index 0 of each vector holds k = 1.
// f_hat has n - 1 entries since f_hat(n) would need lambda_{n+1}.
struct FSequences {
  std::vector<double> f;
  std::vector<double> f_hat;
};

FSequences f_sequences(std::span<const double> lambda);

// Exact optimum over all subsets under the model's preference order.
SolveResult rcs_optimal_assortment(const RCSModel& model, std::span<const double> r,
                                   std::size_t max_products = 25);

}  // namespace raop
