#pragma once

// Shared domain types for refined assortment optimization: refinement
// domains, refinement vectors, choice probabilities and solver results.

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace raop {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInstance : public Error {
 public:
  using Error::Error;
};

class InvalidRefinement : public Error {
 public:
  using Error::Error;
};

class SizeLimit : public Error {
 public:
  using Error::Error;
};

class InvalidRatio : public Error {
 public:
  using Error::Error;
};

// x in [0,1]^n. x_i = 0 removes product i, x_i = 1 offers it unmodified.
using RefinementVector = std::vector<double>;
// Unit profit contributions, r_i >= 0.
using RevenueVector = std::vector<double>;

struct Binary {};
struct FullInterval {};
// Sorted admissible levels; always contains 0 and 1.
struct FiniteSet {
  std::vector<double> values;
};

using DomainSpec = std::variant<Binary, FullInterval, FiniteSet>;

FiniteSet make_finite_set(std::vector<double> values);
bool domain_contains(const DomainSpec& spec, double value, double tol = 1e-12);
double nearest_admissible(const DomainSpec& spec, double value);
// Candidate levels of a discrete spec; empty for FullInterval.
std::vector<double> discrete_levels(const DomainSpec& spec);

class RefinementDomain {
 public:
  RefinementDomain() = default;
  explicit RefinementDomain(std::vector<DomainSpec> per_product);

  static RefinementDomain binary(std::size_t n);
  static RefinementDomain full(std::size_t n);

  std::size_t size() const { return per_product_.size(); }
  const DomainSpec& operator[](std::size_t i) const { return per_product_[i]; }
  const std::vector<DomainSpec>& per_product() const { return per_product_; }

  bool contains(std::span<const double> x, double tol = 1e-12) const;
  bool all_binary() const;

 private:
  std::vector<DomainSpec> per_product_;
};

// Throws InvalidRefinement unless every coordinate lies in [0,1].
void check_refinement(std::span<const double> x, std::size_t expected_size);

// Maps each coordinate to the nearest admissible level; ties go up.
RefinementVector project_to_domain(std::span<const double> x, const RefinementDomain& domain);

// nullopt is the "excluded" utility of a product with x_i = 0.
using RefinedUtility = std::optional<double>;

std::vector<RefinedUtility> refine_utilities(std::span<const double> u,
                                             std::span<const double> x);

// Product indices sorted by decreasing revenue, ties by original index.
std::vector<std::size_t> revenue_order(std::span<const double> r);

// e^k in the revenue order: the k highest-revenue products offered in full.
RefinementVector revenue_ordered_set(std::span<const std::size_t> order, std::size_t k);

struct ChoiceProbabilities {
  std::vector<double> product;
  double no_purchase = 1.0;

  double total() const;
};

struct SolveResult {
  RefinementVector x;
  double revenue = 0.0;
  ChoiceProbabilities probabilities;
  std::string solver;
  double elapsed_seconds = 0.0;
};

}  // namespace raop
