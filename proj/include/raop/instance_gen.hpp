#pragma once

// Synthetic LC-MNL instances and exact reconstructions of the worked
// examples and tight constructions.

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "raop/instance.hpp"
#include "raop/sacp.hpp"

namespace raop {

enum class PriceDist { Uniform, Normal, Multimodal, Exponential, SkewNormal };
enum class Alignment { Random, Aligned, Anti };

std::string to_string(PriceDist dist);
std::string to_string(Alignment alignment);
PriceDist price_dist_from_string(const std::string& name);
Alignment alignment_from_string(const std::string& name);
const std::vector<PriceDist>& all_price_dists();
const std::vector<Alignment>& all_alignments();

// Fixed sampler parameters: Uniform(1,10), Normal(50,10), an equal mixture
// of Normal(30,5) and Normal(70,5), Exp(1) and a skew-normal with shape 100.
inline constexpr double kMixtureLowMean = 30.0;
inline constexpr double kMixtureHighMean = 70.0;
inline constexpr double kMixtureSd = 5.0;
inline constexpr double kSkewShape = 100.0;

double sample_price(PriceDist dist, std::mt19937_64& rng);

struct GeneratorConfig {
  std::size_t n = 5;
  std::size_t m = 2;
  double epsilon = 0.5;
  PriceDist price_dist = PriceDist::Uniform;
  double alpha_target = 0.1;
  Alignment alignment = Alignment::Random;
  std::uint64_t seed = 0;

  // Throws InvalidInstance unless n, m >= 1, 0 < epsilon <= 1 and
  // 0 < alpha_target < 1.
  void validate() const;
};

nlohmann::json generator_config_to_json(const GeneratorConfig& config);
GeneratorConfig generator_config_from_json(const nlohmann::json& j);

// Segment j draws a permutation of {outside, 1..n}; the item at position p
// gets attraction epsilon^p and the outside item's attraction becomes v0_j.
// Prices are sampled, rescaled affinely onto [1, 1/alpha_target] and then
// assigned to products according to the alignment mode, which ranks
// products by sum_j theta_j v_ij. theta_j = 1/m. Domain is [0,1]^n and the
// metadata records the config.
Instance gen_lcmnl(const GeneratorConfig& config);

// Affine map of `prices` onto [1, 1/alpha]; the extremes are set exactly.
std::vector<double> rescale_prices(std::vector<double> prices, double alpha);

// Tight instance for the LC-MNL gap between refined and binary optima.
struct TightConstructionParams {
  std::size_t k = 3;
  std::size_t n = 3;
  std::size_t m = 3;
  double gamma = 1e-3;
  double eps = 0.05;
  double eps1 = 1e-3;
  void validate() const;
};

struct TightConstruction {
  Instance instance;  // log-scale LC-MNL
  // ln x of the refinement that lifts every product's segment-independent
  // utility component to n ln(gamma); entries are <= 0.
  std::vector<double> refined_log_x;
};

TightConstruction prop1_instance(const TightConstructionParams& params);

struct TightEvaluation {
  double binary_optimum = 0.0;  // exact TAOP optimum by enumeration
  double refined_revenue = 0.0;
  double ratio() const { return refined_revenue / binary_optimum; }
};
TightEvaluation evaluate_tight_construction(const TightConstruction& construction);

// Two-product RCS with lambda = (eps, 1), r = (1/eps, 1); `original` has
// product 2 preferred, `reversed` product 1.
struct RCSPair {
  RCSModel original;
  RCSModel reversed;
  RevenueVector r;
};
RCSPair prop2_instance(double eps);

// Two customer types with deterministic max-utility choice: a type buys the
// offered product with the largest refined utility u_i + ln x_i if it is
// positive (outside option at 0), ties to the lower index.
struct MaxUtilityToy {
  RevenueVector r;
  std::vector<double> theta;
  std::vector<std::vector<double>> utilities;  // utilities[type][product]
  RefinementDomain domain;

  ChoiceProbabilities probabilities(std::span<const double> x) const;
  double revenue(std::span<const double> x) const;
  // Expected consumer surplus: sum over types of theta times the chosen
  // refined utility (0 for no purchase).
  double surplus(std::span<const double> x) const;
  ChoiceFunction choice_function() const;
};

MaxUtilityToy example1_toy();
// Three products, two equal segments with attractions (0.01, 100, 0.1) and
// (100, 1000, 0.1), v0 = 1, r = (100, 65, 58); product 2 may be refined
// continuously, products 1 and 3 are binary.
Instance example2_instance();

struct ExampleInstances {
  MaxUtilityToy example1;
  Instance example2;
};
ExampleInstances example_instances();

}  // namespace raop
