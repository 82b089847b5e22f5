#include "raop/instance_gen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "raop/taop.hpp"

namespace raop {

namespace {

template <class Enum>
struct NamedValue {
  Enum value;
  const char* name;
};

constexpr NamedValue<PriceDist> kDistNames[] = {{PriceDist::Uniform, "uniform"},
                                                {PriceDist::Normal, "normal"},
                                                {PriceDist::Multimodal, "multimodal"},
                                                {PriceDist::Exponential, "exponential"},
                                                {PriceDist::SkewNormal, "skewnormal"}};

constexpr NamedValue<Alignment> kAlignmentNames[] = {
    {Alignment::Random, "random"}, {Alignment::Aligned, "aligned"}, {Alignment::Anti, "anti"}};

}  // namespace

std::string to_string(PriceDist dist) {
  for (const auto& [value, name] : kDistNames) {
    if (value == dist) return name;
  }
  return "unknown";
}

std::string to_string(Alignment alignment) {
  for (const auto& [value, name] : kAlignmentNames) {
    if (value == alignment) return name;
  }
  return "unknown";
}

PriceDist price_dist_from_string(const std::string& name) {
  for (const auto& [value, label] : kDistNames) {
    if (name == label) return value;
  }
  throw Error("unknown price distribution '" + name + "'");
}

Alignment alignment_from_string(const std::string& name) {
  for (const auto& [value, label] : kAlignmentNames) {
    if (name == label) return value;
  }
  throw Error("unknown alignment mode '" + name + "'");
}

const std::vector<PriceDist>& all_price_dists() {
  static const std::vector<PriceDist> all{PriceDist::Uniform, PriceDist::Normal,
                                          PriceDist::Multimodal, PriceDist::Exponential,
                                          PriceDist::SkewNormal};
  return all;
}

const std::vector<Alignment>& all_alignments() {
  static const std::vector<Alignment> all{Alignment::Random, Alignment::Aligned, Alignment::Anti};
  return all;
}

double sample_price(PriceDist dist, std::mt19937_64& rng) {
  switch (dist) {
    case PriceDist::Uniform:
      return std::uniform_real_distribution<double>(1.0, 10.0)(rng);
    case PriceDist::Normal:
      return std::normal_distribution<double>(50.0, 10.0)(rng);
    case PriceDist::Multimodal: {
      const bool high = std::bernoulli_distribution(0.5)(rng);
      return std::normal_distribution<double>(high ? kMixtureHighMean : kMixtureLowMean,
                                              kMixtureSd)(rng);
    }
    case PriceDist::Exponential:
      return std::exponential_distribution<double>(1.0)(rng);
    case PriceDist::SkewNormal: {
      // delta |U| + sqrt(1 - delta^2) V with U, V standard normal
      const double delta = kSkewShape / std::sqrt(1.0 + kSkewShape * kSkewShape);
      std::normal_distribution<double> z(0.0, 1.0);
      const double u = z(rng);
      const double v = z(rng);
      return delta * std::abs(u) + std::sqrt(1.0 - delta * delta) * v;
    }
  }
  throw Error("unhandled price distribution");
}

void GeneratorConfig::validate() const {
  if (n == 0 || m == 0) throw InvalidInstance("generator needs n >= 1 and m >= 1");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw InvalidInstance("epsilon must lie in (0, 1]");
  if (!(alpha_target > 0.0 && alpha_target < 1.0)) {
    throw InvalidInstance("alpha_target must lie in (0, 1)");
  }
}

nlohmann::json generator_config_to_json(const GeneratorConfig& c) {
  return {{"n", c.n},
          {"m", c.m},
          {"epsilon", c.epsilon},
          {"price_dist", to_string(c.price_dist)},
          {"alpha_target", c.alpha_target},
          {"alignment", to_string(c.alignment)},
          {"seed", c.seed}};
}

GeneratorConfig generator_config_from_json(const nlohmann::json& j) {
  GeneratorConfig c;
  c.n = j.value("n", c.n);
  c.m = j.value("m", c.m);
  c.epsilon = j.value("epsilon", c.epsilon);
  c.price_dist = price_dist_from_string(j.value("price_dist", to_string(c.price_dist)));
  c.alpha_target = j.value("alpha_target", c.alpha_target);
  c.alignment = alignment_from_string(j.value("alignment", to_string(c.alignment)));
  c.seed = j.value("seed", c.seed);
  c.validate();
  return c;
}

std::vector<double> rescale_prices(std::vector<double> prices, double alpha) {
  if (prices.empty()) return prices;
  const auto [lo_it, hi_it] = std::minmax_element(prices.begin(), prices.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  const auto lo_idx = static_cast<std::size_t>(lo_it - prices.begin());
  const auto hi_idx = static_cast<std::size_t>(hi_it - prices.begin());
  if (hi == lo) {
    std::fill(prices.begin(), prices.end(), 1.0);
    return prices;
  }
  const double top = 1.0 / alpha;
  for (double& p : prices) p = 1.0 + (p - lo) * (top - 1.0) / (hi - lo);
  prices[lo_idx] = 1.0;
  prices[hi_idx] = top;
  return prices;
}

Instance gen_lcmnl(const GeneratorConfig& config) {
  config.validate();
  const std::size_t n = config.n;
  const std::size_t m = config.m;
  std::mt19937_64 rng(config.seed);

  LCMNLModel model;
  model.theta.assign(m, 1.0 / static_cast<double>(m));
  std::vector<std::size_t> perm(n + 1);
  for (std::size_t j = 0; j < m; ++j) {
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    // perm[position] = item, item 0 is the outside option
    MNLSegment seg;
    seg.v.resize(n);
    for (std::size_t pos = 0; pos <= n; ++pos) {
      const double v = std::pow(config.epsilon, static_cast<double>(pos));
      if (perm[pos] == 0) {
        seg.v0 = v;
      } else {
        seg.v[perm[pos] - 1] = v;
      }
    }
    model.segments.push_back(std::move(seg));
  }
  // normalize theta so the weights sum to 1 within rounding
  const double sum = std::accumulate(model.theta.begin(), model.theta.end(), 0.0);
  model.theta.back() += 1.0 - sum;

  std::vector<double> prices(n);
  for (auto& p : prices) p = sample_price(config.price_dist, rng);
  prices = rescale_prices(std::move(prices), config.alpha_target);

  RevenueVector r = prices;
  if (config.alignment != Alignment::Random) {
    std::vector<double> attraction(n, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        attraction[i] += model.theta[j] * model.segments[j].v[i];
      }
    }
    std::vector<std::size_t> by_attraction(n);
    std::iota(by_attraction.begin(), by_attraction.end(), 0);
    std::stable_sort(by_attraction.begin(), by_attraction.end(),
                     [&](std::size_t a, std::size_t b) { return attraction[a] > attraction[b]; });
    std::sort(prices.begin(), prices.end(), std::greater<>());
    if (config.alignment == Alignment::Anti) std::reverse(prices.begin(), prices.end());
    for (std::size_t k = 0; k < n; ++k) r[by_attraction[k]] = prices[k];
  }

  nlohmann::json meta = {{"generator", "lcmnl"}, {"config", generator_config_to_json(config)}};
  return Instance(std::move(r), RefinementDomain::full(n), std::move(model), std::move(meta));
}

void TightConstructionParams::validate() const {
  if (k == 0 || k > std::min(m, n)) throw InvalidInstance("tight construction needs 1 <= k <= min(m, n)");
  if (!(gamma > 0.0 && gamma < 1.0) || !(eps > 0.0 && eps < 1.0) ||
      !(eps1 > 0.0 && eps1 < 1.0)) {
    throw InvalidInstance("gamma, eps and eps1 must lie in (0, 1)");
  }
}

TightConstruction prop1_instance(const TightConstructionParams& p) {
  p.validate();
  const double log_gamma = std::log(p.gamma);
  const double big_m = 1.0 / p.gamma;
  const double far = big_m * log_gamma;
  if (!std::isfinite(far)) {
    throw InvalidInstance("gamma too small: M ln(gamma) is not representable");
  }
  LogLCMNLModel model;
  model.theta.assign(p.m, 0.0);
  for (std::size_t j = 1; j <= p.k; ++j) {
    const double lead = std::pow(p.eps, static_cast<double>(j - 1));
    model.theta[j - 1] = j < p.k ? lead - lead * p.eps : lead;
  }
  for (std::size_t j = 1; j <= p.m; ++j) {
    LogAttraction seg;
    seg.log_v0 = 3.0 * static_cast<double>(p.n) * log_gamma;
    seg.log_v.resize(p.n);
    for (std::size_t i = 1; i <= p.n; ++i) {
      const double base = static_cast<double>(i) * (1.0 + p.eps1) * log_gamma;
      const double beta =
          j >= i ? static_cast<double>(j - i) * log_gamma : far;
      seg.log_v[i - 1] = base + beta;
    }
    model.segments.push_back(std::move(seg));
  }
  RevenueVector r(p.n);
  for (std::size_t i = 1; i <= p.n; ++i) r[i - 1] = std::pow(p.eps, -static_cast<double>(i - 1));

  std::vector<double> refined(p.n);
  for (std::size_t i = 1; i <= p.n; ++i) {
    const double shift =
        (static_cast<double>(p.n) - static_cast<double>(i) * (1.0 + p.eps1)) * log_gamma;
    refined[i - 1] = std::min(0.0, shift);
  }
  nlohmann::json meta = {{"generator", "tight_lcmnl"},
                         {"k", p.k},
                         {"n", p.n},
                         {"m", p.m},
                         {"gamma", p.gamma},
                         {"eps", p.eps},
                         {"eps1", p.eps1}};
  return {Instance(std::move(r), RefinementDomain::full(p.n), std::move(model), std::move(meta)),
          std::move(refined)};
}

TightEvaluation evaluate_tight_construction(const TightConstruction& c) {
  const auto& model = std::get<LogLCMNLModel>(c.instance.model());
  TightEvaluation e;
  e.binary_optimum = enumerate_taop(c.instance).revenue;
  e.refined_revenue = lcmnl_revenue_log_refined(model, c.instance.r(), c.refined_log_x);
  return e;
}

RCSPair prop2_instance(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidInstance("eps must lie in (0, 1)");
  RCSPair pair;
  pair.original = RCSModel{{eps, 1.0}, {0, 1}};
  pair.reversed = RCSModel{{eps, 1.0}, {1, 0}};
  pair.original.validate();
  pair.reversed.validate();
  pair.r = {1.0 / eps, 1.0};
  return pair;
}

ChoiceProbabilities MaxUtilityToy::probabilities(std::span<const double> x) const {
  check_refinement(x, r.size());
  ChoiceProbabilities p;
  p.product.assign(r.size(), 0.0);
  p.no_purchase = 0.0;
  for (std::size_t t = 0; t < utilities.size(); ++t) {
    const auto refined = refine_utilities(utilities[t], x);
    std::optional<std::size_t> pick;
    double best = 0.0;
    for (std::size_t i = 0; i < refined.size(); ++i) {
      if (refined[i] && *refined[i] > best) {
        best = *refined[i];
        pick = i;
      }
    }
    if (pick) {
      p.product[*pick] += theta[t];
    } else {
      p.no_purchase += theta[t];
    }
  }
  return p;
}

double MaxUtilityToy::revenue(std::span<const double> x) const {
  const auto p = probabilities(x);
  return std::inner_product(r.begin(), r.end(), p.product.begin(), 0.0);
}

double MaxUtilityToy::surplus(std::span<const double> x) const {
  check_refinement(x, r.size());
  double total = 0.0;
  for (std::size_t t = 0; t < utilities.size(); ++t) {
    double best = 0.0;
    for (const auto& u : refine_utilities(utilities[t], x)) {
      if (u) best = std::max(best, *u);
    }
    total += theta[t] * best;
  }
  return total;
}

ChoiceFunction MaxUtilityToy::choice_function() const {
  return [toy = *this](std::span<const double> x) { return toy.probabilities(x); };
}

MaxUtilityToy example1_toy() {
  MaxUtilityToy toy;
  toy.r = {3.5, 1.0};
  toy.theta = {0.3, 0.7};
  toy.utilities = {{1.5, 1.6}, {-1.0, 1.6}};
  toy.domain = RefinementDomain({Binary{}, make_finite_set({0.0, 0.8, 1.0})});
  return toy;
}

Instance example2_instance() {
  LCMNLModel model;
  model.segments = {MNLSegment{1.0, {0.01, 100.0, 0.1}}, MNLSegment{1.0, {100.0, 1000.0, 0.1}}};
  model.theta = {0.5, 0.5};
  return Instance({100.0, 65.0, 58.0}, RefinementDomain({Binary{}, FullInterval{}, Binary{}}),
                  std::move(model), {{"generator", "example2"}});
}

ExampleInstances example_instances() { return {example1_toy(), example2_instance()}; }

}  // namespace raop
