#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "raop/bounds.hpp"
#include "raop/heuristics.hpp"
#include "raop/instance_gen.hpp"
#include "raop/taop.hpp"

using namespace raop;

namespace {

Instance random_instance(std::uint64_t seed, std::size_t n, std::size_t m) {
  GeneratorConfig g;
  g.n = n;
  g.m = m;
  g.epsilon = 0.05 + 0.15 * static_cast<double>(seed % 6);
  g.alpha_target = 0.01 + 0.1 * static_cast<double>(seed % 5);
  g.price_dist = all_price_dists()[seed % all_price_dists().size()];
  g.alignment = all_alignments()[(seed / 5) % all_alignments().size()];
  g.seed = seed;
  return gen_lcmnl(g);
}

}  // namespace

TEST_CASE("omega examples and errors") {
  CHECK(omega(7, 1.0) == 1.0);
  CHECK(omega(1, 0.3) == 1.0);
  CHECK(omega(2, 0.5) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(omega(3, 0.25) == doctest::Approx(3.0 - 2.0 * 0.5).epsilon(1e-15));
  CHECK(std::abs(omega(1000000, 0.01) - (1.0 - std::log(0.01))) <= 1e-3);
  CHECK_THROWS_AS(omega(3, 0.0), InvalidRatio);
  CHECK_THROWS_AS(omega(3, -1.0), InvalidRatio);
  CHECK_THROWS_AS(omega(3, 1.5), InvalidRatio);
  CHECK_THROWS_AS(omega(0, 0.5), InvalidRatio);
}

TEST_CASE("omega grows with n and stays below its limit") {
  for (double alpha : {0.001, 0.01, 0.2, 0.9}) {
    double prev = omega(1, alpha);
    for (std::size_t n = 2; n <= 2000; ++n) {
      const double w = omega(n, alpha);
      CHECK(w >= prev);
      CHECK(w <= 1.0 - std::log(alpha) + 1e-12);
      // closed form n - (n-1) alpha^{1/(n-1)} agrees where it is accurate
      if (n < 50) {
        const double direct = static_cast<double>(n) - static_cast<double>(n - 1) *
                                                           std::pow(alpha, 1.0 / static_cast<double>(n - 1));
        CHECK(w == doctest::Approx(direct).epsilon(1e-12));
      }
      prev = w;
    }
  }
}

TEST_CASE("eta examples") {
  CHECK(*eta(0.3, 0.3) == 1.0);
  CHECK(*eta(0.1, 0.5) == doctest::Approx(1.0 + std::log(5.0)).epsilon(1e-15));
  CHECK(*eta(std::exp(-1.0) * 0.6, 0.6) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_FALSE(eta(0.0, 0.4).has_value());
  CHECK_THROWS_AS(eta(0.5, 0.4), InvalidRatio);
  CHECK_THROWS_AS(eta(-0.1, 0.4), InvalidRatio);
}

TEST_CASE("revenue spread ignores zero revenues") {
  const auto s = revenue_spread(std::vector<double>{0.0, 2.0, 8.0, 2.0});
  CHECK(s.alpha == 0.25);
  CHECK(s.positive == 3);
  CHECK(s.distinct == 2);
}

TEST_CASE("personalized bound examples") {
  std::mt19937_64 rng(71);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + t % 6;
    const MNLSegment seg{1.0, oracle::random_vector(rng, n, 0.1, 5.0)};
    const auto r = oracle::random_vector(rng, n, 1.0, 10.0);
    const Instance one(r, RefinementDomain::full(n), LCMNLModel{{seg}, {1.0}});
    CHECK(praop_upper(one) == doctest::Approx(enumerate_taop(one).revenue).epsilon(1e-12));
    const MNLSegment other{0.5, oracle::random_vector(rng, n, 0.1, 5.0)};
    const Instance zero(r, RefinementDomain::full(n), LCMNLModel{{seg, other}, {1.0, 0.0}});
    CHECK(praop_upper(zero) == doctest::Approx(mnl_segment_optimum(seg, r).revenue).epsilon(1e-12));
  }
  const auto ex2 = example2_instance();
  CHECK(praop_upper(ex2) >= 71.06);
  CHECK(praop_upper(ex2) == doctest::Approx(81.685).epsilon(1e-4));
  const auto pair = prop2_instance(0.1);
  const Instance rcs(pair.r, RefinementDomain::full(2), pair.original);
  CHECK_THROWS_AS(praop_upper(rcs), InvalidInstance);
}

TEST_CASE("log-scale personalized bound equals the linear one") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto inst = random_instance(seed, 1 + seed % 6, 1 + seed % 4);
    const Instance logged(inst.r(), inst.domain(), to_log_scale(*inst.linear_lcmnl()));
    CHECK(praop_upper(logged) == doctest::Approx(praop_upper(inst)).epsilon(1e-12));
  }
}

TEST_CASE("bound chain: taop <= praop <= omega * ro") {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    const auto inst = random_instance(seed, 1 + seed % 8, 1 + seed % 5);
    const double taop = enumerate_taop(inst).revenue;
    const double praop = praop_upper(inst);
    const double ro = revenue_ordered(inst).revenue;
    const auto spread = revenue_spread(inst.r());
    CHECK(taop <= praop + 1e-9);
    CHECK(praop <= omega(spread.positive, spread.alpha) * ro + 1e-7);
  }
}

TEST_CASE("omega over distinct revenue values still bounds the gap") {
  std::mt19937_64 rng(72);
  for (int t = 0; t < 300; ++t) {
    const std::size_t k = 1 + t % 3;
    const std::size_t n = k + 1 + t % 4;
    const auto levels = oracle::random_vector(rng, k, 1.0, 20.0);
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = levels[i % k];
    LCMNLModel model;
    const std::size_t m = 1 + t % 4;
    for (std::size_t j = 0; j < m; ++j) {
      model.segments.push_back({std::uniform_real_distribution<double>(0.2, 3.0)(rng),
                                oracle::random_vector(rng, n, 0.01, 5.0)});
      model.theta.push_back(1.0 / static_cast<double>(m));
    }
    double s = 0.0;
    for (std::size_t j = 0; j + 1 < m; ++j) s += model.theta[j];
    model.theta.back() = 1.0 - s;
    const Instance inst(r, RefinementDomain::full(n), model);
    const auto spread = revenue_spread(r);
    REQUIRE(spread.distinct == k);
    CHECK(praop_upper(inst) <= omega(k, spread.alpha) * revenue_ordered(inst).revenue + 1e-7);
  }
}

TEST_CASE("one-product LP: corrected is exact, printed collapses") {
  const Instance unit({1.0}, RefinementDomain::full(1), LCMNLModel{{MNLSegment{1.0, {1.0}}}, {1.0}});
  const auto corrected = lp_upper(unit, LpVariant::Corrected);
  REQUIRE(corrected.bound.has_value());
  CHECK(*corrected.bound == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(corrected.exact_extraction);
  REQUIRE(corrected.extracted_revenue.has_value());
  CHECK(*corrected.extracted_revenue == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(corrected.x[0] == doctest::Approx(1.0).epsilon(1e-12));

  const auto printed = lp_upper(unit, LpVariant::Printed);
  REQUIRE(printed.bound.has_value());
  CHECK(std::abs(*printed.bound) <= 1e-12);
  CHECK(*printed.bound < enumerate_taop(unit).revenue);
}

TEST_CASE("LP layout") {
  const auto ex2 = example2_instance();
  const auto lp = build_bound_lp(*ex2.linear_lcmnl(), ex2.r(), LpVariant::Corrected);
  CHECK(lp.num_vars() == 3 + 2 + 6);
  CHECK(lp.num_rows() == 2 + 4 * 6);
  CHECK(lp.lower[3] == doctest::Approx(1.0 / (ex2.linear_lcmnl()->segments[0].v0 +
                                              ex2.linear_lcmnl()->segments[0].v[0] +
                                              ex2.linear_lcmnl()->segments[0].v[1] +
                                              ex2.linear_lcmnl()->segments[0].v[2])));
  CHECK(lp_variant_from_string("printed") == LpVariant::Printed);
  CHECK(to_string(LpVariant::Corrected) == "corrected");
  CHECK_THROWS(lp_variant_from_string("other"));
}

TEST_CASE("corrected LP bounds every feasible refinement") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const auto inst = random_instance(seed, 1 + seed % 3, 1 + seed % 4);
    const auto b = lp_upper(inst);
    REQUIRE(b.bound.has_value());
    const HeuristicOptions h{{}, 1};
    double best = std::max({ro1(inst, h).revenue, ro2(inst, h).revenue, ro3(inst, h).revenue});
    best = std::max(best, grid_oracle_raop(inst, 41, h).revenue);
    CHECK(*b.bound >= best - 1e-6);
    if (b.exact_extraction) CHECK(*b.extracted_revenue <= *b.bound + 1e-7);
  }
}

TEST_CASE("LP needs a linear LC-MNL model") {
  const auto c = prop1_instance({});
  const auto b = lp_upper(c.instance);
  CHECK_FALSE(b.bound.has_value());
  CHECK_FALSE(b.diagnostic.empty());
}

TEST_CASE("bound report on the three-product example") {
  const auto report = compute_bounds(example2_instance());
  CHECK(report.revenue_ordered == doctest::Approx(66.24).epsilon(1e-3));
  REQUIRE(report.praop.has_value());
  REQUIRE(report.lp.has_value());
  CHECK(*report.lp <= *report.praop + 1e-9);
  CHECK(*report.praop <= report.omega_n * report.revenue_ordered + 1e-9);
  REQUIRE(report.eta.has_value());
  CHECK(*report.eta == doctest::Approx(1.0 + std::log(*report.qn / *report.q1)).epsilon(1e-12));
  const auto j = bound_report_to_json(report);
  CHECK(j.at("lp_variant") == "corrected");
  CHECK(j.contains("omega_n"));
}
