#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "raop/instance_gen.hpp"
#include "raop/sacp.hpp"
#include "raop/taop.hpp"

using namespace raop;

TEST_CASE("schedule from period utilities") {
  const auto s = SACPSchedule::from_period_utilities({{1.5, 1.0}, {0.0}});
  REQUIRE(s.num_products() == 2);
  CHECK(s.levels[0][0] == 1.0);
  CHECK(s.levels[0][1] == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
  CHECK(s.menu(0) == std::vector<double>{0.0, std::exp(-0.5), 1.0});
  CHECK(s.menu(1) == std::vector<double>{0.0, 1.0});
  CHECK_THROWS_AS(SACPSchedule::from_period_utilities({{1.0, 1.0}}), InvalidInstance);
  CHECK_THROWS_AS(SACPSchedule({{{0.9}}}).validate(), InvalidInstance);
  CHECK_THROWS_AS(SACPSchedule({{{1.0, 0.5, 0.7}}}).validate(), InvalidInstance);
}

TEST_CASE("schedule from a discrete domain") {
  const RefinementDomain d({Binary{}, make_finite_set({0.0, 0.8, 1.0})});
  const auto s = SACPSchedule::from_domain(d);
  CHECK(s.levels[0] == std::vector<double>{1.0});
  CHECK(s.levels[1] == std::vector<double>{1.0, 0.8});
  CHECK_THROWS_AS(SACPSchedule::from_domain(RefinementDomain::full(2)), InvalidInstance);
}

TEST_CASE("two-period toy: commitment beats the binary optimum") {
  const auto toy = example1_toy();
  const auto sol = solve_sacp(toy.r, toy.choice_function(), SACPSchedule::from_domain(toy.domain), 1);
  CHECK(std::abs(sol.result.revenue - 1.75) <= 1e-12);
  CHECK(sol.result.x == RefinementVector{1.0, 0.8});
  REQUIRE(sol.period[0].has_value());
  REQUIRE(sol.period[1].has_value());
  CHECK(*sol.period[0] == 0);
  CHECK(*sol.period[1] == 1);
  double binary = 0.0;
  for (double a : {0.0, 1.0})
    for (double b : {0.0, 1.0}) binary = std::max(binary, toy.revenue(std::vector<double>{a, b}));
  CHECK(std::abs(binary - 1.05) <= 1e-12);
  CHECK(toy.surplus(std::vector<double>{1.0, 0.0}) == doctest::Approx(0.45).epsilon(5e-3 / 0.45));
  CHECK(toy.surplus(sol.result.x) == doctest::Approx(1.41).epsilon(5e-3 / 1.41));
}

TEST_CASE("exact over menus for LC-MNL") {
  std::mt19937_64 rng(51);
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    GeneratorConfig g;
    g.n = 1 + seed % 4;
    g.m = 1 + seed % 3;
    g.seed = seed;
    const auto base = gen_lcmnl(g);
    std::vector<DomainSpec> specs;
    for (std::size_t i = 0; i < g.n; ++i) {
      auto lv = oracle::random_vector(rng, 2, 0.05, 0.95);
      specs.push_back(make_finite_set({0.0, lv[0], lv[1], 1.0}));
    }
    const auto inst = base.with_domain(RefinementDomain(specs));
    const auto sol = solve_sacp(inst, SACPSchedule::from_domain(inst.domain()), 2);
    // independent exhaustive search over the same menus
    std::vector<std::vector<double>> menus;
    for (const auto& s : specs) menus.push_back(std::get<FiniteSet>(s).values);
    std::vector<std::size_t> idx(g.n, 0);
    double best = 0.0;
    for (;;) {
      std::vector<double> x(g.n);
      for (std::size_t i = 0; i < g.n; ++i) x[i] = menus[i][idx[i]];
      best = std::max(best, expected_revenue(inst, x));
      std::size_t i = 0;
      while (i < g.n && ++idx[i] == menus[i].size()) idx[i++] = 0;
      if (i == g.n) break;
    }
    CHECK(sol.result.revenue == doctest::Approx(best).epsilon(1e-12));
    CHECK(sol.result.revenue >= enumerate_taop(base).revenue - 1e-12);
    CHECK(solve_sacp(inst, SACPSchedule::from_domain(inst.domain()), 1).result.x == sol.result.x);
  }
}

TEST_CASE("binary schedule reproduces the subset optimum") {
  GeneratorConfig g;
  g.n = 7;
  g.m = 3;
  g.seed = 5;
  const auto inst = gen_lcmnl(g).with_domain(RefinementDomain::binary(7));
  const auto sol = solve_sacp(inst, SACPSchedule::from_domain(inst.domain()));
  CHECK(sol.result.revenue == doctest::Approx(enumerate_taop(inst).revenue).epsilon(1e-12));
}

TEST_CASE("combination cap") {
  GeneratorConfig g;
  g.n = 24;
  const auto inst = gen_lcmnl(g);
  std::vector<DomainSpec> specs(24, make_finite_set({0.0, 0.5, 1.0}));
  CHECK_THROWS_AS(solve_sacp(inst.with_domain(RefinementDomain(specs)),
                             SACPSchedule::from_domain(RefinementDomain(specs))),
                  SizeLimit);
}
