#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "raop/heuristics.hpp"
#include "raop/instance_gen.hpp"
#include "raop/line_search.hpp"

using namespace raop;

namespace {

Instance random_instance(std::uint64_t seed, std::size_t n, std::size_t m) {
  GeneratorConfig g;
  g.n = n;
  g.m = m;
  g.epsilon = seed % 2 ? 0.01 : 0.5;
  g.alpha_target = 0.01 + 0.05 * static_cast<double>(seed % 4);
  g.price_dist = all_price_dists()[seed % all_price_dists().size()];
  g.alignment = all_alignments()[(seed / 5) % all_alignments().size()];
  g.seed = seed;
  return gen_lcmnl(g);
}

}  // namespace

TEST_CASE("line search finds interior, endpoint and narrow peaks") {
  auto quad = line_maximize([](double t) { return -(t - 0.3) * (t - 0.3); });
  CHECK(quad.x == doctest::Approx(0.3).epsilon(1e-6));
  auto edge = line_maximize([](double t) { return t; });
  CHECK(edge.x == 1.0);
  auto left = line_maximize([](double t) { return 1.0 - t; });
  CHECK(left.x == 0.0);
  // taller peak at 0.8 is narrower than the grid spacing would catch by luck
  auto bimodal = line_maximize([](double t) {
    return 0.9 * std::exp(-(t - 0.2) * (t - 0.2) / 1e-2) + std::exp(-(t - 0.8) * (t - 0.8) / 1e-4);
  });
  CHECK(bimodal.x == doctest::Approx(0.8).epsilon(1e-6));
  CHECK(bimodal.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("discrete domains are scanned exhaustively") {
  const auto spec = DomainSpec{make_finite_set({0.0, 0.25, 0.8, 1.0})};
  const auto best = line_maximize([](double t) { return -(t - 0.7) * (t - 0.7); }, spec);
  CHECK(best.x == 0.8);
  const auto bin = line_maximize([](double t) { return -(t - 0.4) * (t - 0.4); }, DomainSpec{Binary{}});
  CHECK(bin.x == 0.0);
}

TEST_CASE("line objective equals full evaluation") {
  std::mt19937_64 rng(41);
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto inst = random_instance(seed, 1 + seed % 8, 1 + seed % 5);
    const auto base = oracle::random_vector(rng, inst.n(), 0.0, 1.0);
    const std::size_t k = seed % inst.n();
    const LineObjective f(inst, {base, k});
    for (double t : {0.0, 0.13, 0.5, 0.99, 1.0}) {
      auto x = base;
      x[k] = t;
      CHECK(f(t) == doctest::Approx(expected_revenue(inst, x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("refined heuristics on the three-product example") {
  const auto ex2 = example2_instance();
  const double taop = enumerate_taop(ex2).revenue;
  for (const auto& res : {ro1(ex2), ro2(ex2), ro3(ex2)}) {
    CHECK(res.revenue >= 71.0);
    CHECK(res.revenue > taop);
    CHECK(ex2.domain().contains(res.x));
    CHECK(res.revenue == doctest::Approx(expected_revenue(ex2, res.x)).epsilon(1e-12));
  }
  CHECK(ro1(ex2).revenue == doctest::Approx(71.0565).epsilon(1e-5));
  CHECK(grid_oracle_raop(ex2, 101).revenue >= ro3(ex2).revenue - 1e-9);
}

TEST_CASE("dominance chain ro <= ro1 <= ro2, ro3") {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    const auto inst = random_instance(seed, 1 + seed % 10, 1 + seed % 5);
    const double ro = revenue_ordered(inst).revenue;
    const double r1 = ro1(inst).revenue;
    const double r2 = ro2(inst).revenue;
    const double r3 = ro3(inst).revenue;
    CHECK(ro <= r1 + 1e-9);
    CHECK(r1 <= r2 + 1e-9);
    CHECK(r1 <= r3 + 1e-9);
  }
}

TEST_CASE("parallel heuristics agree with the serial reference") {
  for (std::uint64_t seed = 500; seed < 540; ++seed) {
    const auto inst = random_instance(seed, 2 + seed % 9, 1 + seed % 4);
    const HeuristicOptions par{{}, 2};
    CHECK(ro1(inst, par).revenue == doctest::Approx(reference::ro1(inst).revenue).epsilon(1e-9));
    CHECK(ro2(inst, par).revenue == doctest::Approx(reference::ro2(inst).revenue).epsilon(1e-9));
    CHECK(ro3(inst, par).revenue == doctest::Approx(reference::ro3(inst).revenue).epsilon(1e-9));
    const HeuristicOptions one{{}, 1};
    CHECK(ro2(inst, one).x == ro2(inst, par).x);
  }
}

TEST_CASE("grid oracle matches its reference and limits") {
  for (std::uint64_t seed = 600; seed < 620; ++seed) {
    const auto inst = random_instance(seed, 1 + seed % 3, 1 + seed % 4);
    const auto fast = grid_oracle_raop(inst, 31);
    const auto ref = reference::grid_oracle_raop(inst, 31);
    CHECK(fast.revenue == doctest::Approx(ref.revenue).epsilon(1e-9));
    CHECK(fast.revenue >= enumerate_taop(inst).revenue - 1e-12);
  }
  CHECK_THROWS_AS(grid_oracle_raop(random_instance(1, 4, 2)), SizeLimit);
  CHECK_THROWS_AS(grid_oracle_raop(random_instance(1, 2, 2), 202), SizeLimit);
}

TEST_CASE("solvers by name") {
  const auto ex2 = example2_instance();
  CHECK(solver_names().size() == 7);
  CHECK(is_solver_name("ro3"));
  CHECK_FALSE(is_solver_name("magic"));
  for (const auto& name : {"ro", "ro1", "ro2", "ro3", "enum", "grid"}) {
    const auto res = solve_by_name(ex2, name);
    CHECK(res.solver == name);
  }
  CHECK_THROWS_AS(solve_by_name(ex2, "sacp"), InvalidInstance);
  CHECK_THROWS(solve_by_name(ex2, "magic"));
}
