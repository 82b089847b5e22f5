#include <set>
#include <sstream>

#include "doctest.h"
#include "raop/experiment.hpp"

using namespace raop;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.ns = {4, 6};
  c.ms = {2};
  c.epsilons = {0.01, 0.5};
  c.alphas = {0.1};
  c.replications = 4;
  c.master_seed = 11;
  return c;
}

std::string csv(const ExperimentResult& r) {
  std::ostringstream out;
  write_cell_csv(out, r);
  write_aggregate_csv(out, r, {"ro", "ro1", "ro2", "ro3", "enum"});
  write_agreement_csv(out, r);
  return out.str();
}

}  // namespace

TEST_CASE("seeds are deterministic and spread out") {
  CHECK(derive_seed(1, 2, 3) == derive_seed(1, 2, 3));
  std::set<std::uint64_t> seen;
  for (std::uint64_t master : {0, 1})
    for (std::uint64_t cell = 0; cell < 30; ++cell)
      for (std::uint64_t rep = 0; rep < 30; ++rep) seen.insert(derive_seed(master, cell, rep));
  CHECK(seen.size() == 2 * 30 * 30);
  CHECK(derive_seed(1, 2, 3) != derive_seed(1, 3, 2));
}

TEST_CASE("cells enumerate the full factorial") {
  auto c = small_config();
  c.dists = {PriceDist::Uniform, PriceDist::Normal};
  c.alignments = all_alignments();
  const auto cells = experiment_cells(c);
  CHECK(cells.size() == 2 * 1 * 2 * 1 * 2 * 3);
  const auto g = cell_generator(cells.front(), 99);
  CHECK(g.n == cells.front().n);
  CHECK(g.seed == 99);
}

TEST_CASE("results do not depend on the thread count") {
  auto one = small_config();
  one.threads = 1;
  auto many = small_config();
  many.threads = 3;
  CHECK(csv(run_experiment(one)) == csv(run_experiment(many)));
}

TEST_CASE("summary invariants") {
  const auto res = run_experiment(small_config());
  REQUIRE(res.cells.size() == 4);
  for (const auto& cell : res.cells) {
    CHECK(cell.replications == 4);
    const auto* ro = cell.find("ro");
    REQUIRE(ro != nullptr);
    CHECK(ro->mean_uplift == 0.0);
    CHECK(ro->max_uplift == 0.0);
    for (const auto& s : cell.solvers) {
      CHECK(s.max_uplift >= s.mean_uplift - 1e-12);
      CHECK(s.mean_uplift >= -1e-9);
    }
    CHECK(cell.find("ro2")->mean_uplift >= cell.find("ro1")->mean_uplift - 1e-9);
    CHECK(cell.find("ro3")->mean_uplift >= cell.find("ro1")->mean_uplift - 1e-9);
    CHECK(cell.find("ro1")->outperforms_taop.has_value());
    CHECK_FALSE(cell.find("enum")->outperforms_taop.has_value());
    CHECK(cell.find("nope") == nullptr);
  }
}

TEST_CASE("one replication: max equals mean") {
  auto c = small_config();
  c.replications = 1;
  for (const auto& cell : run_experiment(c).cells)
    for (const auto& s : cell.solvers) CHECK(s.max_uplift == s.mean_uplift);
}

TEST_CASE("enumeration is skipped above the cutoff") {
  auto c = small_config();
  c.enum_cutoff = 5;
  const auto res = run_experiment(c);
  for (const auto& cell : res.cells) {
    const auto* e = cell.find("enum");
    if (cell.key.n >= 5) {
      CHECK((e == nullptr || !cell.find("ro1")->taop_agreement.has_value()));
    } else {
      REQUIRE(e != nullptr);
      CHECK(cell.find("ro1")->taop_agreement.has_value());
    }
  }
  std::ostringstream out;
  write_aggregate_csv(out, res, c.solvers);
  CHECK(out.str().find('-') != std::string::npos);
}

TEST_CASE("csv headers") {
  const auto res = run_experiment(small_config());
  std::ostringstream a, b, g;
  write_cell_csv(a, res);
  write_aggregate_csv(b, res, {"ro", "ro1", "ro2", "ro3", "enum"});
  write_agreement_csv(g, res);
  CHECK(a.str().rfind("n,m,epsilon,alpha,dist,alignment,solver,mean_uplift,max_uplift,outperforms_taop\n", 0) == 0);
  CHECK(b.str().rfind("n,m,ro,ro1,ro2,ro3,taop,best\n", 0) == 0);
  CHECK(g.str().rfind("n,m,epsilon,alpha,dist,alignment,solver,taop_agreement,ro3_below_ro2\n", 0) == 0);
}

TEST_CASE("uplift and validation") {
  CHECK(uplift_percent(110.0, 100.0) == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(uplift_percent(5.0, 0.0) == 0.0);
  auto c = small_config();
  c.solvers = {"ro", "grid"};
  CHECK_THROWS_AS(c.validate(), Error);
  c = small_config();
  c.replications = 0;
  CHECK_THROWS_AS(run_experiment(c), Error);
  c = small_config();
  c.ns.clear();
  CHECK_THROWS_AS(c.validate(), Error);
}
