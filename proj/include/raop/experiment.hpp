#pragma once

// Replication grid for the heuristics: every cell of (n, m, epsilon, alpha,
// price distribution, alignment) is sampled `replications` times and each
// solver's revenue is compared against the best revenue-ordered assortment.

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "raop/heuristics.hpp"
#include "raop/instance_gen.hpp"

namespace raop {

struct ExperimentConfig {
  std::vector<std::size_t> ns{5, 10, 15, 50, 100};
  std::vector<std::size_t> ms{2, 5, 10, 50, 100};
  std::vector<double> epsilons{0.01, 0.5};
  std::vector<double> alphas{0.01, 0.1, 0.2};
  std::vector<PriceDist> dists{PriceDist::Uniform};
  std::vector<Alignment> alignments{Alignment::Random};
  std::size_t replications = 50;
  std::uint64_t master_seed = 1;
  // "ro" is always evaluated as the baseline; "enum" is skipped for
  // n >= enum_cutoff.
  std::vector<std::string> solvers{"ro", "ro1", "ro2", "ro3", "enum"};
  std::size_t enum_cutoff = 50;
  HeuristicOptions heuristic;
  int threads = 0;

  void validate() const;
};

// splitmix64 over (master, cell, replication); independent of scheduling.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t cell, std::uint64_t replication);

struct CellKey {
  std::size_t n = 0;
  std::size_t m = 0;
  double epsilon = 0.0;
  double alpha = 0.0;
  PriceDist dist = PriceDist::Uniform;
  Alignment alignment = Alignment::Random;
};

std::vector<CellKey> experiment_cells(const ExperimentConfig& config);
GeneratorConfig cell_generator(const CellKey& cell, std::uint64_t seed);

struct SolverSummary {
  std::string solver;
  double mean_uplift = 0.0;  // percent, relative to revenue_ordered
  double max_uplift = 0.0;
  // Mean uplift strictly above the TAOP optimum's; nullopt without TAOP or
  // for the baseline and TAOP rows themselves.
  std::optional<bool> outperforms_taop;
  // Share of replications whose solution offers every product of the TAOP
  // optimum in full; nullopt without TAOP.
  std::optional<double> taop_agreement;
};

struct CellSummary {
  CellKey key;
  std::size_t replications = 0;
  std::vector<SolverSummary> solvers;  // in config order, "ro" first
  std::size_t ro3_below_ro2 = 0;       // replications where RO3 < RO2 - 1e-9
  const SolverSummary* find(const std::string& solver) const;
};

struct ExperimentResult {
  std::vector<CellSummary> cells;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

// Relative uplift in percent; 0 when the baseline revenue is not positive.
double uplift_percent(double revenue, double baseline);

// n,m,epsilon,alpha,dist,alignment,solver,mean_uplift,max_uplift,outperforms_taop
void write_cell_csv(std::ostream& out, const ExperimentResult& result);
// n,m,<solver columns>,best: mean uplift per (n, m) averaged over the other
// factors; "-" where TAOP was not computed. "best" averages the per-cell
// largest refined-heuristic mean.
void write_aggregate_csv(std::ostream& out, const ExperimentResult& result,
                         const std::vector<std::string>& solvers);
// n,m,epsilon,alpha,dist,alignment,solver,taop_agreement,ro3_below_ro2
void write_agreement_csv(std::ostream& out, const ExperimentResult& result);

}  // namespace raop
