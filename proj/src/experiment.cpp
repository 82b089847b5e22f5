#include "raop/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

#include "raop/parallel.hpp"
#include "raop/taop.hpp"

namespace raop {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

bool is_refined_heuristic(const std::string& s) { return s == "ro1" || s == "ro2" || s == "ro3"; }

std::string fmt(double v, const char* spec = "%.6f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string cell_prefix(const CellKey& k) {
  return std::to_string(k.n) + "," + std::to_string(k.m) + "," + fmt(k.epsilon, "%g") + "," +
         fmt(k.alpha, "%g") + "," + to_string(k.dist) + "," + to_string(k.alignment);
}

// Solutions of one replication, indexed like the cell's solver list.
struct Replication {
  std::vector<std::optional<double>> revenue;
  std::vector<std::optional<bool>> agrees;
};

}  // namespace

void ExperimentConfig::validate() const {
  if (replications == 0) throw Error("experiment needs at least one replication");
  if (ns.empty() || ms.empty() || epsilons.empty() || alphas.empty() || dists.empty() ||
      alignments.empty()) {
    throw Error("every experiment factor needs at least one level");
  }
  if (solvers.empty()) throw Error("experiment needs at least one solver");
  for (const auto& s : solvers) {
    if (s != "ro" && s != "ro1" && s != "ro2" && s != "ro3" && s != "enum") {
      throw Error("experiment solvers are ro, ro1, ro2, ro3 and enum; got '" + s + "'");
    }
  }
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t cell, std::uint64_t replication) {
  std::uint64_t s = splitmix64(master);
  s = splitmix64(s ^ splitmix64(cell + 0x632BE59BD9B4E019ULL));
  return splitmix64(s ^ splitmix64(replication + 0x8CB92BA72F3D8DD7ULL));
}

std::vector<CellKey> experiment_cells(const ExperimentConfig& c) {
  std::vector<CellKey> cells;
  for (auto n : c.ns) {
    for (auto m : c.ms) {
      for (auto eps : c.epsilons) {
        for (auto alpha : c.alphas) {
          for (auto dist : c.dists) {
            for (auto al : c.alignments) cells.push_back({n, m, eps, alpha, dist, al});
          }
        }
      }
    }
  }
  return cells;
}

GeneratorConfig cell_generator(const CellKey& cell, std::uint64_t seed) {
  return {cell.n, cell.m, cell.epsilon, cell.dist, cell.alpha, cell.alignment, seed};
}

const SolverSummary* CellSummary::find(const std::string& solver) const {
  for (const auto& s : solvers) {
    if (s.solver == solver) return &s;
  }
  return nullptr;
}

double uplift_percent(double revenue, double baseline) {
  if (!(baseline > 0.0)) return 0.0;
  return 100.0 * (revenue - baseline) / baseline;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  const auto cells = experiment_cells(config);
  std::vector<std::string> solvers{"ro"};
  for (const auto& s : config.solvers) {
    if (s != "ro" && std::find(solvers.begin(), solvers.end(), s) == solvers.end()) {
      solvers.push_back(s);
    }
  }
  const auto enum_pos = std::find(solvers.begin(), solvers.end(), "enum") - solvers.begin();
  const bool has_enum = static_cast<std::size_t>(enum_pos) < solvers.size();

  const std::size_t reps = config.replications;
  const std::size_t tasks = cells.size() * reps;
  std::vector<Replication> results(tasks);
  HeuristicOptions serial = config.heuristic;
  serial.threads = 1;

#pragma omp parallel for schedule(dynamic) num_threads(resolve_threads(config.threads))
  for (std::int64_t t = 0; t < static_cast<std::int64_t>(tasks); ++t) {
    const auto task = static_cast<std::size_t>(t);
    const std::size_t c = task / reps;
    const std::size_t rep = task % reps;
    const auto& cell = cells[c];
    const auto instance = gen_lcmnl(cell_generator(cell, derive_seed(config.master_seed, c, rep)));
    const bool run_enum = has_enum && cell.n < config.enum_cutoff;

    Replication out;
    out.revenue.resize(solvers.size());
    out.agrees.resize(solvers.size());
    std::vector<RefinementVector> xs(solvers.size());
    for (std::size_t s = 0; s < solvers.size(); ++s) {
      if (solvers[s] == "enum" && !run_enum) continue;
      SolveResult res;
      if (solvers[s] == "ro") {
        res = revenue_ordered(instance);
      } else if (solvers[s] == "enum") {
        res = enumerate_taop(instance, {config.enum_cutoff, 1});
      } else {
        res = solve_by_name(instance, solvers[s], {serial, kDefaultEnumCap, 101});
      }
      out.revenue[s] = res.revenue;
      xs[s] = std::move(res.x);
    }
    if (run_enum) {
      const auto& taop_x = xs[static_cast<std::size_t>(enum_pos)];
      for (std::size_t s = 0; s < solvers.size(); ++s) {
        bool agrees = true;
        for (std::size_t i = 0; i < taop_x.size(); ++i) {
          if (taop_x[i] == 1.0 && xs[s][i] != 1.0) agrees = false;
        }
        out.agrees[s] = agrees;
      }
    }
    results[task] = std::move(out);
  }

  ExperimentResult result;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    CellSummary cell;
    cell.key = cells[c];
    cell.replications = reps;
    const bool run_enum = has_enum && cells[c].n < config.enum_cutoff;
    for (std::size_t s = 0; s < solvers.size(); ++s) {
      if (solvers[s] == "enum" && !run_enum) continue;
      SolverSummary sum;
      sum.solver = solvers[s];
      double total = 0.0;
      double agree = 0.0;
      sum.max_uplift = -std::numeric_limits<double>::infinity();
      for (std::size_t rep = 0; rep < reps; ++rep) {
        const auto& r = results[c * reps + rep];
        const double u = uplift_percent(*r.revenue[s], *r.revenue[0]);
        total += u;
        sum.max_uplift = std::max(sum.max_uplift, u);
        if (r.agrees[s] && *r.agrees[s]) agree += 1.0;
      }
      sum.mean_uplift = total / static_cast<double>(reps);
      if (run_enum) sum.taop_agreement = agree / static_cast<double>(reps);
      cell.solvers.push_back(std::move(sum));
    }
    if (run_enum) {
      const double taop_mean = cell.solvers[static_cast<std::size_t>(enum_pos)].mean_uplift;
      for (auto& s : cell.solvers) {
        if (is_refined_heuristic(s.solver)) s.outperforms_taop = s.mean_uplift > taop_mean;
      }
    }
    const auto ro2 = std::find(solvers.begin(), solvers.end(), "ro2") - solvers.begin();
    const auto ro3 = std::find(solvers.begin(), solvers.end(), "ro3") - solvers.begin();
    if (static_cast<std::size_t>(ro2) < solvers.size() &&
        static_cast<std::size_t>(ro3) < solvers.size()) {
      for (std::size_t rep = 0; rep < reps; ++rep) {
        const auto& r = results[c * reps + rep];
        if (*r.revenue[static_cast<std::size_t>(ro3)] <
            *r.revenue[static_cast<std::size_t>(ro2)] - 1e-9) {
          ++cell.ro3_below_ro2;
        }
      }
    }
    result.cells.push_back(std::move(cell));
  }
  return result;
}

void write_cell_csv(std::ostream& out, const ExperimentResult& result) {
  out << "n,m,epsilon,alpha,dist,alignment,solver,mean_uplift,max_uplift,outperforms_taop\n";
  for (const auto& cell : result.cells) {
    for (const auto& s : cell.solvers) {
      out << cell_prefix(cell.key) << "," << s.solver << "," << fmt(s.mean_uplift) << ","
          << fmt(s.max_uplift) << ","
          << (s.outperforms_taop ? (*s.outperforms_taop ? "1" : "0") : "-") << "\n";
    }
  }
}

void write_aggregate_csv(std::ostream& out, const ExperimentResult& result,
                         const std::vector<std::string>& solvers) {
  std::vector<std::string> columns{"ro"};
  for (const auto& s : solvers) {
    if (s != "ro") columns.push_back(s);
  }
  out << "n,m";
  for (const auto& c : columns) out << "," << (c == "enum" ? "taop" : c);
  out << ",best\n";

  struct Acc {
    std::vector<double> sum;
    std::vector<std::size_t> count;
    double best = 0.0;
    std::size_t cells = 0;
  };
  std::map<std::pair<std::size_t, std::size_t>, Acc> groups;
  for (const auto& cell : result.cells) {
    auto& acc = groups[{cell.key.n, cell.key.m}];
    acc.sum.resize(columns.size(), 0.0);
    acc.count.resize(columns.size(), 0);
    double best = 0.0;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (const auto* s = cell.find(columns[c])) {
        acc.sum[c] += s->mean_uplift;
        ++acc.count[c];
        if (is_refined_heuristic(s->solver)) best = std::max(best, s->mean_uplift);
      }
    }
    acc.best += best;
    ++acc.cells;
  }
  for (const auto& [key, acc] : groups) {
    out << key.first << "," << key.second;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      out << ",";
      if (acc.count[c] == 0) {
        out << "-";
      } else {
        out << fmt(acc.sum[c] / static_cast<double>(acc.count[c]));
      }
    }
    out << "," << fmt(acc.best / static_cast<double>(acc.cells)) << "\n";
  }
}

void write_agreement_csv(std::ostream& out, const ExperimentResult& result) {
  out << "n,m,epsilon,alpha,dist,alignment,solver,taop_agreement,ro3_below_ro2\n";
  for (const auto& cell : result.cells) {
    for (const auto& s : cell.solvers) {
      out << cell_prefix(cell.key) << "," << s.solver << ","
          << (s.taop_agreement ? fmt(*s.taop_agreement) : std::string("-")) << ","
          << cell.ro3_below_ro2 << "\n";
    }
  }
}

}  // namespace raop
