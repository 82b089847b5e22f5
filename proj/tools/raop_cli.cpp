// raop: generate instances, run solvers and bounds, replicate the experiment
// grid and check the published reference values.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "raop/bounds.hpp"
#include "raop/experiment.hpp"
#include "raop/heuristics.hpp"
#include "raop/instance_gen.hpp"
#include "raop/instance_io.hpp"
#include "raop/paper_checks.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<std::string> split_list(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& item : raw) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (!part.empty()) out.push_back(part);
    }
  }
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw raop::Error("cannot write " + path.string());
  out << text;
}

void emit(const json& doc, const std::string& out_file) {
  if (out_file.empty()) {
    std::cout << doc.dump(2) << '\n';
  } else {
    write_text(out_file, doc.dump(2) + '\n');
  }
}

std::string cell_file_name(const raop::GeneratorConfig& g, std::size_t rep) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "lcmnl_n%zu_m%zu_eps%g_alpha%g_%s_%s_rep%zu.json", g.n, g.m,
                g.epsilon, g.alpha_target, raop::to_string(g.price_dist).c_str(),
                raop::to_string(g.alignment).c_str(), rep);
  return buf;
}

// revenue_ordered <= ro1 <= {ro2, ro3} and ro <= enum, over the solvers that ran
json dominance_check(const std::map<std::string, double>& revenue) {
  constexpr double kTol = 1e-9;
  json checks = json::array();
  auto le = [&](const std::string& a, const std::string& b) {
    if (!revenue.contains(a) || !revenue.contains(b)) return;
    checks.push_back({{"relation", a + " <= " + b},
                      {"holds", revenue.at(a) <= revenue.at(b) + kTol}});
  };
  le("ro", "ro1");
  le("ro1", "ro2");
  le("ro1", "ro3");
  le("ro", "enum");
  bool all = true;
  for (const auto& c : checks) all = all && c["holds"].get<bool>();
  return {{"holds", all}, {"relations", checks}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Refined assortment optimization toolkit"};
  app.require_subcommand(1);

  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (0 = OpenMP default)");

  // generate
  auto* gen = app.add_subcommand("generate", "Write synthetic LC-MNL instances as JSON");
  raop::GeneratorConfig gcfg;
  std::string dist = "uniform", alignment = "random", example, gen_out = ".";
  std::size_t reps = 1;
  std::uint64_t gen_seed = 1;
  gen->add_option("--n", gcfg.n, "Number of products");
  gen->add_option("--m", gcfg.m, "Number of customer segments");
  gen->add_option("--epsilon", gcfg.epsilon, "Attraction similarity in (0,1]");
  gen->add_option("--alpha", gcfg.alpha_target, "Target r_min / r_max in (0,1)");
  gen->add_option("--dist", dist, "uniform|normal|multimodal|exponential|skewnormal");
  gen->add_option("--alignment", alignment, "random|aligned|anti");
  gen->add_option("--reps", reps, "Replications (one file each)");
  gen->add_option("--seed", gen_seed, "Master seed");
  gen->add_option("--out-dir", gen_out, "Output directory");
  gen->add_option("--example", example, "Write a fixed instance instead: example2|prop1");

  // solve
  auto* solve = app.add_subcommand("solve", "Run solvers on an instance file");
  std::string solve_file, solve_out;
  std::vector<std::string> solver_args;
  std::size_t grid_points = 256, grid_per_axis = 101, enum_cap = raop::kDefaultEnumCap;
  double line_tol = 1e-9;
  solve->add_option("instance", solve_file, "Instance JSON")->required();
  solve->add_option("--solvers", solver_args, "Comma-separated: ro,ro1,ro2,ro3,enum,grid,sacp")
      ->required();
  solve->add_option("--grid-points", grid_points, "Line-search grid size");
  solve->add_option("--line-tol", line_tol, "Golden-section tolerance");
  solve->add_option("--grid-per-axis", grid_per_axis, "Grid oracle points per axis");
  solve->add_option("--enum-cap", enum_cap, "Largest n for exhaustive enumeration");
  solve->add_option("--out", solve_out, "Write JSON here instead of stdout");

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Upper bounds for an instance");
  std::string bounds_file, bounds_out, lp_variant = "corrected";
  bounds->add_option("instance", bounds_file, "Instance JSON")->required();
  bounds->add_option("--lp-variant", lp_variant, "printed|corrected")
      ->check(CLI::IsMember({"printed", "corrected"}));
  bounds->add_option("--out", bounds_out, "Write JSON here instead of stdout");

  // experiment
  auto* exp = app.add_subcommand("experiment", "Replicate the heuristic comparison grid");
  raop::ExperimentConfig ecfg;
  std::vector<std::string> exp_dists{"uniform"}, exp_align{"random"}, exp_solvers;
  std::string exp_out = ".";
  std::size_t exp_grid_points = 256;
  double exp_line_tol = 1e-9;
  exp->add_option("--n", ecfg.ns, "Product counts")->delimiter(',');
  exp->add_option("--m", ecfg.ms, "Segment counts")->delimiter(',');
  exp->add_option("--epsilon", ecfg.epsilons, "Similarity levels")->delimiter(',');
  exp->add_option("--alpha", ecfg.alphas, "Price ratio targets")->delimiter(',');
  exp->add_option("--dist", exp_dists, "Price distributions")->delimiter(',');
  exp->add_option("--alignment", exp_align, "Alignment modes")->delimiter(',');
  exp->add_option("--reps", ecfg.replications, "Replications per cell");
  exp->add_option("--seed", ecfg.master_seed, "Master seed");
  exp->add_option("--solvers", exp_solvers, "Subset of ro,ro1,ro2,ro3,enum");
  exp->add_option("--enum-cap", ecfg.enum_cutoff, "Skip enumeration for n >= this");
  exp->add_option("--grid-points", exp_grid_points, "Line-search grid size");
  exp->add_option("--line-tol", exp_line_tol, "Golden-section tolerance");
  exp->add_option("--out-dir", exp_out, "Directory for cells.csv, aggregate.csv, agreement.csv");

  // verify-paper
  auto* verify = app.add_subcommand("verify-paper", "Check every published reference value");
  std::vector<std::string> expect;
  raop::PaperCheckOptions vopt;
  verify->add_option("--expect", expect, "Override a reference constant: name=value");
  verify->add_option("--seed", vopt.seed, "Seed for the random sandwich suites");
  verify->add_option("--instances", vopt.random_instances, "Random instances per suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      fs::create_directories(gen_out);
      if (!example.empty()) {
        if (example == "example2") {
          raop::save_instance(fs::path(gen_out) / "example2.json", raop::example2_instance());
        } else if (example == "prop1") {
          raop::save_instance(fs::path(gen_out) / "prop1.json",
                              raop::prop1_instance({}).instance);
        } else {
          throw raop::Error("unknown example '" + example + "' (example2 or prop1)");
        }
        return 0;
      }
      gcfg.price_dist = raop::price_dist_from_string(dist);
      gcfg.alignment = raop::alignment_from_string(alignment);
      for (std::size_t rep = 0; rep < reps; ++rep) {
        gcfg.seed = raop::derive_seed(gen_seed, 0, rep);
        const auto path = fs::path(gen_out) / cell_file_name(gcfg, rep);
        raop::save_instance(path, raop::gen_lcmnl(gcfg));
        std::cout << path.string() << '\n';
      }
      return 0;
    }

    if (*solve) {
      const auto names = split_list(solver_args);
      if (names.empty()) throw raop::Error("no solvers given");
      for (const auto& name : names) {
        if (!raop::is_solver_name(name)) throw raop::Error("unknown solver '" + name + "'");
      }
      const auto instance = raop::load_instance(solve_file);
      raop::SolverOptions opts;
      opts.heuristic = {{grid_points, line_tol}, threads};
      opts.enum_cap = enum_cap;
      opts.grid_per_axis = grid_per_axis;
      json records = json::array();
      std::map<std::string, double> revenue;
      bool failed = false;
      for (const auto& name : names) {
        try {
          const auto res = raop::solve_by_name(instance, name, opts);
          revenue[name] = res.revenue;
          records.push_back({{"solver", name}, {"ok", true}, {"result", raop::solve_result_to_json(res)}});
        } catch (const raop::Error& e) {
          failed = true;
          records.push_back({{"solver", name}, {"ok", false}, {"error", e.what()}});
        }
      }
      emit({{"instance", solve_file}, {"records", records}, {"dominance", dominance_check(revenue)}},
           solve_out);
      return failed ? 3 : 0;
    }

    if (*bounds) {
      const auto instance = raop::load_instance(bounds_file);
      const auto report = raop::compute_bounds(instance, raop::lp_variant_from_string(lp_variant));
      emit(raop::bound_report_to_json(report), bounds_out);
      return 0;
    }

    if (*exp) {
      ecfg.dists.clear();
      for (const auto& d : split_list(exp_dists)) ecfg.dists.push_back(raop::price_dist_from_string(d));
      ecfg.alignments.clear();
      for (const auto& a : split_list(exp_align)) {
        ecfg.alignments.push_back(raop::alignment_from_string(a));
      }
      if (!exp_solvers.empty()) ecfg.solvers = split_list(exp_solvers);
      ecfg.heuristic.line = {exp_grid_points, exp_line_tol};
      ecfg.threads = threads;
      const auto result = raop::run_experiment(ecfg);
      fs::create_directories(exp_out);
      std::ostringstream cells, aggregate, agreement;
      raop::write_cell_csv(cells, result);
      raop::write_aggregate_csv(aggregate, result, ecfg.solvers);
      raop::write_agreement_csv(agreement, result);
      write_text(fs::path(exp_out) / "cells.csv", cells.str());
      write_text(fs::path(exp_out) / "aggregate.csv", aggregate.str());
      write_text(fs::path(exp_out) / "agreement.csv", agreement.str());
      std::cout << aggregate.str();
      return 0;
    }

    if (*verify) {
      raop::PaperConstants constants;
      for (const auto& e : expect) {
        const auto eq = e.find('=');
        if (eq == std::string::npos) throw raop::Error("--expect needs name=value, got '" + e + "'");
        constants.set(e.substr(0, eq), std::stod(e.substr(eq + 1)));
      }
      vopt.threads = threads;
      const auto outcomes = raop::run_paper_checks(constants, vopt);
      std::size_t failures = 0;
      for (const auto& o : outcomes) {
        std::cout << (o.pass ? "PASS " : "FAIL ") << o.name << "  expected " << o.expected
                  << "  observed " << o.observed << '\n';
        if (!o.pass) ++failures;
      }
      std::cout << (outcomes.size() - failures) << "/" << outcomes.size() << " checks passed\n";
      return failures == 0 ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
