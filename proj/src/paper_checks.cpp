#include "raop/paper_checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "raop/bounds.hpp"
#include "raop/heuristics.hpp"
#include "raop/instance_gen.hpp"
#include "raop/rcs.hpp"
#include "raop/sacp.hpp"
#include "raop/taop.hpp"

namespace raop {

double PaperConstants::at(const std::string& name) const {
  const auto it = values.find(name);
  if (it == values.end()) throw Error("unknown reference constant '" + name + "'");
  return it->second;
}

void PaperConstants::set(const std::string& name, double value) {
  if (!values.contains(name)) throw Error("unknown reference constant '" + name + "'");
  values[name] = value;
}

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string vec(const std::vector<double>& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + num(x[i]);
  return s + ")";
}

class Report {
 public:
  void near(const std::string& name, double expected, double observed, double tol) {
    out_.push_back({name, num(expected) + " +- " + num(tol), num(observed),
                    std::abs(observed - expected) <= tol});
  }
  void at_least(const std::string& name, double floor, double observed) {
    out_.push_back({name, ">= " + num(floor), num(observed), observed >= floor});
  }
  void flag(const std::string& name, const std::string& expected, const std::string& observed,
            bool pass) {
    out_.push_back({name, expected, observed, pass});
  }
  std::vector<CheckOutcome> take() { return std::move(out_); }

 private:
  std::vector<CheckOutcome> out_;
};

void example_checks(const PaperConstants& k, Report& rep, int threads) {
  const auto toy = example1_toy();
  const std::vector<double> taop_x{1.0, 0.0};
  const auto sacp =
      solve_sacp(toy.r, toy.choice_function(), SACPSchedule::from_domain(toy.domain), threads);
  double binary = 0.0;
  for (double a : {0.0, 1.0}) {
    for (double b : {0.0, 1.0}) binary = std::max(binary, toy.revenue(std::vector<double>{a, b}));
  }
  rep.near("example1.taop_revenue", k.at("example1.taop_revenue"), binary, 1e-12);
  rep.near("example1.raop_revenue", k.at("example1.raop_revenue"), sacp.result.revenue, 1e-12);
  rep.near("example1.taop_surplus", k.at("example1.taop_surplus"), toy.surplus(taop_x), 5e-3);
  rep.near("example1.raop_surplus", k.at("example1.raop_surplus"), toy.surplus(sacp.result.x),
           5e-3);

  const auto ex2 = example2_instance();
  const double tol = k.at("example2.tolerance");
  const std::vector<double> x_taop{1.0, 1.0, 0.0};
  const std::vector<double> x_raop{1.0, 0.06, 1.0};
  rep.near("example2.taop_revenue", k.at("example2.taop_revenue"),
           expected_revenue(ex2, x_taop), tol);
  rep.near("example2.raop_revenue", k.at("example2.raop_revenue"),
           expected_revenue(ex2, x_raop), tol);
  const auto taop = enumerate_taop(ex2, {kDefaultEnumCap, threads});
  rep.flag("example2.enum_assortment", vec(x_taop), vec(taop.x), taop.x == x_taop);
  const auto p = choice_probabilities(ex2, x_raop);
  rep.flag("example2.raop_probabilities", "(0.311,0.608,0.007) +- 0.001", vec(p.product),
           std::abs(p.product[0] - 0.311) <= 1e-3 && std::abs(p.product[1] - 0.608) <= 1e-3 &&
               std::abs(p.product[2] - 0.007) <= 1e-3);
  const HeuristicOptions h{{}, threads};
  for (const auto& [name, res] : {std::pair{"ro1", ro1(ex2, h)}, std::pair{"ro2", ro2(ex2, h)},
                                  std::pair{"ro3", ro3(ex2, h)}}) {
    rep.at_least(std::string("example2.") + name + "_beats_taop",
                 k.at("example2.raop_revenue") - tol, res.revenue);
  }
}

void construction_checks(const PaperConstants& k, Report& rep) {
  // limit regime: at gamma = 1e-3 the finite-gamma ratio is still ~1.61
  TightConstructionParams params;
  params.gamma = std::exp(-100.0);
  params.eps = 0.05;
  params.eps1 = 0.05;
  const auto construction = prop1_instance(params);
  const auto eval = evaluate_tight_construction(construction);
  rep.at_least("prop1.limit_ratio", k.at("prop1.min_ratio"), eval.ratio());
  const auto& theta = std::get<LogLCMNLModel>(construction.instance.model()).theta;
  double weight = 0.0;
  for (double t : theta) weight += t;
  rep.near("prop1.weights_sum", 1.0, weight, 1e-15);

  const double eps = 1e-6;
  const auto pair = prop2_instance(eps);
  const auto taop = rcs_optimal_assortment(pair.original, pair.r);
  const double reversed = rcs_revenue(pair.reversed, pair.r, std::vector<double>{1.0, 1.0});
  rep.near("prop2.taop_revenue", k.at("prop2.taop_revenue"), taop.revenue, 1e-12);
  rep.near("prop2.reversed_revenue", 2.0 - eps, reversed, 1e-12);
  rep.near("prop2.ratio_limit", k.at("prop2.ratio_limit"), reversed / taop.revenue, 1e-5);
  const std::vector<double> lambda{1.0, eps};
  const std::vector<double> r{1.0, 1.0 / eps};
  rep.near("prop2.best_order_H", 2.0 - eps, best_order_revenue(lambda, r).value(), 1e-9);
  rep.near("prop2.worst_order_G", 1.0, worst_order_revenue(lambda, r), 1e-12);
}

void omega_checks(const PaperConstants& k, Report& rep) {
  const double alpha = k.at("omega.limit_alpha");
  rep.near("omega.limit", 1.0 - std::log(alpha), omega(1000000, alpha), 1e-3);
  bool monotone = true;
  for (std::size_t n = 2; n <= 500; ++n) {
    if (omega(n, alpha) < omega(n - 1, alpha)) monotone = false;
  }
  rep.flag("omega.monotone_in_n", "non-decreasing for n <= 500", monotone ? "yes" : "no",
           monotone);
}

void sandwich_checks(Report& rep, const PaperCheckOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  std::size_t chain = 0, thm2 = 0, lp = 0;
  double worst_chain = -kInf, worst_thm2 = -kInf, worst_lp = -kInf;
  for (std::size_t t = 0; t < opt.random_instances; ++t) {
    GeneratorConfig g;
    g.n = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
    g.m = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
    g.epsilon = std::uniform_real_distribution<double>(0.05, 1.0)(rng);
    g.alpha_target = std::uniform_real_distribution<double>(0.01, 0.9)(rng);
    g.price_dist = all_price_dists()[t % all_price_dists().size()];
    g.alignment = all_alignments()[t % all_alignments().size()];
    g.seed = rng();
    const auto inst = gen_lcmnl(g);
    const double ro = revenue_ordered(inst).revenue;
    const double taop = enumerate_taop(inst, {kDefaultEnumCap, 1}).revenue;
    const double praop = praop_upper(inst);
    const auto spread = revenue_spread(inst.r());
    const double guarantee = omega(spread.positive, spread.alpha) * ro;
    const double slack = std::max(taop - praop, praop - guarantee);
    worst_chain = std::max(worst_chain, slack);
    if (slack <= 1e-7) ++chain;

    GeneratorConfig small = g;
    small.n = std::min<std::size_t>(g.n, 3);
    small.m = std::min<std::size_t>(g.m, 4);
    const auto tiny = gen_lcmnl(small);
    const double grid = grid_oracle_raop(tiny, 51, {{}, 1}).revenue;
    const double taop_tiny = enumerate_taop(tiny, {kDefaultEnumCap, 1}).revenue;
    const double gap2 = grid - static_cast<double>(small.m) * taop_tiny;
    worst_thm2 = std::max(worst_thm2, gap2);
    if (gap2 <= 1e-6) ++thm2;
    const auto bound = lp_upper(tiny, LpVariant::Corrected);
    const double gap_lp = bound.bound ? grid - *bound.bound : kInf;
    worst_lp = std::max(worst_lp, gap_lp);
    if (gap_lp <= 1e-6) ++lp;
  }
  const auto total = std::to_string(opt.random_instances);
  rep.flag("bounds.taop_le_praop_le_omega_ro", total + "/" + total,
           std::to_string(chain) + "/" + total + " (worst slack " + num(worst_chain) + ")",
           chain == opt.random_instances);
  rep.flag("bounds.grid_le_m_taop", total + "/" + total,
           std::to_string(thm2) + "/" + total + " (worst slack " + num(worst_thm2) + ")",
           thm2 == opt.random_instances);
  rep.flag("bounds.corrected_lp_ge_grid", total + "/" + total,
           std::to_string(lp) + "/" + total + " (worst slack " + num(worst_lp) + ")",
           lp == opt.random_instances);
}

void rcs_checks(Report& rep, const PaperCheckOptions& opt) {
  std::mt19937_64 rng(opt.seed + 1);
  std::uniform_real_distribution<double> unit(1e-3, 1.0);
  std::size_t ok = 0;
  double worst = -kInf;
  for (std::size_t t = 0; t < 1000; ++t) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 12)(rng);
    std::vector<double> lambda(n), r(n);
    for (auto& l : lambda) l = unit(rng);
    for (auto& v : r) v = unit(rng) * 10.0;
    std::sort(r.begin(), r.end());
    const double h = best_order_revenue(lambda, r).value();
    const double g = worst_order_revenue(lambda, r);
    const double slack = h / g - (2.0 - lambda.back());
    worst = std::max(worst, slack);
    if (slack <= 1e-9) ++ok;
  }
  rep.flag("rcs.best_over_worst_le_2_minus_lambda_n", "1000/1000",
           std::to_string(ok) + "/1000 (worst slack " + num(worst) + ")", ok == 1000);
}

}  // namespace

std::vector<CheckOutcome> run_paper_checks(const PaperConstants& constants,
                                           const PaperCheckOptions& options) {
  Report rep;
  example_checks(constants, rep, options.threads);
  construction_checks(constants, rep);
  omega_checks(constants, rep);
  sandwich_checks(rep, options);
  rcs_checks(rep, options);
  return rep.take();
}

}  // namespace raop
