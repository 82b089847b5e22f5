#include "raop/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "raop/taop.hpp"

namespace raop {

double omega(std::size_t n, double alpha) {
  if (n == 0) throw InvalidRatio("omega needs n >= 1");
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw InvalidRatio("omega needs 0 < alpha <= 1, got " + std::to_string(alpha));
  }
  if (n == 1) return 1.0;
  const double k = static_cast<double>(n - 1);
  return 1.0 + k * -std::expm1(std::log(alpha) / k);
}

std::optional<double> eta(double q1, double qn) {
  if (!(q1 >= 0.0 && q1 <= qn && qn <= 1.0)) {
    throw InvalidRatio("eta needs 0 <= q1 <= qn <= 1");
  }
  if (q1 == 0.0) return std::nullopt;
  return 1.0 + std::log(qn / q1);
}

RevenueSpread revenue_spread(std::span<const double> r) {
  RevenueSpread s;
  std::set<double> values;
  double lo = kInf;
  double hi = 0.0;
  for (double ri : r) {
    if (ri <= 0.0) continue;
    ++s.positive;
    values.insert(ri);
    lo = std::min(lo, ri);
    hi = std::max(hi, ri);
  }
  s.distinct = values.size();
  if (s.positive > 0) s.alpha = lo / hi;
  return s;
}

namespace {

struct SegmentOptimum {
  double revenue = 0.0;
  ChoiceProbabilities probabilities;
};

// Revenue-ordered scan of one log-scale segment.
SegmentOptimum log_segment_optimum(const LogAttraction& seg, std::span<const double> r) {
  const LogLCMNLModel single{{seg}, {1.0}};
  const auto order = revenue_order(r);
  SegmentOptimum best{0.0, log_mnl_probabilities(seg, RefinementVector(r.size(), 0.0))};
  for (std::size_t k = 1; k <= r.size(); ++k) {
    const auto x = revenue_ordered_set(order, k);
    const double value = lcmnl_revenue_logspace(single, r, x);
    if (value > best.revenue) best = {value, log_mnl_probabilities(seg, x)};
  }
  return best;
}

std::vector<SegmentOptimum> segment_optima(const Instance& instance) {
  std::vector<SegmentOptimum> out;
  if (const auto* model = instance.linear_lcmnl()) {
    for (const auto& seg : model->segments) {
      const auto res = mnl_segment_optimum(seg, instance.r());
      out.push_back({res.revenue, res.probabilities});
    }
  } else if (const auto* log_model = std::get_if<LogLCMNLModel>(&instance.model())) {
    for (const auto& seg : log_model->segments) {
      out.push_back(log_segment_optimum(seg, instance.r()));
    }
  } else {
    throw InvalidInstance("the personalized bound is only offered for LC-MNL models");
  }
  return out;
}

const std::vector<double>& segment_weights(const Instance& instance) {
  if (const auto* model = instance.linear_lcmnl()) return model->theta;
  return std::get<LogLCMNLModel>(instance.model()).theta;
}

}  // namespace

double praop_upper(const Instance& instance) {
  const auto optima = segment_optima(instance);
  const auto& theta = segment_weights(instance);
  double total = 0.0;
  for (std::size_t j = 0; j < optima.size(); ++j) total += theta[j] * optima[j].revenue;
  return total;
}

PersonalizedSales personalized_sales(const Instance& instance) {
  const auto optima = segment_optima(instance);
  const auto& theta = segment_weights(instance);
  PersonalizedSales s;
  if (instance.n() == 0) return s;
  const std::size_t top = revenue_order(instance.r()).front();
  for (std::size_t j = 0; j < optima.size(); ++j) {
    s.q1 += theta[j] * optima[j].probabilities.product[top];
    s.qn += theta[j] * (1.0 - optima[j].probabilities.no_purchase);
  }
  s.qn = std::min(s.qn, 1.0);
  s.q1 = std::min(s.q1, s.qn);
  return s;
}

std::string to_string(LpVariant variant) {
  return variant == LpVariant::Printed ? "printed" : "corrected";
}

LpVariant lp_variant_from_string(const std::string& name) {
  if (name == "printed") return LpVariant::Printed;
  if (name == "corrected") return LpVariant::Corrected;
  throw Error("unknown LP variant '" + name + "' (expected printed or corrected)");
}

LinearProgram build_bound_lp(const LCMNLModel& model, std::span<const double> r,
                             LpVariant variant) {
  const std::size_t n = model.num_products();
  const std::size_t m = model.num_segments();
  if (r.size() != n) throw InvalidInstance("revenue vector and model sizes differ");
  const std::size_t vars = n + m + n * m;
  auto xi = [](std::size_t i) { return i; };
  auto yj = [n](std::size_t j) { return n + j; };
  auto zij = [n, m](std::size_t i, std::size_t j) { return n + m + j * n + i; };

  LinearProgram lp(vars);
  for (std::size_t i = 0; i < n; ++i) lp.upper[xi(i)] = 1.0;
  for (std::size_t j = 0; j < m; ++j) {
    const auto& seg = model.segments[j];
    const double total = seg.v0 + std::accumulate(seg.v.begin(), seg.v.end(), 0.0);
    const double y_lo = 1.0 / total;
    const double y_hi = 1.0 / seg.v0;
    if (variant == LpVariant::Corrected) {
      lp.lower[yj(j)] = y_lo;
      lp.upper[yj(j)] = y_hi;
    }
    std::vector<double> balance(vars, 0.0);
    balance[yj(j)] = seg.v0;
    for (std::size_t i = 0; i < n; ++i) {
      lp.objective[zij(i, j)] = model.theta[j] * r[i] * seg.v[i];
      balance[zij(i, j)] = seg.v[i];
    }
    lp.add_row(std::move(balance), RowSense::Equal, 1.0);

    for (std::size_t i = 0; i < n; ++i) {
      auto link = [&](double cx, double cy, RowSense sense, double b) {
        std::vector<double> row(vars, 0.0);
        row[zij(i, j)] = 1.0;
        row[xi(i)] = cx;
        row[yj(j)] = cy;
        lp.add_row(std::move(row), sense, b);
      };
      if (variant == LpVariant::Corrected) {
        link(-y_lo, 0.0, RowSense::GreaterEqual, 0.0);     // z >= yL x
        link(-y_hi, -1.0, RowSense::GreaterEqual, -y_hi);  // z >= y + yU x - yU
        link(-y_lo, -1.0, RowSense::LessEqual, -y_lo);     // z <= y + yL x - yL
        link(-y_hi, 0.0, RowSense::LessEqual, 0.0);        // z <= yU x
      } else {
        link(-1.0, 0.0, RowSense::GreaterEqual, 0.0);                // z >= x
        link(-1.0 / seg.v0, 0.0, RowSense::LessEqual, 0.0);          // z <= x / v0
        link(-1.0, -1.0, RowSense::LessEqual, -1.0);                 // z <= x + y - 1
        link(-1.0 / seg.v0, -1.0, RowSense::GreaterEqual, -1.0 / seg.v0);  // z >= (x-1)/v0 + y
      }
    }
  }
  return lp;
}

LpBound lp_upper(const Instance& instance, LpVariant variant) {
  LpBound out;
  const LCMNLModel* model = instance.linear_lcmnl();
  if (model == nullptr) {
    out.diagnostic = "LP bound needs an LC-MNL model with linear-scale attractions";
    return out;
  }
  const std::size_t n = instance.n();
  const std::size_t m = model->num_segments();
  const auto sol = solve_lp(build_bound_lp(*model, instance.r(), variant));
  out.status = sol.status;
  if (sol.status != LpStatus::Optimal) {
    out.diagnostic = "LP " + to_string(sol.status);
    return out;
  }
  out.bound = sol.objective;
  out.x.assign(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(n));
  out.y.assign(sol.x.begin() + static_cast<std::ptrdiff_t>(n),
               sol.x.begin() + static_cast<std::ptrdiff_t>(n + m));
  out.z.assign(m, std::vector<double>(n));
  double gap = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      out.z[j][i] = sol.x[n + m + j * n + i];
      gap = std::max(gap, std::abs(out.z[j][i] - out.x[i] * out.y[j]));
    }
  }
  out.exact_extraction = gap <= kExtractionTol;
  if (out.exact_extraction) {
    RefinementVector x(out.x);
    for (double& xi : x) xi = std::clamp(xi, 0.0, 1.0);
    out.extracted_revenue = expected_revenue(instance, x);
  }
  return out;
}

BoundReport compute_bounds(const Instance& instance, LpVariant variant) {
  BoundReport rep;
  rep.lp_variant = variant;
  rep.revenue_ordered = revenue_ordered(instance).revenue;
  const auto spread = revenue_spread(instance.r());
  rep.alpha = spread.alpha;
  rep.omega_n = spread.positive > 0 ? omega(spread.positive, spread.alpha) : 1.0;
  rep.omega_distinct = spread.distinct > 0 ? omega(spread.distinct, spread.alpha) : 1.0;
  if (instance.is_lcmnl()) {
    rep.praop = praop_upper(instance);
    const auto sales = personalized_sales(instance);
    rep.q1 = sales.q1;
    rep.qn = sales.qn;
    rep.eta = eta(sales.q1, sales.qn);
    const auto lp = lp_upper(instance, variant);
    rep.lp = lp.bound;
    rep.lp_status = lp.bound ? to_string(lp.status) : lp.diagnostic;
    rep.exact_extraction = lp.exact_extraction;
    rep.extracted_revenue = lp.extracted_revenue;
  } else {
    rep.lp_status = "LP bound needs an LC-MNL model";
  }
  return rep;
}

nlohmann::json bound_report_to_json(const BoundReport& rep) {
  auto opt = [](const std::optional<double>& v) -> nlohmann::json {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  return {{"revenue_ordered", rep.revenue_ordered},
          {"alpha", rep.alpha},
          {"omega_n", rep.omega_n},
          {"omega_distinct", rep.omega_distinct},
          {"eta", opt(rep.eta)},
          {"q1", opt(rep.q1)},
          {"qn", opt(rep.qn)},
          {"praop", opt(rep.praop)},
          {"lp", opt(rep.lp)},
          {"lp_variant", to_string(rep.lp_variant)},
          {"lp_status", rep.lp_status},
          {"exact_extraction", rep.exact_extraction},
          {"extracted_revenue", opt(rep.extracted_revenue)}};
}

}  // namespace raop
