#pragma once

// Upper bounds on the refined optimum: the omega_n and eta guarantees
// relative to the best revenue-ordered assortment, the personalized bound
// (each segment served its own optimum) and an LP relaxation of the LC-MNL
// fractional program.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "raop/instance.hpp"
#include "raop/lp.hpp"

namespace raop {

// n - (n-1) alpha^{1/(n-1)}, computed as 1 + (n-1)(1 - alpha^{1/(n-1)}) with
// expm1 so large n keeps full precision. Throws InvalidRatio unless n >= 1
// and 0 < alpha <= 1.
double omega(std::size_t n, double alpha);

// 1 + ln(qn/q1); nullopt when q1 == 0. Throws InvalidRatio unless
// 0 <= q1 <= qn <= 1.
std::optional<double> eta(double q1, double qn);

// r_min / r_max over products with positive revenue, and their count.
struct RevenueSpread {
  double alpha = 1.0;
  std::size_t positive = 0;
  std::size_t distinct = 0;
};
RevenueSpread revenue_spread(std::span<const double> r);

// Sum over segments of theta_j times the segment's own optimum. LC-MNL only
// (linear or log scale); throws InvalidInstance for other models.
double praop_upper(const Instance& instance);

// Q1 (sales of the highest-revenue product) and Qn (total sales) when each
// segment is offered its own revenue-ordered optimum.
struct PersonalizedSales {
  double q1 = 0.0;
  double qn = 0.0;
};
PersonalizedSales personalized_sales(const Instance& instance);

enum class LpVariant { Printed, Corrected };
std::string to_string(LpVariant variant);
LpVariant lp_variant_from_string(const std::string& name);

inline constexpr double kExtractionTol = 1e-7;

struct LpBound {
  std::optional<double> bound;  // absent when the LP is not solved to optimality
  LpStatus status = LpStatus::Infeasible;
  std::string diagnostic;
  bool exact_extraction = false;
  std::optional<double> extracted_revenue;
  std::vector<double> x, y;
  std::vector<std::vector<double>> z;  // z[j][i]
};

// Variables x in [0,1]^n, y_j >= 0 (y_j in [1/(v0j + sum_i vij), 1/v0j] for
// the corrected variant) and z_ij >= 0, maximizing sum_j theta_j sum_i r_i
// v_ij z_ij subject to v0j y_j + sum_i v_ij z_ij = 1 and four linking rows
// per (i, j). Corrected links are the McCormick envelope of z = x y; printed
// links are z >= x, z <= x / v0, z <= x + y - 1, z >= (x - 1) / v0 + y.
LinearProgram build_bound_lp(const LCMNLModel& model, std::span<const double> r,
                             LpVariant variant);
// Needs linear-scale LC-MNL; other models give an absent bound with a
// diagnostic.
LpBound lp_upper(const Instance& instance, LpVariant variant = LpVariant::Corrected);

struct BoundReport {
  double revenue_ordered = 0.0;
  double alpha = 1.0;
  double omega_n = 1.0;
  double omega_distinct = 1.0;  // omega over the distinct positive revenue values
  std::optional<double> eta;
  std::optional<double> q1, qn;
  std::optional<double> praop;
  std::optional<double> lp;
  LpVariant lp_variant = LpVariant::Corrected;
  std::string lp_status;
  bool exact_extraction = false;
  std::optional<double> extracted_revenue;
};

BoundReport compute_bounds(const Instance& instance, LpVariant variant = LpVariant::Corrected);
nlohmann::json bound_report_to_json(const BoundReport& report);

}  // namespace raop
