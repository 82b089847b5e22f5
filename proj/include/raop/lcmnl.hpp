#pragma once

// Multinomial logit and latent-class MNL evaluation, in linear attraction
// scale and in log scale.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "raop/types.hpp"

namespace raop {

// One MNL customer segment. v_i = exp(u_i) > 0, v0 > 0 is the outside option.
struct MNLSegment {
  double v0 = 1.0;
  std::vector<double> v;
};

struct LCMNLModel {
  std::vector<MNLSegment> segments;
  std::vector<double> theta;

  std::size_t num_products() const { return segments.empty() ? 0 : segments.front().v.size(); }
  std::size_t num_segments() const { return segments.size(); }
  // Throws InvalidInstance on non-positive attractions, ragged segments or
  // weights that do not sum to one within 1e-12.
  void validate() const;
};

// Natural-log attractions. -infinity entries are excluded products.
struct LogAttraction {
  double log_v0 = 0.0;
  std::vector<double> log_v;
};

struct LogLCMNLModel {
  std::vector<LogAttraction> segments;
  std::vector<double> theta;

  std::size_t num_products() const {
    return segments.empty() ? 0 : segments.front().log_v.size();
  }
  std::size_t num_segments() const { return segments.size(); }
  void validate() const;
};

// |log attraction| above this switches evaluation to the log-sum-exp path.
inline constexpr double kLogSpaceThreshold = 500.0;

ChoiceProbabilities mnl_probabilities(const MNLSegment& seg, std::span<const double> x);
double mnl_revenue(const MNLSegment& seg, std::span<const double> r, std::span<const double> x);

ChoiceProbabilities lcmnl_probabilities(const LCMNLModel& model, std::span<const double> x);
double lcmnl_revenue(const LCMNLModel& model, std::span<const double> r,
                     std::span<const double> x);

// Component i is p_i(x) * (r_i - R(x)) for offered products and 0 otherwise.
// This is dR/du_i with u_i = ln v_i (equivalently v_i * dR/dv_i); its sign
// is the sign of dR/dv_i.
std::vector<double> mnl_revenue_gradient_v(const MNLSegment& seg, std::span<const double> r,
                                           std::span<const double> x);

ChoiceProbabilities log_mnl_probabilities(const LogAttraction& seg, std::span<const double> x);
ChoiceProbabilities lcmnl_probabilities_logspace(const LogLCMNLModel& model,
                                                 std::span<const double> x);
double lcmnl_revenue_logspace(const LogLCMNLModel& model, std::span<const double> r,
                              std::span<const double> x);

// Same as lcmnl_revenue_logspace but the refinement is given as ln(x_i),
// so levels far below the double range stay representable. -inf excludes.
double lcmnl_revenue_log_refined(const LogLCMNLModel& model, std::span<const double> r,
                                 std::span<const double> log_x);

LogLCMNLModel to_log_scale(const LCMNLModel& model);
// nullopt when some |log attraction| exceeds kLogSpaceThreshold.
std::optional<LCMNLModel> to_linear_scale(const LogLCMNLModel& model);
bool needs_log_space(const LogLCMNLModel& model);

}  // namespace raop
