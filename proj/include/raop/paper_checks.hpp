#pragma once

// Release gate: reconstructs the worked examples and tight constructions and
// runs the bound sandwich suites, reporting expected vs observed per check.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace raop {

// Published reference values. Any of them can be overridden by name, which
// is how the fault-injection test tampers with a single constant.
struct PaperConstants {
  std::map<std::string, double> values{
      {"example1.taop_revenue", 1.05},
      {"example1.raop_revenue", 1.75},
      {"example1.taop_surplus", 0.45},
      {"example1.raop_surplus", 1.41},
      {"example2.taop_revenue", 66.24},
      {"example2.raop_revenue", 71.06},
      {"example2.tolerance", 0.05},
      {"prop1.min_ratio", 2.5},
      {"prop2.taop_revenue", 1.0},
      {"prop2.ratio_limit", 2.0},
      {"omega.limit_alpha", 0.01},
  };
  double at(const std::string& name) const;
  // Throws Error for unknown names.
  void set(const std::string& name, double value);
};

struct CheckOutcome {
  std::string name;
  std::string expected;
  std::string observed;
  bool pass = false;
};

struct PaperCheckOptions {
  std::uint64_t seed = 20210101;
  std::size_t random_instances = 200;
  int threads = 0;
};

std::vector<CheckOutcome> run_paper_checks(const PaperConstants& constants = {},
                                           const PaperCheckOptions& options = {});

}  // namespace raop
