#pragma once

// JSON format for instances and solver results.
//
// Instance document:
//   {
//     "n": 3,
//     "r": [100, 65, 58],
//     "domain": ["binary", "interval", [0, 0.8, 1]],
//     "model": {"kind": "lcmnl",
//               "params": {"v0": [..m..], "v": [[..n..], ...m rows],
//                          "theta": [..m..], "scale": "linear" | "log"}},
//     "metadata": {...}
//   }
// With "scale": "log", v0 and v hold natural-log attractions and null marks an
// excluded product. RCS models use
//   {"kind": "rcs", "params": {"lambda": [..n..], "pref": [..n..],
//                              "convention": "later index in pref = more preferred"}}
// Product indices in "pref" are 0-based.

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "raop/instance.hpp"

namespace raop {

inline constexpr const char* kPrefConvention = "later index in pref = more preferred";

nlohmann::json domain_to_json(const RefinementDomain& domain);
RefinementDomain domain_from_json(const nlohmann::json& j);

nlohmann::json instance_to_json(const Instance& instance);
// Throws InvalidInstance with the first schema or model violation.
Instance instance_from_json(const nlohmann::json& j);

// Structural schema check; returns one message per violation, empty when valid.
std::vector<std::string> validate_instance_json(const nlohmann::json& j);

Instance load_instance(const std::filesystem::path& path);
void save_instance(const std::filesystem::path& path, const Instance& instance);

nlohmann::json solve_result_to_json(const SolveResult& result);

}  // namespace raop
