#include "raop/instance_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

namespace raop {

using nlohmann::json;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

json log_value(double v) { return v == kNegInf ? json(nullptr) : json(v); }
double log_value_from(const json& j) { return j.is_null() ? kNegInf : j.get<double>(); }

bool is_number_array(const json& j) {
  if (!j.is_array()) return false;
  for (const auto& e : j) {
    if (!e.is_number()) return false;
  }
  return true;
}

bool is_log_array(const json& j) {
  if (!j.is_array()) return false;
  for (const auto& e : j) {
    if (!e.is_number() && !e.is_null()) return false;
  }
  return true;
}

void validate_lcmnl_params(const json& p, std::size_t n, std::vector<std::string>& errors) {
  const bool log_scale = p.contains("scale") && p["scale"] == "log";
  if (p.contains("scale") && p["scale"] != "log" && p["scale"] != "linear") {
    errors.emplace_back("model.params.scale must be \"linear\" or \"log\"");
  }
  for (const char* key : {"v0", "v", "theta"}) {
    if (!p.contains(key)) errors.push_back(std::string("model.params.") + key + " missing");
  }
  if (!errors.empty()) return;
  if (!is_number_array(p["v0"])) errors.emplace_back("model.params.v0 must be a number array");
  if (!is_number_array(p["theta"])) errors.emplace_back("model.params.theta must be a number array");
  if (!p["v"].is_array()) {
    errors.emplace_back("model.params.v must be an array of rows");
    return;
  }
  const std::size_t m = p["v"].size();
  if (p["v0"].size() != m || p["theta"].size() != m) {
    errors.emplace_back("model.params v0, v and theta must have one entry per segment");
  }
  for (const auto& row : p["v"]) {
    if (!(log_scale ? is_log_array(row) : is_number_array(row)) || row.size() != n) {
      errors.emplace_back("model.params.v rows must hold n attractions");
      break;
    }
  }
}

void validate_rcs_params(const json& p, std::size_t n, std::vector<std::string>& errors) {
  if (!p.contains("lambda") || !is_number_array(p["lambda"]) || p["lambda"].size() != n) {
    errors.emplace_back("model.params.lambda must hold n numbers");
  }
  if (!p.contains("pref") || !p["pref"].is_array() || p["pref"].size() != n) {
    errors.emplace_back("model.params.pref must hold n product indices");
  } else {
    for (const auto& e : p["pref"]) {
      if (!e.is_number_unsigned()) {
        errors.emplace_back("model.params.pref entries must be nonnegative integers");
        break;
      }
    }
  }
}

}  // namespace

json domain_to_json(const RefinementDomain& domain) {
  json out = json::array();
  for (const auto& spec : domain.per_product()) {
    if (std::holds_alternative<Binary>(spec)) {
      out.push_back("binary");
    } else if (std::holds_alternative<FullInterval>(spec)) {
      out.push_back("interval");
    } else {
      out.push_back(std::get<FiniteSet>(spec).values);
    }
  }
  return out;
}

RefinementDomain domain_from_json(const json& j) {
  if (!j.is_array()) throw InvalidInstance("domain must be an array");
  std::vector<DomainSpec> specs;
  for (const auto& e : j) {
    if (e == "binary") {
      specs.emplace_back(Binary{});
    } else if (e == "interval") {
      specs.emplace_back(FullInterval{});
    } else if (is_number_array(e)) {
      specs.emplace_back(make_finite_set(e.get<std::vector<double>>()));
    } else {
      throw InvalidInstance("domain entries must be \"binary\", \"interval\" or a level array");
    }
  }
  return RefinementDomain(std::move(specs));
}

std::vector<std::string> validate_instance_json(const json& j) {
  std::vector<std::string> errors;
  if (!j.is_object()) return {"instance must be a JSON object"};
  for (const char* key : {"n", "r", "domain", "model"}) {
    if (!j.contains(key)) errors.push_back(std::string(key) + " missing");
  }
  if (!errors.empty()) return errors;
  if (!j["n"].is_number_unsigned()) return {"n must be a nonnegative integer"};
  const auto n = j["n"].get<std::size_t>();
  if (!is_number_array(j["r"]) || j["r"].size() != n) errors.emplace_back("r must hold n numbers");
  if (!j["domain"].is_array() || j["domain"].size() != n) {
    errors.emplace_back("domain must hold n entries");
  } else {
    for (const auto& e : j["domain"]) {
      if (!(e == "binary" || e == "interval" || is_number_array(e))) {
        errors.emplace_back("domain entries must be \"binary\", \"interval\" or a level array");
        break;
      }
      if (e.is_array()) {
        const auto levels = e.get<std::vector<double>>();
        if (!std::is_sorted(levels.begin(), levels.end()) || levels.empty() ||
            levels.front() != 0.0 || levels.back() != 1.0) {
          errors.emplace_back("finite domains must be sorted and contain 0 and 1");
          break;
        }
      }
    }
  }
  if (j.contains("metadata") && !j["metadata"].is_object()) {
    errors.emplace_back("metadata must be an object");
  }
  const auto& model = j["model"];
  if (!model.is_object() || !model.contains("kind") || !model.contains("params") ||
      !model["params"].is_object()) {
    errors.emplace_back("model must be {kind, params}");
    return errors;
  }
  if (model["kind"] == "lcmnl") {
    validate_lcmnl_params(model["params"], n, errors);
  } else if (model["kind"] == "rcs") {
    validate_rcs_params(model["params"], n, errors);
  } else {
    errors.emplace_back("model.kind must be \"lcmnl\" or \"rcs\"");
  }
  return errors;
}

json instance_to_json(const Instance& instance) {
  json j;
  j["n"] = instance.n();
  j["r"] = instance.r();
  j["domain"] = domain_to_json(instance.domain());
  json model;
  if (const auto* m = std::get_if<LCMNLModel>(&instance.model())) {
    model["kind"] = "lcmnl";
    json v0 = json::array(), v = json::array();
    for (const auto& seg : m->segments) {
      v0.push_back(seg.v0);
      v.push_back(seg.v);
    }
    model["params"] = {{"v0", v0}, {"v", v}, {"theta", m->theta}, {"scale", "linear"}};
  } else if (const auto* lm = std::get_if<LogLCMNLModel>(&instance.model())) {
    model["kind"] = "lcmnl";
    json v0 = json::array(), v = json::array();
    for (const auto& seg : lm->segments) {
      v0.push_back(seg.log_v0);
      json row = json::array();
      for (double lv : seg.log_v) row.push_back(log_value(lv));
      v.push_back(row);
    }
    model["params"] = {{"v0", v0}, {"v", v}, {"theta", lm->theta}, {"scale", "log"}};
  } else {
    const auto& rm = std::get<RCSModel>(instance.model());
    model["kind"] = "rcs";
    model["params"] = {
        {"lambda", rm.lambda}, {"pref", rm.pref}, {"convention", kPrefConvention}};
  }
  j["model"] = model;
  j["metadata"] = instance.metadata().is_null() ? json::object() : instance.metadata();
  return j;
}

Instance instance_from_json(const json& j) {
  if (const auto errors = validate_instance_json(j); !errors.empty()) {
    throw InvalidInstance("invalid instance JSON: " + errors.front());
  }
  auto r = j["r"].get<RevenueVector>();
  auto domain = domain_from_json(j["domain"]);
  const auto& p = j["model"]["params"];
  ChoiceModelSpec model;
  if (j["model"]["kind"] == "lcmnl") {
    const bool log_scale = p.value("scale", std::string("linear")) == "log";
    const auto theta = p["theta"].get<std::vector<double>>();
    if (log_scale) {
      LogLCMNLModel lm;
      lm.theta = theta;
      for (std::size_t s = 0; s < p["v"].size(); ++s) {
        LogAttraction la;
        la.log_v0 = p["v0"][s].get<double>();
        for (const auto& e : p["v"][s]) la.log_v.push_back(log_value_from(e));
        lm.segments.push_back(std::move(la));
      }
      model = std::move(lm);
    } else {
      LCMNLModel m;
      m.theta = theta;
      for (std::size_t s = 0; s < p["v"].size(); ++s) {
        m.segments.push_back(MNLSegment{p["v0"][s].get<double>(), p["v"][s].get<std::vector<double>>()});
      }
      model = std::move(m);
    }
  } else {
    RCSModel rm;
    rm.lambda = p["lambda"].get<std::vector<double>>();
    rm.pref = p["pref"].get<std::vector<std::size_t>>();
    model = std::move(rm);
  }
  return Instance(std::move(r), std::move(domain), std::move(model),
                  j.value("metadata", json::object()));
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open instance file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InvalidInstance(path.string() + ": " + e.what());
  }
  return instance_from_json(j);
}

void save_instance(const std::filesystem::path& path, const Instance& instance) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write instance file " + path.string());
  out << instance_to_json(instance).dump(2) << '\n';
  if (!out) throw Error("write failed for " + path.string());
}

json solve_result_to_json(const SolveResult& result) {
  return {{"solver", result.solver},
          {"x", result.x},
          {"revenue", result.revenue},
          {"probabilities", result.probabilities.product},
          {"no_purchase", result.probabilities.no_purchase},
          {"elapsed_seconds", result.elapsed_seconds}};
}

}  // namespace raop
