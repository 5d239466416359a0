#include "rotecon/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rotecon {

namespace {

using nlohmann::json;

std::string join(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

const json& require(const json& node, const std::string& base, const std::string& key) {
  auto it = node.find(key);
  if (it == node.end()) throw ParseError(join(base, key), "missing required field");
  return *it;
}

double number(const json& node, const std::string& path) {
  if (!node.is_number()) throw ParseError(path, "expected a number");
  return node.get<double>();
}

double number_field(const json& node, const std::string& base, const std::string& key) {
  return number(require(node, base, key), join(base, key));
}

std::string string_field(const json& node, const std::string& base, const std::string& key) {
  const json& v = require(node, base, key);
  if (!v.is_string()) throw ParseError(join(base, key), "expected a string");
  return v.get<std::string>();
}

void expect_object(const json& node, const std::string& path) {
  if (!node.is_object()) throw ParseError(path, "expected an object");
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

YieldParams parse_yield(const json& node) {
  expect_object(node, "yield");
  YieldParams params;
  params.asymptote = number_field(node, "yield", "asymptote");
  params.rate = number_field(node, "yield", "rate");
  params.shape = number_field(node, "yield", "shape");
  if (node.contains("label")) {
    const json& v = node["label"];
    if (!v.is_string()) throw ParseError("yield.label", "expected a string");
    params.label = v.get<std::string>();
  }
  return params;
}

EconParams parse_econ(const json& node, const YieldParams& yield) {
  expect_object(node, "economics");
  EconParams econ;
  econ.stumpage_price = number_field(node, "economics", "stumpage_price");
  econ.establishment_cost = number_field(node, "economics", "establishment_cost");
  econ.annual_overhead = node.contains("annual_overhead")
                             ? number_field(node, "economics", "annual_overhead")
                             : 0.0;
  if (node.contains("bare_land_value")) {
    econ.bare_land_value = number_field(node, "economics", "bare_land_value");
  } else {
    // Site convention: land under the productive stand is worth the cost of
    // establishing it; half that on the poorer site.
    const std::string label = lower(yield.label);
    if (label == "high") {
      econ.bare_land_value = econ.establishment_cost;
    } else if (label == "low") {
      econ.bare_land_value = econ.establishment_cost / 2.0;
    } else {
      throw ValidationError(
          "economics.bare_land_value is required unless the yield label is \"high\" or "
          "\"low\"");
    }
  }
  return econ;
}

ThinningResponse parse_response(const json& node, const std::string& base) {
  expect_object(node, base);
  ThinningResponse response;
  const std::string model = lower(string_field(node, base, "model"));
  if (model == "constant") {
    response.model = ThinningModel::Constant;
    response.boost =
        node.contains("boost") ? number_field(node, base, "boost") : 0.0;
  } else if (model == "decaying") {
    response.model = ThinningModel::Decaying;
    response.decay_rate = number_field(node, base, "decay_rate");
  } else {
    throw ParseError(join(base, "model"), "expected \"constant\" or \"decaying\"");
  }
  return response;
}

ManagementPlan parse_plan(const json& node) {
  expect_object(node, "plan");
  ManagementPlan plan;
  plan.rotation = number_field(node, "plan", "rotation");
  if (node.contains("thinnings")) {
    const json& list = node["thinnings"];
    if (!list.is_array()) throw ParseError("plan.thinnings", "expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string base = "plan.thinnings[" + std::to_string(i) + "]";
      expect_object(list[i], base);
      ThinningEvent ev;
      ev.age = number_field(list[i], base, "age");
      ev.removed = number_field(list[i], base, "removed");
      plan.thinnings.push_back(ev);
    }
  }
  if (node.contains("response")) {
    plan.response = parse_response(node["response"], "plan.response");
  }
  return plan;
}

PriceProcess parse_prices(const json& node) {
  expect_object(node, "prices");
  PriceProcess process;
  process.initial_level = number_field(node, "prices", "initial_level");
  process.coefficient = number_field(node, "prices", "coefficient");
  process.time_scale = node.contains("time_scale")
                           ? number_field(node, "prices", "time_scale")
                           : 1.0;
  process.origin = node.contains("origin") ? number_field(node, "prices", "origin") : 0.0;
  return process;
}

}  // namespace

void Scenario::validate() const {
  yield.validate();
  econ.validate();
  if (plan) plan->validate();
  if (prices) prices->validate();
}

Scenario parse_scenario(const std::string& text) {
  json root = json::parse(text, nullptr, false);
  if (root.is_discarded()) throw ParseError("", "scenario is not valid JSON");
  expect_object(root, "");

  Scenario scenario;
  if (root.contains("name")) {
    if (!root["name"].is_string()) throw ParseError("name", "expected a string");
    scenario.name = root["name"].get<std::string>();
  }
  scenario.yield = parse_yield(require(root, "", "yield"));
  scenario.econ = parse_econ(require(root, "", "economics"), scenario.yield);
  if (root.contains("plan")) scenario.plan = parse_plan(root["plan"]);
  if (root.contains("prices")) scenario.prices = parse_prices(root["prices"]);
  scenario.validate();
  return scenario;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("cannot read scenario file: " + path);
  return parse_scenario(buffer.str());
}

}  // namespace rotecon
