// Copyright 2026 The wamsplan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wamsplan/case_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <fmt/format.h>

#include "wamsplan/errors.hpp"

namespace wamsplan {

using nlohmann::json;

namespace {

void RejectUnknownKeys(const json& obj, std::initializer_list<const char*> allowed,
                       const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      throw CaseError(fmt::format("{}: unknown field \"{}\"", where, key));
    }
  }
}

const json& Require(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw CaseError(fmt::format("{}: missing field \"{}\"", where, key));
  return obj[key];
}

int AsInt(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw CaseError(where + ": expected an integer");
  return v.get<int>();
}

double AsNumber(const json& v, const std::string& where) {
  if (!v.is_number()) throw CaseError(where + ": expected a number");
  return v.get<double>();
}

bool AsBool(const json& v, const std::string& where) {
  if (!v.is_boolean()) throw CaseError(where + ": expected true or false");
  return v.get<bool>();
}

const json& AsArray(const json& v, const std::string& where) {
  if (!v.is_array()) throw CaseError(where + ": expected an array");
  return v;
}

const json& AsObject(const json& v, const std::string& where) {
  if (!v.is_object()) throw CaseError(where + ": expected an object");
  return v;
}

std::pair<int, int> AsPair(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2) throw CaseError(where + ": expected a [bus, bus] pair");
  return {AsInt(v[0], where + "[0]"), AsInt(v[1], where + "[1]")};
}

int BusKey(const std::string& key, const std::string& where) {
  try {
    std::size_t used = 0;
    const int id = std::stoi(key, &used);
    if (used == key.size()) return id;
  } catch (const std::exception&) {
  }
  throw CaseError(fmt::format("{}: key \"{}\" is not a bus id", where, key));
}

std::map<int, Money> MoneyByBus(const json& v, const std::string& where) {
  std::map<int, Money> out;
  for (const auto& [key, value] : AsObject(v, where).items()) {
    out[BusKey(key, where)] = Money::FromDollars(AsNumber(value, where + "." + key));
  }
  return out;
}

json MoneyByBusJson(const std::map<int, Money>& m) {
  json out = json::object();
  for (const auto& [bus, money] : m) out[std::to_string(bus)] = money.dollars();
  return out;
}

CaseParameters ParseParameters(const json& v) {
  const std::string where = "parameters";
  AsObject(v, where);
  RejectUnknownKeys(v,
                    {"cost_pmu", "cost_dulr", "cost_pdc", "cost_interrupt",
                     "line_reliability_default", "compression_ratio", "message_rate",
                     "channel_limit", "cost_pmu_by_bus", "cost_pdc_by_bus",
                     "cost_interrupt_by_bus", "cost_dulr_by_end"},
                    where);
  CaseParameters p;
  auto money = [&](const char* key, Money& out) {
    if (v.contains(key)) out = Money::FromDollars(AsNumber(v[key], where + "." + key));
  };
  money("cost_pmu", p.cost_pmu);
  money("cost_dulr", p.cost_dulr);
  money("cost_pdc", p.cost_pdc);
  money("cost_interrupt", p.cost_interrupt);
  if (v.contains("line_reliability_default")) {
    p.line_reliability_default =
        AsNumber(v["line_reliability_default"], where + ".line_reliability_default");
  }
  if (v.contains("compression_ratio")) {
    p.compression_ratio = AsNumber(v["compression_ratio"], where + ".compression_ratio");
  }
  if (v.contains("message_rate")) p.message_rate_bps = AsNumber(v["message_rate"], where + ".message_rate");
  if (v.contains("channel_limit")) p.channel_limit = AsInt(v["channel_limit"], where + ".channel_limit");
  if (v.contains("cost_pmu_by_bus")) p.pmu_cost_by_bus = MoneyByBus(v["cost_pmu_by_bus"], where + ".cost_pmu_by_bus");
  if (v.contains("cost_pdc_by_bus")) p.pdc_cost_by_bus = MoneyByBus(v["cost_pdc_by_bus"], where + ".cost_pdc_by_bus");
  if (v.contains("cost_interrupt_by_bus")) {
    p.interrupt_cost_by_bus = MoneyByBus(v["cost_interrupt_by_bus"], where + ".cost_interrupt_by_bus");
  }
  if (v.contains("cost_dulr_by_end")) {
    const json& list = AsArray(v["cost_dulr_by_end"], where + ".cost_dulr_by_end");
    for (std::size_t k = 0; k < list.size(); ++k) {
      const std::string at = fmt::format("{}.cost_dulr_by_end[{}]", where, k);
      AsObject(list[k], at);
      RejectUnknownKeys(list[k], {"bus", "toward", "cost"}, at);
      const int bus = AsInt(Require(list[k], "bus", at), at + ".bus");
      const int toward = AsInt(Require(list[k], "toward", at), at + ".toward");
      p.dulr_cost_by_end[{bus, toward}] = Money::FromDollars(AsNumber(Require(list[k], "cost", at), at + ".cost"));
    }
  }
  p.Validate();
  return p;
}

ContingencySpec ParseContingency(const json& v) {
  const std::string where = "options.contingency";
  AsObject(v, where);
  RejectUnknownKeys(v, {"failable", "max_order", "state_cap", "probability_floor"}, where);
  ContingencySpec spec;
  if (v.contains("failable")) {
    const json& f = v["failable"];
    if (f.is_string()) {
      const std::string mode = f.get<std::string>();
      if (mode == "non_transformer") {
        spec.mode = FailableMode::kNonTransformer;
      } else if (mode == "all") {
        spec.mode = FailableMode::kAll;
      } else {
        throw CaseError(fmt::format("{}.failable: unknown mode \"{}\"", where, mode));
      }
    } else {
      spec.mode = FailableMode::kExplicit;
      AsArray(f, where + ".failable");
      for (std::size_t k = 0; k < f.size(); ++k) {
        spec.branches.push_back(AsPair(f[k], fmt::format("{}.failable[{}]", where, k)));
      }
    }
  }
  if (v.contains("max_order")) spec.max_order = AsInt(v["max_order"], where + ".max_order");
  if (v.contains("state_cap")) {
    const int cap = AsInt(v["state_cap"], where + ".state_cap");
    if (cap < 1) throw CaseError(where + ".state_cap: must be >= 1");
    spec.state_cap = static_cast<std::size_t>(cap);
  }
  if (v.contains("probability_floor")) {
    spec.probability_floor = AsNumber(v["probability_floor"], where + ".probability_floor");
  }
  return spec;
}

PlanningOptions ParseOptions(const json& v) {
  const std::string where = "options";
  AsObject(v, where);
  RejectUnknownKeys(v,
                    {"prohibited_buses", "existing_pmus", "redundancy_degree", "channel_limit",
                     "traffic_caps", "budget", "max_unreliability", "transformer_measurements",
                     "waive_existing_interruption", "contingency"},
                    where);
  PlanningOptions o;
  if (v.contains("prohibited_buses")) {
    const json& list = AsArray(v["prohibited_buses"], where + ".prohibited_buses");
    for (std::size_t k = 0; k < list.size(); ++k) {
      o.prohibited_buses.insert(AsInt(list[k], fmt::format("{}.prohibited_buses[{}]", where, k)));
    }
  }
  if (v.contains("existing_pmus")) {
    const json& list = AsArray(v["existing_pmus"], where + ".existing_pmus");
    for (std::size_t k = 0; k < list.size(); ++k) {
      const std::string at = fmt::format("{}.existing_pmus[{}]", where, k);
      AsObject(list[k], at);
      RejectUnknownKeys(list[k], {"bus", "observes"}, at);
      ExistingPmu e;
      e.bus = AsInt(Require(list[k], "bus", at), at + ".bus");
      if (list[k].contains("observes")) {
        const json& obs = AsArray(list[k]["observes"], at + ".observes");
        for (std::size_t m = 0; m < obs.size(); ++m) {
          const int id = AsInt(obs[m], fmt::format("{}.observes[{}]", at, m));
          if (id != e.bus) e.observes.push_back(id);
        }
        std::sort(e.observes.begin(), e.observes.end());
        e.observes.erase(std::unique(e.observes.begin(), e.observes.end()), e.observes.end());
      }
      o.existing_pmus.push_back(std::move(e));
    }
    std::sort(o.existing_pmus.begin(), o.existing_pmus.end(),
              [](const ExistingPmu& a, const ExistingPmu& b) { return a.bus < b.bus; });
  }
  if (v.contains("redundancy_degree")) {
    for (const auto& [key, value] : AsObject(v["redundancy_degree"], where + ".redundancy_degree").items()) {
      o.redundancy_degree[BusKey(key, where + ".redundancy_degree")] =
          AsInt(value, where + ".redundancy_degree." + key);
    }
  }
  if (v.contains("channel_limit")) o.channel_limit = AsInt(v["channel_limit"], where + ".channel_limit");
  if (v.contains("traffic_caps")) {
    const json& list = AsArray(v["traffic_caps"], where + ".traffic_caps");
    for (std::size_t k = 0; k < list.size(); ++k) {
      const std::string at = fmt::format("{}.traffic_caps[{}]", where, k);
      AsObject(list[k], at);
      RejectUnknownKeys(list[k], {"from", "to", "max_bps"}, at);
      o.traffic_caps.push_back(TrafficCap{AsInt(Require(list[k], "from", at), at + ".from"),
                                          AsInt(Require(list[k], "to", at), at + ".to"),
                                          AsNumber(Require(list[k], "max_bps", at), at + ".max_bps")});
    }
  }
  if (v.contains("budget")) o.budget = Money::FromDollars(AsNumber(v["budget"], where + ".budget"));
  if (v.contains("max_unreliability")) {
    o.max_unreliability = AsNumber(v["max_unreliability"], where + ".max_unreliability");
  }
  if (v.contains("transformer_measurements")) {
    o.transformer_measurements = AsBool(v["transformer_measurements"], where + ".transformer_measurements");
  }
  if (v.contains("waive_existing_interruption")) {
    o.waive_existing_interruption =
        AsBool(v["waive_existing_interruption"], where + ".waive_existing_interruption");
  }
  if (v.contains("contingency")) o.contingency = ParseContingency(v["contingency"]);
  return o;
}

}  // namespace

Case LoadCaseJson(const json& doc) {
  AsObject(doc, "case");
  RejectUnknownKeys(doc,
                    {"name", "buses", "branches", "substations", "ci_topology", "controller_bus",
                     "parameters", "options"},
                    "case");
  CaseParameters params = doc.contains("parameters") ? ParseParameters(doc["parameters"]) : CaseParameters{};

  PowerNetwork::Description desc;
  const json& buses = AsArray(Require(doc, "buses", "case"), "buses");
  for (std::size_t k = 0; k < buses.size(); ++k) {
    desc.bus_ids.push_back(AsInt(buses[k], fmt::format("buses[{}]", k)));
  }
  const json& branches = AsArray(Require(doc, "branches", "case"), "branches");
  for (std::size_t k = 0; k < branches.size(); ++k) {
    const std::string at = fmt::format("branches[{}]", k);
    AsObject(branches[k], at);
    RejectUnknownKeys(branches[k], {"from", "to", "transformer", "reliability"}, at);
    Branch b;
    b.from = AsInt(Require(branches[k], "from", at), at + ".from");
    b.to = AsInt(Require(branches[k], "to", at), at + ".to");
    if (branches[k].contains("transformer")) b.transformer = AsBool(branches[k]["transformer"], at + ".transformer");
    b.reliability = branches[k].contains("reliability")
                        ? AsNumber(branches[k]["reliability"], at + ".reliability")
                        : params.line_reliability_default;
    desc.branches.push_back(b);
  }
  if (doc.contains("substations")) {
    std::vector<std::vector<int>> groups;
    const json& list = AsArray(doc["substations"], "substations");
    for (std::size_t k = 0; k < list.size(); ++k) {
      const std::string at = fmt::format("substations[{}]", k);
      std::vector<int> group;
      for (std::size_t m = 0; m < AsArray(list[k], at).size(); ++m) {
        group.push_back(AsInt(list[k][m], fmt::format("{}[{}]", at, m)));
      }
      groups.push_back(std::move(group));
    }
    desc.substations = std::move(groups);
  }
  if (doc.contains("ci_topology")) {
    std::vector<std::pair<int, int>> links;
    const json& list = AsArray(doc["ci_topology"], "ci_topology");
    for (std::size_t k = 0; k < list.size(); ++k) {
      links.push_back(AsPair(list[k], fmt::format("ci_topology[{}]", k)));
    }
    desc.ci_links = std::move(links);
  }
  desc.controller_bus = AsInt(Require(doc, "controller_bus", "case"), "controller_bus");

  PowerNetwork network(std::move(desc));
  PlanningOptions options = doc.contains("options") ? ParseOptions(doc["options"]) : PlanningOptions{};

  auto require_known = [&](int id, const std::string& where) {
    if (!network.has_bus(id)) throw CaseError(fmt::format("{}: unknown bus {}", where, id));
  };
  for (const auto& [bus, m] : params.pmu_cost_by_bus) require_known(bus, "parameters.cost_pmu_by_bus");
  for (const auto& [bus, m] : params.pdc_cost_by_bus) require_known(bus, "parameters.cost_pdc_by_bus");
  for (const auto& [end, m] : params.dulr_cost_by_end) {
    require_known(end.first, "parameters.cost_dulr_by_end");
    require_known(end.second, "parameters.cost_dulr_by_end");
  }
  std::map<std::size_t, Money> interrupt_by_substation;
  for (const auto& [bus, m] : params.interrupt_cost_by_bus) {
    require_known(bus, "parameters.cost_interrupt_by_bus");
    const std::size_t k = network.substation_of(network.index_of(bus));
    auto [it, inserted] = interrupt_by_substation.emplace(k, m);
    if (!inserted && it->second != m) {
      throw CaseError(fmt::format(
          "parameters.cost_interrupt_by_bus: conflicting costs for the substation of bus {}", bus));
    }
  }
  try {
    options.Validate(network, params);
  } catch (const ModelError& e) {
    throw CaseError(e.what());
  }
  return Case{doc.contains("name") && doc["name"].is_string() ? doc["name"].get<std::string>() : "",
              std::move(network), std::move(params), std::move(options)};
}

Case LoadCase(std::istream& source) {
  json doc;
  try {
    doc = json::parse(source);
  } catch (const json::parse_error& e) {
    throw CaseError(fmt::format("case: invalid JSON: {}", e.what()));
  }
  return LoadCaseJson(doc);
}

json SerializeCase(const Case& c) {
  const PowerNetwork& net = c.network;
  const CaseParameters& p = c.parameters;
  const PlanningOptions& o = c.options;
  json doc;
  doc["name"] = c.name;
  doc["buses"] = net.bus_ids();
  json branches = json::array();
  for (const Branch& b : net.branches()) {
    json entry{{"from", b.from}, {"to", b.to}, {"transformer", b.transformer}};
    if (b.reliability != p.line_reliability_default) entry["reliability"] = b.reliability;
    branches.push_back(entry);
  }
  doc["branches"] = branches;
  if (net.has_explicit_substations()) {
    json groups = json::array();
    for (const auto& group : net.substations()) {
      json ids = json::array();
      for (std::size_t i : group) ids.push_back(net.bus_id(i));
      groups.push_back(ids);
    }
    doc["substations"] = groups;
  }
  if (net.ci_links()) {
    json links = json::array();
    for (const auto& [a, b] : *net.ci_links()) links.push_back(json::array({a, b}));
    doc["ci_topology"] = links;
  }
  doc["controller_bus"] = net.bus_id(net.controller());

  json params{{"cost_pmu", p.cost_pmu.dollars()},
              {"cost_dulr", p.cost_dulr.dollars()},
              {"cost_pdc", p.cost_pdc.dollars()},
              {"cost_interrupt", p.cost_interrupt.dollars()},
              {"line_reliability_default", p.line_reliability_default},
              {"compression_ratio", p.compression_ratio},
              {"message_rate", p.message_rate_bps},
              {"channel_limit", p.channel_limit}};
  if (!p.pmu_cost_by_bus.empty()) params["cost_pmu_by_bus"] = MoneyByBusJson(p.pmu_cost_by_bus);
  if (!p.pdc_cost_by_bus.empty()) params["cost_pdc_by_bus"] = MoneyByBusJson(p.pdc_cost_by_bus);
  if (!p.interrupt_cost_by_bus.empty()) {
    params["cost_interrupt_by_bus"] = MoneyByBusJson(p.interrupt_cost_by_bus);
  }
  if (!p.dulr_cost_by_end.empty()) {
    json list = json::array();
    for (const auto& [end, m] : p.dulr_cost_by_end) {
      list.push_back({{"bus", end.first}, {"toward", end.second}, {"cost", m.dollars()}});
    }
    params["cost_dulr_by_end"] = list;
  }
  doc["parameters"] = params;

  json opts = json::object();
  if (!o.prohibited_buses.empty()) opts["prohibited_buses"] = o.prohibited_buses;
  if (!o.existing_pmus.empty()) {
    json list = json::array();
    for (const ExistingPmu& e : o.existing_pmus) list.push_back({{"bus", e.bus}, {"observes", e.observes}});
    opts["existing_pmus"] = list;
  }
  if (!o.redundancy_degree.empty()) {
    json degrees = json::object();
    for (const auto& [bus, t] : o.redundancy_degree) degrees[std::to_string(bus)] = t;
    opts["redundancy_degree"] = degrees;
  }
  if (o.channel_limit) opts["channel_limit"] = *o.channel_limit;
  if (!o.traffic_caps.empty()) {
    json list = json::array();
    for (const TrafficCap& cap : o.traffic_caps) {
      list.push_back({{"from", cap.from}, {"to", cap.to}, {"max_bps", cap.max_bps}});
    }
    opts["traffic_caps"] = list;
  }
  if (o.budget) opts["budget"] = o.budget->dollars();
  if (o.max_unreliability) opts["max_unreliability"] = *o.max_unreliability;
  opts["transformer_measurements"] = o.transformer_measurements;
  opts["waive_existing_interruption"] = o.waive_existing_interruption;
  json contingency;
  switch (o.contingency.mode) {
    case FailableMode::kNonTransformer:
      contingency["failable"] = "non_transformer";
      break;
    case FailableMode::kAll:
      contingency["failable"] = "all";
      break;
    case FailableMode::kExplicit: {
      json list = json::array();
      for (const auto& [a, b] : o.contingency.branches) list.push_back(json::array({a, b}));
      contingency["failable"] = list;
      break;
    }
  }
  contingency["max_order"] = o.contingency.max_order;
  contingency["state_cap"] = o.contingency.state_cap;
  contingency["probability_floor"] = o.contingency.probability_floor;
  opts["contingency"] = contingency;
  doc["options"] = opts;
  return doc;
}

Case LoadCaseOrBuiltin(const std::string& name_or_path) {
  const auto names = BuiltinCaseNames();
  if (std::find(names.begin(), names.end(), name_or_path) != names.end()) {
    return BuiltinCase(name_or_path);
  }
  std::ifstream in(name_or_path);
  if (!in) throw CaseError(fmt::format("cannot open case file \"{}\"", name_or_path));
  return LoadCase(in);
}

}  // namespace wamsplan
