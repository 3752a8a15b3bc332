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

#include "wamsplan/plan.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "wamsplan/errors.hpp"

namespace wamsplan {

using nlohmann::json;

bool BinaryMatrix::RowAny(std::size_t i) const {
  for (std::size_t j = 0; j < n_; ++j) {
    if (bits_[i * n_ + j]) return true;
  }
  return false;
}

int BinaryMatrix::RowCount(std::size_t i) const {
  int count = 0;
  for (std::size_t j = 0; j < n_; ++j) count += bits_[i * n_ + j];
  return count;
}

DerivedIndicators Derive(const PlacementPlan& plan, const PowerNetwork& network,
                         const PlanningOptions& options) {
  const std::size_t n = plan.size();
  DerivedIndicators out;
  out.new_pmu.assign(n, 0);
  out.device.assign(n, 0);
  out.interrupted.assign(network.num_substations(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    const bool has_pmu = plan.pmu.RowAny(i);
    const bool has_dulr = plan.dulr.RowAny(i);
    out.new_pmu[i] = has_pmu && options.FindExisting(network.bus_id(i)) == nullptr;
    out.device[i] = has_pmu || has_dulr;
    if (out.device[i]) out.interrupted[network.substation_of(i)] = 1;
  }
  return out;
}

namespace {

std::vector<int> IntList(const json& node, const std::string& where) {
  if (!node.is_array()) throw PlanError(where + ": expected an array of bus ids");
  std::vector<int> out;
  for (const json& v : node) {
    if (!v.is_number_integer()) throw PlanError(where + ": expected integer bus ids");
    out.push_back(v.get<int>());
  }
  return out;
}

std::size_t BusIndex(const PowerNetwork& network, const json& node, const std::string& where) {
  if (!node.is_number_integer()) throw PlanError(where + ": expected an integer bus id");
  const int id = node.get<int>();
  if (!network.has_bus(id)) throw PlanError(fmt::format("{}: unknown bus {}", where, id));
  return network.index_of(id);
}

}  // namespace

PlacementPlan PlanFromJson(const json& doc, const PowerNetwork& network) {
  if (!doc.is_object()) throw PlanError("plan: expected a JSON object");
  const std::size_t n = network.num_buses();
  PlacementPlan plan(n);
  std::map<std::size_t, std::size_t> pdc_of;
  auto record_pdc = [&](std::size_t bus, const json& entry, const std::string& where) {
    if (!entry.contains("pdc")) return;
    const std::size_t target = BusIndex(network, entry["pdc"], where + ".pdc");
    auto [it, inserted] = pdc_of.emplace(bus, target);
    if (!inserted && it->second != target) {
      throw PlanError(fmt::format("{}: devices at bus {} report to different PDCs ({} and {})",
                                  where, network.bus_id(bus), network.bus_id(it->second),
                                  network.bus_id(target)));
    }
  };

  if (doc.contains("pmus")) {
    if (!doc["pmus"].is_array()) throw PlanError("plan.pmus: expected an array");
    for (std::size_t k = 0; k < doc["pmus"].size(); ++k) {
      const json& entry = doc["pmus"][k];
      const std::string where = fmt::format("plan.pmus[{}]", k);
      if (!entry.is_object() || !entry.contains("bus")) throw PlanError(where + ": missing bus");
      const std::size_t i = BusIndex(network, entry["bus"], where + ".bus");
      plan.pmu.set(i, i);
      if (entry.contains("observes")) {
        for (int id : IntList(entry["observes"], where + ".observes")) {
          if (!network.has_bus(id)) throw PlanError(fmt::format("{}: unknown bus {}", where, id));
          plan.pmu.set(i, network.index_of(id));
        }
      }
      record_pdc(i, entry, where);
    }
  }
  if (doc.contains("dulrs")) {
    if (!doc["dulrs"].is_array()) throw PlanError("plan.dulrs: expected an array");
    for (std::size_t k = 0; k < doc["dulrs"].size(); ++k) {
      const json& entry = doc["dulrs"][k];
      const std::string where = fmt::format("plan.dulrs[{}]", k);
      if (!entry.is_object() || !entry.contains("bus") || !entry.contains("toward")) {
        throw PlanError(where + ": expected {\"bus\", \"toward\"}");
      }
      const std::size_t i = BusIndex(network, entry["bus"], where + ".bus");
      const std::size_t j = BusIndex(network, entry["toward"], where + ".toward");
      plan.dulr.set(i, j);
      record_pdc(i, entry, where);
    }
  }
  if (doc.contains("pdcs")) {
    for (int id : IntList(doc["pdcs"], "plan.pdcs")) {
      if (!network.has_bus(id)) throw PlanError(fmt::format("plan.pdcs: unknown bus {}", id));
      plan.pdc[network.index_of(id)] = 1;
    }
  }
  for (const auto& [bus, target] : pdc_of) plan.assign.set(bus, target);
  return plan;
}

namespace {

std::optional<std::size_t> FirstAssigned(const PlacementPlan& plan, std::size_t i) {
  for (std::size_t j = 0; j < plan.size(); ++j) {
    if (plan.assign(i, j)) return j;
  }
  return std::nullopt;
}

}  // namespace

json PlanToJson(const PlacementPlan& plan, const PowerNetwork& network,
                const PlanningOptions& options) {
  const std::size_t n = plan.size();
  json pmus = json::array();
  json dulrs = json::array();
  json pdcs = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    const auto target = FirstAssigned(plan, i);
    if (plan.pmu.RowAny(i)) {
      json entry{{"bus", network.bus_id(i)}};
      json observes = json::array();
      for (std::size_t j = 0; j < n; ++j) {
        if (plan.pmu(i, j)) observes.push_back(network.bus_id(j));
      }
      entry["observes"] = observes;
      if (target) entry["pdc"] = network.bus_id(*target);
      if (options.FindExisting(network.bus_id(i)) != nullptr) entry["existing"] = true;
      pmus.push_back(entry);
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!plan.dulr(i, j)) continue;
      json entry{{"bus", network.bus_id(i)}, {"toward", network.bus_id(j)}};
      if (target) entry["pdc"] = network.bus_id(*target);
      dulrs.push_back(entry);
    }
    if (plan.pdc[i]) pdcs.push_back(network.bus_id(i));
  }
  return json{{"pmus", pmus}, {"dulrs", dulrs}, {"pdcs", pdcs}};
}

PlanNotation FormatPlan(const PlacementPlan& plan, const PowerNetwork& network) {
  const std::size_t n = plan.size();
  std::vector<std::string> pmus;
  std::vector<std::string> dulrs;
  std::vector<int> pdcs;
  for (std::size_t i = 0; i < n; ++i) {
    const auto target = FirstAssigned(plan, i);
    const std::string arrow =
        target ? fmt::format("→{}", network.bus_id(*target)) : std::string("→?");
    if (plan.pmu.RowAny(i)) {
      std::vector<int> observed;
      for (std::size_t j = 0; j < n; ++j) {
        if (plan.pmu(i, j)) observed.push_back(network.bus_id(j));
      }
      pmus.push_back(fmt::format("{}({}){}", network.bus_id(i), fmt::join(observed, ","), arrow));
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (plan.dulr(i, j)) {
        dulrs.push_back(fmt::format("{}({}){}", network.bus_id(i), network.bus_id(j), arrow));
      }
    }
    if (plan.pdc[i]) pdcs.push_back(network.bus_id(i));
  }
  auto or_na = [](std::string s) { return s.empty() ? std::string("N/A") : s; };
  return PlanNotation{or_na(fmt::format("{}", fmt::join(pmus, ", "))),
                      or_na(fmt::format("{}", fmt::join(dulrs, ", "))),
                      or_na(fmt::format("{}", fmt::join(pdcs, ",")))};
}

}  // namespace wamsplan
