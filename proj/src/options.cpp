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

#include "wamsplan/options.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "wamsplan/errors.hpp"

namespace wamsplan {

int PlanningOptions::RedundancyOf(int bus) const {
  auto it = redundancy_degree.find(bus);
  return it == redundancy_degree.end() ? 0 : it->second;
}

int PlanningOptions::ChannelLimit(const CaseParameters& params) const {
  return channel_limit.value_or(params.channel_limit);
}

const ExistingPmu* PlanningOptions::FindExisting(int bus) const {
  for (const ExistingPmu& e : existing_pmus) {
    if (e.bus == bus) return &e;
  }
  return nullptr;
}

Money PlanningOptions::InterruptCost(const PowerNetwork& network, const CaseParameters& params,
                                     std::size_t substation) const {
  Money cost = params.cost_interrupt;
  for (std::size_t i : network.substations()[substation]) {
    const int id = network.bus_id(i);
    if (waive_existing_interruption && FindExisting(id) != nullptr) return Money();
    auto it = params.interrupt_cost_by_bus.find(id);
    if (it != params.interrupt_cost_by_bus.end()) cost = it->second;
  }
  return cost;
}

bool PlanningOptions::Measurable(const PowerNetwork& network, std::size_t branch) const {
  return transformer_measurements || !network.branches()[branch].transformer;
}

void PlanningOptions::Validate(const PowerNetwork& network, const CaseParameters& params) const {
  auto require_bus = [&](int id, const char* where) {
    if (!network.has_bus(id)) throw ModelError(fmt::format("options.{}: unknown bus {}", where, id));
  };
  for (int id : prohibited_buses) require_bus(id, "prohibited_buses");
  const int limit = ChannelLimit(params);
  if (limit < 0) throw ModelError("options.channel_limit must be >= 0");
  std::set<int> seen;
  for (const ExistingPmu& e : existing_pmus) {
    require_bus(e.bus, "existing_pmus");
    if (!seen.insert(e.bus).second) {
      throw ModelError(fmt::format("options.existing_pmus: bus {} listed twice", e.bus));
    }
    if (prohibited_buses.contains(e.bus)) {
      throw ModelError(fmt::format(
          "options: bus {} is both prohibited and equipped with an existing PMU", e.bus));
    }
    const std::size_t i = network.index_of(e.bus);
    int channels = 0;
    for (int other : e.observes) {
      require_bus(other, "existing_pmus.observes");
      if (other == e.bus) continue;
      auto b = network.branch_between(i, network.index_of(other));
      if (!b) {
        throw ModelError(fmt::format(
            "options.existing_pmus: bus {} observes {} which is not a neighbor", e.bus, other));
      }
      if (!Measurable(network, *b)) {
        throw ModelError(fmt::format(
            "options.existing_pmus: bus {} observes {} across a transformer branch", e.bus, other));
      }
      ++channels;
    }
    if (channels > limit) {
      throw ModelError(fmt::format(
          "options.existing_pmus: bus {} uses {} channels, above the limit of {}", e.bus,
          channels, limit));
    }
  }
  for (const auto& [bus, t] : redundancy_degree) {
    require_bus(bus, "redundancy_degree");
    if (t < 0) throw ModelError(fmt::format("options.redundancy_degree: negative degree at bus {}", bus));
  }
  for (const TrafficCap& cap : traffic_caps) {
    require_bus(cap.from, "traffic_caps");
    require_bus(cap.to, "traffic_caps");
    if (cap.max_bps < 0) throw ModelError("options.traffic_caps: negative cap");
  }
  if (budget && *budget < Money()) throw ModelError("options.budget must be >= 0");
  if (max_unreliability && *max_unreliability < 0) {
    throw ModelError("options.max_unreliability must be >= 0");
  }
  if (contingency.max_order < 0) throw ModelError("options.contingency.max_order must be >= 0");
  for (const auto& [a, b] : contingency.branches) {
    require_bus(a, "contingency.failable");
    require_bus(b, "contingency.failable");
    if (!network.branch_between(network.index_of(a), network.index_of(b))) {
      throw ModelError(fmt::format("options.contingency.failable: no branch {}-{}", a, b));
    }
  }
}

}  // namespace wamsplan
