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

#include "wamsplan/objectives.hpp"

#include <fmt/format.h>

#include "wamsplan/errors.hpp"

namespace wamsplan {

Money ConstructionCost(const PlacementPlan& plan, const PowerNetwork& network,
                       const CaseParameters& params, const PlanningOptions& options) {
  const DerivedIndicators derived = Derive(plan, network, options);
  Money total;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    const int bus = network.bus_id(i);
    if (derived.new_pmu[i]) total += params.PmuCost(bus);
    for (std::size_t j = 0; j < plan.size(); ++j) {
      if (plan.dulr(i, j)) total += params.DulrCost(bus, network.bus_id(j));
    }
    if (plan.pdc[i]) total += params.PdcCost(bus);
  }
  for (std::size_t k = 0; k < network.num_substations(); ++k) {
    if (derived.interrupted[k]) total += options.InterruptCost(network, params, k);
  }
  return total;
}

double DataTraffic(const PlacementPlan& plan, const PowerNetwork& network,
                   const CaseParameters& params) {
  const std::size_t n = plan.size();
  const std::size_t c = network.controller();
  const DistanceMatrix& q = network.hops();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const bool device = plan.pmu.RowAny(i) || plan.dulr.RowAny(i);
    const int assigned = plan.assign.RowCount(i);
    if (assigned != (device ? 1 : 0)) {
      throw PlanError(fmt::format("bus {} reports to {} PDCs, expected {}", network.bus_id(i),
                                  assigned, device ? 1 : 0));
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!plan.assign(i, j)) continue;
      if (!plan.pdc[j]) {
        throw PlanError(fmt::format("bus {} reports to bus {}, which hosts no PDC",
                                    network.bus_id(i), network.bus_id(j)));
      }
      const double rate = params.message_rate_bps * static_cast<double>(network.neighbors(i).size() + 1);
      total += (q(i, j) + q(j, c) * params.compression_ratio) * rate;
    }
  }
  return total;
}

ObjectiveVector Evaluate(const PlacementPlan& plan, const PowerNetwork& network,
                         const CaseParameters& params, const PlanningOptions& options,
                         const ContingencySet& states) {
  ObjectiveVector out;
  out.cost = ConstructionCost(plan, network, params, options);
  out.unreliability = Unreliability(plan, states).total;
  out.traffic = DataTraffic(plan, network, params);
  return out;
}

}  // namespace wamsplan
