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

#include "wamsplan/plan_check.hpp"

#include <fmt/format.h>

#include "wamsplan/objectives.hpp"

namespace wamsplan {

std::vector<Violation> CheckPlan(const PlacementPlan& plan, const PowerNetwork& network,
                                 const CaseParameters& params, const PlanningOptions& options,
                                 const ContingencySet* states) {
  std::vector<Violation> out;
  auto report = [&](const char* rule, std::string detail) {
    out.push_back(Violation{rule, std::move(detail)});
  };
  const std::size_t n = network.num_buses();
  if (plan.size() != n || plan.pmu.size() != n || plan.dulr.size() != n || plan.assign.size() != n) {
    report("dimensions", fmt::format("plan is sized for {} buses, network has {}", plan.size(), n));
    return out;
  }
  auto id = [&](std::size_t i) { return network.bus_id(i); };
  const int limit = options.ChannelLimit(params);

  for (std::size_t i = 0; i < n; ++i) {
    int channels = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const bool m = i != j && plan.pmu(i, j);
      const bool d = plan.dulr(i, j);
      if (!m && !d) continue;
      if (i == j) {
        report("dulr-on-branch", fmt::format("DULR at bus {} has no far end", id(i)));
        continue;
      }
      const auto branch = network.branch_between(i, j);
      if (!branch) {
        report(m ? "channel-on-branch" : "dulr-on-branch",
               fmt::format("{} at bus {} toward {} without a branch", m ? "PMU channel" : "DULR",
                           id(i), id(j)));
        continue;
      }
      if (!options.Measurable(network, *branch)) {
        report("transformer-measurement",
               fmt::format("{} at bus {} on transformer branch {}-{}", m ? "PMU channel" : "DULR",
                           id(i), id(i), id(j)));
      }
      if (m) {
        ++channels;
        if (!plan.pmu(i, i)) {
          report("pmu-self-voltage",
                 fmt::format("channel {}-{} without a PMU at bus {}", id(i), id(j), id(i)));
        }
      }
    }
    if (channels > limit) {
      report("channel-limit",
             fmt::format("PMU at bus {} uses {} channels, limit {}", id(i), channels, limit));
    }
    const bool device = plan.pmu.RowAny(i) || plan.dulr.RowAny(i);
    if (device && options.prohibited_buses.contains(id(i))) {
      report("prohibited-bus", fmt::format("device installed at prohibited bus {}", id(i)));
    }
    const int assigned = plan.assign.RowCount(i);
    if (assigned != (device ? 1 : 0)) {
      report("device-assignment",
             fmt::format("bus {} reports to {} PDCs, expected {}", id(i), assigned, device ? 1 : 0));
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (plan.assign(i, j) && !plan.pdc[j]) {
        report("pdc-assignment",
               fmt::format("bus {} reports to bus {}, which hosts no PDC", id(i), id(j)));
      }
    }
  }

  for (const ExistingPmu& e : options.existing_pmus) {
    const std::size_t i = network.index_of(e.bus);
    for (std::size_t j = 0; j < n; ++j) {
      bool expected = j == i;
      for (int o : e.observes) expected = expected || id(j) == o;
      if (plan.pmu(i, j) != expected) {
        report("existing-pmu",
               fmt::format("pre-installed PMU at bus {}: channel toward {} must be {}", e.bus,
                           id(j), expected ? "on" : "off"));
      }
    }
  }

  // Base-state measurement redundancy, counted directly from the matrices.
  for (std::size_t i = 0; i < n; ++i) {
    int count = 0;
    if (plan.pmu(i, i)) ++count;
    for (std::size_t j : network.neighbors(i)) {
      if (plan.pmu(j, i)) ++count;
      if (plan.dulr(j, i)) ++count;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (plan.dulr(i, j)) ++count;
    }
    const int need = options.RedundancyOf(id(i)) + 1;
    if (count < need) {
      report("redundant-observability",
             fmt::format("bus {} has {} observations, needs {}", id(i), count, need));
    }
  }

  for (const TrafficCap& cap : options.traffic_caps) {
    const std::size_t i = network.index_of(cap.from);
    const std::size_t j = network.index_of(cap.to);
    if (!plan.assign(i, j)) continue;
    const double rate =
        params.message_rate_bps * static_cast<double>(network.neighbors(i).size() + 1);
    if (rate > cap.max_bps) {
      report("traffic-cap", fmt::format("bus {} sends {} bps to PDC {}, cap {}", cap.from, rate,
                                        cap.to, cap.max_bps));
    }
  }
  if (options.budget) {
    const Money cost = ConstructionCost(plan, network, params, options);
    if (cost > *options.budget) {
      report("budget-cap", fmt::format("cost {} exceeds budget {}", cost.ToString(),
                                       options.budget->ToString()));
    }
  }
  if (options.max_unreliability && states != nullptr) {
    const double u = Unreliability(plan, *states).total;
    if (u > *options.max_unreliability * (1.0 + 1e-9) + 1e-12) {
      report("reliability-cap",
             fmt::format("unreliability {:.6e} exceeds cap {:.6e}", u, *options.max_unreliability));
    }
  }
  return out;
}

}  // namespace wamsplan
