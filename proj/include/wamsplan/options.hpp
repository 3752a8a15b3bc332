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

#ifndef WAMSPLAN_OPTIONS_HPP_
#define WAMSPLAN_OPTIONS_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "wamsplan/money.hpp"
#include "wamsplan/network.hpp"

namespace wamsplan {

// A PMU already in service; `observes` lists the far ends of the branches
// whose currents it measures (its own bus is implied).
struct ExistingPmu {
  int bus = 0;
  std::vector<int> observes;

  friend bool operator==(const ExistingPmu&, const ExistingPmu&) = default;
};

// Upper bound on the stream from a device-hosting bus to a PDC bus.
struct TrafficCap {
  int from = 0;
  int to = 0;
  double max_bps = 0.0;

  friend bool operator==(const TrafficCap&, const TrafficCap&) = default;
};

enum class FailableMode { kNonTransformer, kAll, kExplicit };

// Which branches may fail and how many at once.
struct ContingencySpec {
  FailableMode mode = FailableMode::kNonTransformer;
  // Only used with kExplicit; pairs of bus ids.
  std::vector<std::pair<int, int>> branches;
  int max_order = 1;
  std::size_t state_cap = 1'000'000;
  // Observability variables are only declared for states above this floor.
  double probability_floor = 0.0;

  friend bool operator==(const ContingencySpec&, const ContingencySpec&) = default;
};

struct PlanningOptions {
  std::set<int> prohibited_buses;
  std::vector<ExistingPmu> existing_pmus;
  // Per-bus N-t redundancy degree t_i; missing buses use 0.
  std::map<int, int> redundancy_degree;
  std::optional<int> channel_limit;
  std::vector<TrafficCap> traffic_caps;
  std::optional<Money> budget;
  std::optional<double> max_unreliability;
  // Allow PMU channels and DULRs on transformer branches. Off by default:
  // a current measured through a transformer of unknown tap ratio does not
  // make the far bus observable.
  bool transformer_measurements = false;
  // Substations hosting a pre-installed PMU carry no interruption cost.
  bool waive_existing_interruption = true;
  ContingencySpec contingency;

  int RedundancyOf(int bus) const;
  int ChannelLimit(const CaseParameters& params) const;
  const ExistingPmu* FindExisting(int bus) const;
  // Interruption cost of substation k after per-bus overrides and the
  // existing-PMU waiver.
  Money InterruptCost(const PowerNetwork& network, const CaseParameters& params,
                      std::size_t substation) const;
  // Whether a PMU channel or DULR may sit on branch b.
  bool Measurable(const PowerNetwork& network, std::size_t branch) const;

  // Throws ModelError on conflicting or dangling options.
  void Validate(const PowerNetwork& network, const CaseParameters& params) const;

  friend bool operator==(const PlanningOptions&, const PlanningOptions&) = default;
};

}  // namespace wamsplan

#endif  // WAMSPLAN_OPTIONS_HPP_
