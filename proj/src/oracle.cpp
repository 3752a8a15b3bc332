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

#include "wamsplan/oracle.hpp"

#include <limits>

#include <fmt/format.h>

#include "wamsplan/errors.hpp"
#include "wamsplan/plan_check.hpp"

namespace wamsplan {

double ScalarWeights::Value(const ObjectiveVector& v) const {
  return cost * static_cast<double>(v.cost.cents()) + unreliability * v.unreliability +
         traffic * v.traffic;
}

namespace {

// One way of equipping a single bus.
struct BusOption {
  bool pmu = false;
  std::vector<std::size_t> channels;  // far ends of measured branches
  std::vector<std::size_t> dulrs;     // far ends of DULR branches
  bool device() const { return pmu || !dulrs.empty(); }
};

std::vector<std::vector<BusOption>> BusOptions(const PowerNetwork& network,
                                               const CaseParameters& params,
                                               const PlanningOptions& options) {
  const std::size_t n = network.num_buses();
  const int limit = options.channel_limit.value_or(params.channel_limit);
  std::vector<std::vector<BusOption>> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int id = network.bus_id(i);
    if (options.prohibited_buses.count(id) > 0) {
      out[i].push_back(BusOption{});
      continue;
    }
    std::vector<std::size_t> ends;
    for (std::size_t b = 0; b < network.num_branches(); ++b) {
      const Branch& br = network.branches()[b];
      if (br.transformer && !options.transformer_measurements) continue;
      if (br.from == id) ends.push_back(network.index_of(br.to));
      if (br.to == id) ends.push_back(network.index_of(br.from));
    }
    const std::size_t subsets = std::size_t{1} << ends.size();
    std::vector<std::vector<std::size_t>> pmu_rows;
    const ExistingPmu* existing = nullptr;
    for (const ExistingPmu& e : options.existing_pmus) {
      if (e.bus == id) existing = &e;
    }
    if (existing != nullptr) {
      std::vector<std::size_t> row;
      for (int other : existing->observes) {
        if (other != id) row.push_back(network.index_of(other));
      }
      pmu_rows.push_back(row);
    } else {
      for (std::size_t mask = 0; mask < subsets; ++mask) {
        std::vector<std::size_t> row;
        for (std::size_t k = 0; k < ends.size(); ++k) {
          if (mask >> k & 1) row.push_back(ends[k]);
        }
        if (static_cast<int>(row.size()) <= limit) pmu_rows.push_back(row);
      }
    }
    const bool may_skip_pmu = existing == nullptr;
    for (std::size_t dmask = 0; dmask < subsets; ++dmask) {
      std::vector<std::size_t> dulrs;
      for (std::size_t k = 0; k < ends.size(); ++k) {
        if (dmask >> k & 1) dulrs.push_back(ends[k]);
      }
      if (may_skip_pmu) out[i].push_back(BusOption{false, {}, dulrs});
      for (const auto& row : pmu_rows) out[i].push_back(BusOption{true, row, dulrs});
    }
  }
  return out;
}

void CheckWeights(const ScalarWeights& w) {
  if (w.cost < 0.0 || w.unreliability < 0.0 || w.traffic < 0.0) {
    throw ModelError("oracle: objective weights must be nonnegative");
  }
}

// Saturating arithmetic keeps the count meaningful past the limit.
std::uint64_t AddSat(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max()
                                                           : a + b;
}
std::uint64_t MulSat(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

}  // namespace

std::uint64_t OracleSearchSpace(const PowerNetwork& network, const CaseParameters& params,
                                const PlanningOptions& options, const ScalarWeights& weights) {
  const std::size_t n = network.num_buses();
  if (n > kOracleMaxBuses) {
    throw ModelError(fmt::format("oracle: {} buses exceed the limit of {}", n, kOracleMaxBuses));
  }
  CheckWeights(weights);
  const auto per_bus = BusOptions(network, params, options);
  // configs[k]: device configurations with exactly k device-hosting buses.
  std::vector<std::uint64_t> configs{1};
  for (const auto& opts : per_bus) {
    std::uint64_t with = 0;
    std::uint64_t without = 0;
    for (const BusOption& o : opts) (o.device() ? with : without) += 1;
    std::vector<std::uint64_t> next(configs.size() + 1, 0);
    for (std::size_t k = 0; k < configs.size(); ++k) {
      next[k] = AddSat(next[k], MulSat(configs[k], without));
      next[k + 1] = AddSat(next[k + 1], MulSat(configs[k], with));
    }
    configs = std::move(next);
  }
  std::uint64_t total = 0;
  for (std::size_t k = 0; k < configs.size(); ++k) {
    std::uint64_t tails = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      const auto size = static_cast<std::uint64_t>(__builtin_popcountll(mask));
      if (k == 0) {
        tails += 1;
      } else if (size > 0) {
        std::uint64_t ways = 1;
        if (weights.traffic > 0.0) {
          for (std::size_t e = 0; e < k; ++e) ways = MulSat(ways, size);
        }
        tails = AddSat(tails, ways);
      }
    }
    total = AddSat(total, MulSat(configs[k], tails));
  }
  return total;
}

std::optional<OracleResult> BruteForcePlan(const PowerNetwork& network,
                                           const CaseParameters& params,
                                           const PlanningOptions& options,
                                           const ContingencySet& states,
                                           const ScalarWeights& weights) {
  const std::uint64_t space = OracleSearchSpace(network, params, options, weights);
  if (space > kOracleMaxCandidates) {
    throw ModelError(fmt::format("oracle: search space of {} plans exceeds {}", space,
                                 kOracleMaxCandidates));
  }
  const std::size_t n = network.num_buses();
  const auto per_bus = BusOptions(network, params, options);
  const double rate_unit = params.message_rate_bps;

  std::optional<OracleResult> best;
  std::uint64_t visited = 0;
  std::vector<std::size_t> pick(n, 0);

  auto consider = [&](const PlacementPlan& plan) {
    ++visited;
    // Cost and the other objectives are nonnegative, so the weighted cost
    // alone bounds the value from below.
    const Money cost = ConstructionCost(plan, network, params, options);
    if (best && weights.cost * static_cast<double>(cost.cents()) >= best->value) return;
    if (!CheckPlan(plan, network, params, options, &states).empty()) return;
    const ObjectiveVector v = Evaluate(plan, network, params, options, states);
    const double value = weights.Value(v);
    if (!best || value < best->value) best = OracleResult{plan, v, value, 0};
  };

  auto allowed = [&](std::size_t i, std::size_t j) {
    for (const TrafficCap& cap : options.traffic_caps) {
      if (network.index_of(cap.from) == i && network.index_of(cap.to) == j &&
          rate_unit * static_cast<double>(network.neighbors(i).size() + 1) > cap.max_bps) {
        return false;
      }
    }
    return true;
  };

  // Assignment of every device-hosting bus to a PDC in the chosen set.
  auto assign = [&](auto&& self, PlacementPlan& plan, const std::vector<std::size_t>& hosts,
                    std::size_t at) -> void {
    if (at == hosts.size()) {
      consider(plan);
      return;
    }
    const std::size_t i = hosts[at];
    for (std::size_t j = 0; j < n; ++j) {
      if (!plan.pdc[j]) continue;
      // Without a traffic weight any permitted PDC gives the same value.
      if (weights.traffic == 0.0 && !allowed(i, j)) continue;
      plan.assign.set(i, j);
      self(self, plan, hosts, at + 1);
      plan.assign.set(i, j, false);
      if (weights.traffic == 0.0) return;
    }
  };

  auto place = [&](auto&& self, std::size_t bus) -> void {
    if (bus < n) {
      for (std::size_t k = 0; k < per_bus[bus].size(); ++k) {
        pick[bus] = k;
        self(self, bus + 1);
      }
      return;
    }
    PlacementPlan plan(n);
    std::vector<std::size_t> hosts;
    for (std::size_t i = 0; i < n; ++i) {
      const BusOption& o = per_bus[i][pick[i]];
      if (o.pmu) {
        plan.pmu.set(i, i);
        for (std::size_t j : o.channels) plan.pmu.set(i, j);
      }
      for (std::size_t j : o.dulrs) plan.dulr.set(i, j);
      if (o.device()) hosts.push_back(i);
    }
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      if (mask == 0 && !hosts.empty()) continue;
      for (std::size_t j = 0; j < n; ++j) plan.pdc[j] = mask >> j & 1;
      assign(assign, plan, hosts, 0);
    }
  };
  place(place, 0);
  if (best) best->candidates = visited;
  return best;
}

double BruteForceUnreliability(const PlacementPlan& plan, const PowerNetwork& network,
                               const std::vector<std::size_t>& failable) {
  if (failable.size() > kOracleMaxFailable) {
    throw ModelError(fmt::format("oracle: {} failable branches exceed the limit of {}",
                                 failable.size(), kOracleMaxFailable));
  }
  const std::size_t n = network.num_buses();
  std::vector<double> per_bus(n, 0.0);
  std::vector<bool> down(failable.size(), false);

  auto in_service = [&](std::size_t a, std::size_t b) {
    for (std::size_t k = 0; k < failable.size(); ++k) {
      const Edge& e = network.endpoints(failable[k]);
      if (down[k] && ((e.first == a && e.second == b) || (e.first == b && e.second == a))) {
        return false;
      }
    }
    return network.branch_between(a, b).has_value();
  };

  auto score_state = [&] {
    double p = 1.0;
    for (std::size_t k = 0; k < failable.size(); ++k) {
      const double r = network.branches()[failable[k]].reliability;
      p *= down[k] ? 1.0 - r : r;
    }
    for (std::size_t i = 0; i < n; ++i) {
      bool seen = plan.pmu(i, i);
      for (std::size_t j = 0; j < n && !seen; ++j) {
        if (plan.dulr(i, j)) seen = true;
      }
      for (std::size_t j = 0; j < n && !seen; ++j) {
        if (j != i && (plan.pmu(j, i) || plan.dulr(j, i)) && in_service(i, j)) seen = true;
      }
      if (!seen) per_bus[i] += p;
    }
  };

  // Outage sets in lexicographic order: {}, {0}, {0,1}, ..., {1}, ...
  auto walk = [&](auto&& self, std::size_t start) -> void {
    score_state();
    for (std::size_t k = start; k < failable.size(); ++k) {
      down[k] = true;
      self(self, k + 1);
      down[k] = false;
    }
  };
  walk(walk, 0);

  double total = 0.0;
  for (double u : per_bus) total += u;
  return total;
}

}  // namespace wamsplan
