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

#include "wamsplan/contingency.hpp"

#include <algorithm>
#include <limits>

#include <fmt/format.h>

#include "wamsplan/errors.hpp"

namespace wamsplan {

ContingencyConfig ResolveContingency(const PowerNetwork& network, const ContingencySpec& spec) {
  ContingencyConfig config;
  config.max_order = spec.max_order;
  config.state_cap = spec.state_cap;
  switch (spec.mode) {
    case FailableMode::kAll:
      for (std::size_t b = 0; b < network.num_branches(); ++b) config.failable_branches.push_back(b);
      break;
    case FailableMode::kNonTransformer:
      for (std::size_t b = 0; b < network.num_branches(); ++b) {
        if (!network.branches()[b].transformer) config.failable_branches.push_back(b);
      }
      break;
    case FailableMode::kExplicit:
      for (const auto& [a, b] : spec.branches) {
        auto br = network.branch_between(network.index_of(a), network.index_of(b));
        if (!br) throw ModelError(fmt::format("contingency: no branch {}-{}", a, b));
        config.failable_branches.push_back(*br);
      }
      std::sort(config.failable_branches.begin(), config.failable_branches.end());
      config.failable_branches.erase(
          std::unique(config.failable_branches.begin(), config.failable_branches.end()),
          config.failable_branches.end());
      break;
  }
  // An order beyond the failable count adds no states.
  if (config.max_order > static_cast<int>(config.failable_branches.size())) {
    config.max_order = static_cast<int>(config.failable_branches.size());
  }
  return config;
}

ContingencySet::ContingencySet(const PowerNetwork& network, ContingencyConfig config,
                               std::vector<SystemState> states)
    : config_(std::move(config)), states_(std::move(states)) {
  const std::size_t n = network.num_buses();
  base_rows_.assign(n, BusSet(n));
  for (std::size_t i = 0; i < n; ++i) {
    base_rows_[i].set(i);
    for (std::size_t j : network.neighbors(i)) base_rows_[i].set(j);
  }
  for (std::size_t b = 0; b < network.num_branches(); ++b) endpoints_.push_back(network.endpoints(b));
}

std::vector<BusSet> ContingencySet::AdjacencyRows(std::size_t state) const {
  std::vector<BusSet> rows = base_rows_;
  for (std::size_t b : states_[state].outages) {
    const auto [i, j] = endpoints_[b];
    rows[i].reset(j);
    rows[j].reset(i);
  }
  return rows;
}

double ContingencySet::TotalProbability() const {
  double total = 0.0;
  for (const SystemState& s : states_) total += s.probability;
  return total;
}

namespace {

// Number of subsets of size <= k of an f-element set, saturating at cap + 1.
std::size_t CountStates(std::size_t f, std::size_t k, std::size_t cap) {
  std::size_t total = 0;
  long double binom = 1;
  for (std::size_t r = 0; r <= k && r <= f; ++r) {
    if (r > 0) binom = binom * static_cast<long double>(f - r + 1) / static_cast<long double>(r);
    if (binom > static_cast<long double>(cap)) return cap + 1;
    total += static_cast<std::size_t>(binom + 0.5L);
    if (total > cap) return cap + 1;
  }
  return total;
}

}  // namespace

ContingencySet EnumerateStates(const PowerNetwork& network, const ContingencyConfig& config) {
  const auto& failable = config.failable_branches;
  for (std::size_t k = 0; k < failable.size(); ++k) {
    if (failable[k] >= network.num_branches() || (k > 0 && failable[k] <= failable[k - 1])) {
      throw ModelError("contingency: failable branches must be distinct, ascending branch indices");
    }
  }
  if (config.max_order < 0 || static_cast<std::size_t>(config.max_order) > failable.size()) {
    throw ModelError(fmt::format("contingency: max_order {} outside [0, {}]", config.max_order,
                                 failable.size()));
  }
  const std::size_t order = static_cast<std::size_t>(config.max_order);
  const std::size_t count = CountStates(failable.size(), order, config.state_cap);
  if (count > config.state_cap) {
    throw ModelError(fmt::format(
        "contingency: more than {} states for {} failable branches at order {}",
        config.state_cap, failable.size(), order));
  }

  std::vector<SystemState> states;
  states.reserve(count);
  std::vector<std::uint8_t> failed(failable.size(), 0);
  std::vector<std::size_t> chosen;  // positions into `failable`
  auto emit = [&] {
    SystemState s;
    double p = 1.0;
    for (std::size_t k = 0; k < failable.size(); ++k) {
      const double r = network.branches()[failable[k]].reliability;
      p *= failed[k] ? (1.0 - r) : r;
    }
    s.probability = p;
    for (std::size_t pos : chosen) s.outages.push_back(failable[pos]);
    states.push_back(std::move(s));
  };
  // Pre-order walk over increasing position sequences is lexicographic.
  auto walk = [&](auto&& self, std::size_t start) -> void {
    emit();
    if (chosen.size() == order) return;
    for (std::size_t pos = start; pos < failable.size(); ++pos) {
      chosen.push_back(pos);
      failed[pos] = 1;
      self(self, pos + 1);
      failed[pos] = 0;
      chosen.pop_back();
    }
  };
  walk(walk, 0);
  return ContingencySet(network, config, std::move(states));
}

std::vector<std::uint8_t> Observability(const PlacementPlan& plan, const ContingencySet& states,
                                        std::size_t state) {
  const std::size_t n = plan.size();
  const std::vector<BusSet> rows = states.AdjacencyRows(state);
  std::vector<std::uint8_t> observed(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (plan.dulr.RowAny(i)) {
      observed[i] = 1;
      continue;
    }
    BusSet observers(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (plan.pmu(j, i) || plan.dulr(j, i)) observers.set(j);
    }
    observed[i] = rows[i].Intersects(observers) ? 1 : 0;
  }
  return observed;
}

UnreliabilityReport Unreliability(const PlacementPlan& plan, const ContingencySet& states) {
  const std::size_t n = plan.size();
  UnreliabilityReport report;
  report.per_bus.assign(n, 0.0);
  for (std::size_t s = 0; s < states.size(); ++s) {
    const auto observed = Observability(plan, states, s);
    const double p = states[s].probability;
    for (std::size_t i = 0; i < n; ++i) {
      if (!observed[i]) report.per_bus[i] += p;
    }
  }
  for (double u : report.per_bus) report.total += u;
  return report;
}

}  // namespace wamsplan
