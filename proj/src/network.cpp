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

#include "wamsplan/network.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <string>

#include <fmt/format.h>

#include "wamsplan/errors.hpp"

namespace wamsplan {
namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t Find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void Union(std::size_t a, std::size_t b) {
    a = Find(a);
    b = Find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

Money Money::FromDollars(double dollars) {
  return Money(static_cast<std::int64_t>(std::llround(dollars * 100.0)));
}

std::string Money::ToString() const {
  const std::int64_t abs_cents = cents_ < 0 ? -cents_ : cents_;
  std::string whole = std::to_string(abs_cents / 100);
  std::string grouped;
  for (std::size_t i = 0; i < whole.size(); ++i) {
    if (i > 0 && (whole.size() - i) % 3 == 0) grouped.push_back(',');
    grouped.push_back(whole[i]);
  }
  return fmt::format("{}{}.{:02d}", cents_ < 0 ? "-" : "", grouped, abs_cents % 100);
}

std::vector<std::vector<std::size_t>> GroupSubstations(
    std::size_t num_buses, std::span<const Edge> transformer_edges) {
  DisjointSets sets(num_buses);
  for (const auto& [a, b] : transformer_edges) sets.Union(a, b);
  std::map<std::size_t, std::vector<std::size_t>> by_root;
  for (std::size_t i = 0; i < num_buses; ++i) by_root[sets.Find(i)].push_back(i);
  // Roots are the smallest member, so map order is order of smallest member.
  std::vector<std::vector<std::size_t>> groups;
  groups.reserve(by_root.size());
  for (auto& [root, members] : by_root) groups.push_back(std::move(members));
  return groups;
}

DistanceMatrix HopDistances(std::size_t num_nodes, std::span<const Edge> edges) {
  std::vector<std::vector<std::size_t>> adjacency(num_nodes);
  for (const auto& [a, b] : edges) {
    adjacency[a].push_back(b);
    adjacency[b].push_back(a);
  }
  DistanceMatrix hops(num_nodes);
  std::vector<int> dist(num_nodes);
  std::deque<std::size_t> queue;
  for (std::size_t source = 0; source < num_nodes; ++source) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[source] = 0;
    queue.assign(1, source);
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t v : adjacency[u]) {
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          queue.push_back(v);
        }
      }
    }
    for (std::size_t t = 0; t < num_nodes; ++t) {
      if (dist[t] < 0) {
        throw CaseError(fmt::format(
            "communication topology is disconnected: node index {} unreachable from {}", t,
            source));
      }
      hops.at(source, t) = dist[t];
    }
  }
  return hops;
}

Money CaseParameters::PmuCost(int bus) const {
  auto it = pmu_cost_by_bus.find(bus);
  return it == pmu_cost_by_bus.end() ? cost_pmu : it->second;
}

Money CaseParameters::PdcCost(int bus) const {
  auto it = pdc_cost_by_bus.find(bus);
  return it == pdc_cost_by_bus.end() ? cost_pdc : it->second;
}

Money CaseParameters::DulrCost(int bus, int toward) const {
  auto it = dulr_cost_by_end.find({bus, toward});
  return it == dulr_cost_by_end.end() ? cost_dulr : it->second;
}

void CaseParameters::Validate() const {
  auto check_money = [](Money m, const std::string& what) {
    if (m < Money()) throw CaseError(fmt::format("parameters.{} must be >= 0", what));
  };
  check_money(cost_pmu, "cost_pmu");
  check_money(cost_dulr, "cost_dulr");
  check_money(cost_pdc, "cost_pdc");
  check_money(cost_interrupt, "cost_interrupt");
  for (const auto& [bus, m] : pmu_cost_by_bus) check_money(m, fmt::format("pmu cost of bus {}", bus));
  for (const auto& [bus, m] : pdc_cost_by_bus) check_money(m, fmt::format("pdc cost of bus {}", bus));
  for (const auto& [end, m] : dulr_cost_by_end) {
    check_money(m, fmt::format("dulr cost of {}({})", end.first, end.second));
  }
  for (const auto& [bus, m] : interrupt_cost_by_bus) {
    check_money(m, fmt::format("interruption cost at bus {}", bus));
  }
  if (!(line_reliability_default > 0.0 && line_reliability_default <= 1.0)) {
    throw CaseError("parameters.line_reliability_default must be in (0, 1]");
  }
  if (!(compression_ratio > 0.0 && compression_ratio <= 1.0)) {
    throw CaseError("parameters.compression_ratio must be in (0, 1]");
  }
  if (!(message_rate_bps > 0.0)) throw CaseError("parameters.message_rate must be > 0");
  if (channel_limit < 0) throw CaseError("parameters.channel_limit must be >= 0");
}

PowerNetwork::PowerNetwork(Description description) {
  if (description.bus_ids.empty()) throw CaseError("buses: network has no buses");
  bus_ids_ = description.bus_ids;
  std::sort(bus_ids_.begin(), bus_ids_.end());
  for (std::size_t i = 0; i < bus_ids_.size(); ++i) {
    if (i > 0 && bus_ids_[i] == bus_ids_[i - 1]) {
      throw CaseError(fmt::format("buses: duplicate bus {}", bus_ids_[i]));
    }
    index_.emplace(bus_ids_[i], i);
  }
  const std::size_t n = bus_ids_.size();

  branches_ = std::move(description.branches);
  for (std::size_t b = 0; b < branches_.size(); ++b) {
    Branch& br = branches_[b];
    for (int end : {br.from, br.to}) {
      if (!has_bus(end)) {
        throw CaseError(fmt::format("branches[{}] ({}-{}): unknown bus {}", b, br.from, br.to, end));
      }
    }
    if (br.from == br.to) {
      throw CaseError(fmt::format("branches[{}]: self-loop at bus {}", b, br.from));
    }
    if (!(br.reliability > 0.0 && br.reliability <= 1.0)) {
      throw CaseError(fmt::format("branches[{}] ({}-{}): reliability must be in (0, 1]", b,
                                  br.from, br.to));
    }
    if (br.from > br.to) std::swap(br.from, br.to);
  }
  std::sort(branches_.begin(), branches_.end(), [](const Branch& a, const Branch& b) {
    return std::pair(a.from, a.to) < std::pair(b.from, b.to);
  });
  adjacency_.assign(n, {});
  for (std::size_t b = 0; b < branches_.size(); ++b) {
    const Edge e{index_.at(branches_[b].from), index_.at(branches_[b].to)};
    if (!branch_index_.emplace(e, b).second) {
      throw CaseError(fmt::format("branches: duplicate branch {}-{}", branches_[b].from,
                                  branches_[b].to));
    }
    endpoints_.push_back(e);
    adjacency_[e.first].push_back(e.second);
    adjacency_[e.second].push_back(e.first);
  }
  for (auto& row : adjacency_) std::sort(row.begin(), row.end());

  // Connectivity of the power graph.
  {
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v : adjacency_[u]) {
        if (!seen[v]) {
          seen[v] = true;
          ++count;
          stack.push_back(v);
        }
      }
    }
    if (count != n) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!seen[i]) {
          throw CaseError(fmt::format("network is disconnected: bus {} unreachable from bus {}",
                                      bus_ids_[i], bus_ids_[0]));
        }
      }
    }
  }

  if (description.substations) {
    explicit_substations_ = true;
    substation_of_.assign(n, n);
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t k = 0; k < description.substations->size(); ++k) {
      const auto& ids = (*description.substations)[k];
      if (ids.empty()) throw CaseError(fmt::format("substations[{}]: empty substation", k));
      std::vector<std::size_t> group;
      for (int id : ids) {
        if (!has_bus(id)) {
          throw CaseError(fmt::format("substations[{}]: unknown bus {}", k, id));
        }
        const std::size_t i = index_.at(id);
        if (substation_of_[i] != n) {
          throw CaseError(fmt::format("substations: bus {} appears in more than one substation", id));
        }
        substation_of_[i] = k;
        group.push_back(i);
      }
      std::sort(group.begin(), group.end());
      groups.push_back(std::move(group));
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (substation_of_[i] == n) {
        throw CaseError(fmt::format("substations: bus {} is not in any substation", bus_ids_[i]));
      }
    }
    std::sort(groups.begin(), groups.end());
    substations_ = std::move(groups);
  } else {
    std::vector<Edge> transformers;
    for (std::size_t b = 0; b < branches_.size(); ++b) {
      if (branches_[b].transformer) transformers.push_back(endpoints_[b]);
    }
    substations_ = GroupSubstations(n, transformers);
  }
  substation_of_.assign(n, 0);
  for (std::size_t k = 0; k < substations_.size(); ++k) {
    for (std::size_t i : substations_[k]) substation_of_[i] = k;
  }

  if (!has_bus(description.controller_bus)) {
    throw CaseError(fmt::format("controller_bus: unknown bus {}", description.controller_bus));
  }
  controller_ = index_.at(description.controller_bus);

  ci_links_ = std::move(description.ci_links);
  if (ci_links_) {
    std::vector<Edge> links;
    for (std::size_t k = 0; k < ci_links_->size(); ++k) {
      auto [a, b] = (*ci_links_)[k];
      if (!has_bus(a) || !has_bus(b)) {
        throw CaseError(fmt::format("ci_topology[{}]: unknown bus {}", k, has_bus(a) ? b : a));
      }
      links.emplace_back(index_.at(a), index_.at(b));
    }
    hops_ = HopDistances(n, links);
  } else {
    hops_ = HopDistances(n, endpoints_);
  }
}

std::size_t PowerNetwork::index_of(int id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw CaseError(fmt::format("unknown bus {}", id));
  return it->second;
}

std::optional<std::size_t> PowerNetwork::branch_between(std::size_t i, std::size_t j) const {
  auto it = branch_index_.find(i < j ? Edge{i, j} : Edge{j, i});
  if (it == branch_index_.end()) return std::nullopt;
  return it->second;
}

std::set<int> PowerNetwork::NeighborIds(int bus_id) const {
  std::set<int> out;
  for (std::size_t j : adjacency_[index_of(bus_id)]) out.insert(bus_ids_[j]);
  return out;
}

}  // namespace wamsplan
