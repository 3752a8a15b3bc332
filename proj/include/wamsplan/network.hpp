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

#ifndef WAMSPLAN_NETWORK_HPP_
#define WAMSPLAN_NETWORK_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "wamsplan/money.hpp"

namespace wamsplan {

using Edge = std::pair<std::size_t, std::size_t>;

// A power branch between two buses, identified by bus id (not index).
struct Branch {
  int from = 0;
  int to = 0;
  bool transformer = false;
  // Probability the branch is in service.
  double reliability = 0.99;

  friend bool operator==(const Branch&, const Branch&) = default;
};

// All-pairs hop counts over the communication infrastructure.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), hops_(n * n, 0) {}

  std::size_t size() const { return n_; }
  int operator()(std::size_t i, std::size_t j) const { return hops_[i * n_ + j]; }
  int& at(std::size_t i, std::size_t j) { return hops_[i * n_ + j]; }

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<int> hops_;
};

// Connected components of the transformer-only subgraph. Buses without a
// transformer become singleton substations. Groups are sorted internally and
// ordered by their smallest member.
std::vector<std::vector<std::size_t>> GroupSubstations(
    std::size_t num_buses, std::span<const Edge> transformer_edges);

// Breadth-first search from every node. Throws CaseError when the graph is
// disconnected.
DistanceMatrix HopDistances(std::size_t num_nodes, std::span<const Edge> edges);

// Cost, reliability and communication parameters of a planning case.
struct CaseParameters {
  Money cost_pmu = Money::FromCents(881946);
  Money cost_dulr = Money::FromCents(514687);
  Money cost_pdc = Money::FromCents(775000);
  Money cost_interrupt = Money::FromCents(4000000);
  double line_reliability_default = 0.99;
  // Compression ratio applied on the PDC-to-controller leg.
  double compression_ratio = 0.0877;
  // Synchrophasor message size times reporting rate, bits per second.
  double message_rate_bps = 20160.0;
  // Maximum number of branch-current channels per PMU.
  int channel_limit = 2;

  // Per-device overrides keyed by bus id; DULRs by (bus, far end).
  std::map<int, Money> pmu_cost_by_bus;
  std::map<int, Money> pdc_cost_by_bus;
  std::map<std::pair<int, int>, Money> dulr_cost_by_end;
  // Keyed by any bus located in the substation.
  std::map<int, Money> interrupt_cost_by_bus;

  Money PmuCost(int bus) const;
  Money PdcCost(int bus) const;
  Money DulrCost(int bus, int toward) const;

  // Throws CaseError on out-of-range values.
  void Validate() const;

  friend bool operator==(const CaseParameters&, const CaseParameters&) = default;
};

// Undirected bus/branch graph with its substation partition, controller
// location and communication hop distances. Immutable once constructed.
class PowerNetwork {
 public:
  struct Description {
    std::vector<int> bus_ids;
    std::vector<Branch> branches;
    // Explicit partition by bus id; derived from transformers when absent.
    std::optional<std::vector<std::vector<int>>> substations;
    int controller_bus = 0;
    // Communication links by bus id; the power graph when absent.
    std::optional<std::vector<std::pair<int, int>>> ci_links;
  };

  // Validates the description; throws CaseError with context on failure.
  explicit PowerNetwork(Description description);

  std::size_t num_buses() const { return bus_ids_.size(); }
  // Sorted ascending; bus index i refers to bus_ids()[i].
  const std::vector<int>& bus_ids() const { return bus_ids_; }
  int bus_id(std::size_t index) const { return bus_ids_[index]; }
  bool has_bus(int id) const { return index_.contains(id); }
  // Throws CaseError("unknown bus ...").
  std::size_t index_of(int id) const;

  // Sorted by (from, to) with from < to.
  const std::vector<Branch>& branches() const { return branches_; }
  std::size_t num_branches() const { return branches_.size(); }
  const Edge& endpoints(std::size_t branch) const { return endpoints_[branch]; }
  std::optional<std::size_t> branch_between(std::size_t i, std::size_t j) const;

  // Adjacent bus indices, ascending.
  const std::vector<std::size_t>& neighbors(std::size_t i) const { return adjacency_[i]; }
  // Adjacent bus ids of a bus id; throws on unknown bus.
  std::set<int> NeighborIds(int bus_id) const;

  std::size_t num_substations() const { return substations_.size(); }
  const std::vector<std::vector<std::size_t>>& substations() const { return substations_; }
  std::size_t substation_of(std::size_t bus) const { return substation_of_[bus]; }
  bool has_explicit_substations() const { return explicit_substations_; }

  std::size_t controller() const { return controller_; }
  const DistanceMatrix& hops() const { return hops_; }
  const std::optional<std::vector<std::pair<int, int>>>& ci_links() const { return ci_links_; }

 private:
  std::vector<int> bus_ids_;
  std::map<int, std::size_t> index_;
  std::vector<Branch> branches_;
  std::vector<Edge> endpoints_;
  std::map<Edge, std::size_t> branch_index_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<std::vector<std::size_t>> substations_;
  std::vector<std::size_t> substation_of_;
  bool explicit_substations_ = false;
  std::size_t controller_ = 0;
  std::optional<std::vector<std::pair<int, int>>> ci_links_;
  DistanceMatrix hops_;
};

}  // namespace wamsplan

#endif  // WAMSPLAN_NETWORK_HPP_
