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

#ifndef WAMSPLAN_CONTINGENCY_HPP_
#define WAMSPLAN_CONTINGENCY_HPP_

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "wamsplan/network.hpp"
#include "wamsplan/options.hpp"
#include "wamsplan/plan.hpp"

namespace wamsplan {

// Fixed-size set of bus indices packed into 64-bit words.
class BusSet {
 public:
  BusSet() = default;
  explicit BusSet(std::size_t n) : words_((n + 63) / 64, 0) {}

  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  bool Intersects(const BusSet& other) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w] & other.words_[w]) return true;
    }
    return false;
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct ContingencyConfig {
  // Branch indices eligible for outage, ascending.
  std::vector<std::size_t> failable_branches;
  int max_order = 1;
  // Enumeration refuses to produce more states than this.
  std::size_t state_cap = 1'000'000;
};

// Resolves the failable set; max_order is clamped to its size.
ContingencyConfig ResolveContingency(const PowerNetwork& network, const ContingencySpec& spec);

// A combination of simultaneous branch outages.
struct SystemState {
  std::vector<std::size_t> outages;  // branch indices, ascending
  double probability = 0.0;
};

// The base state followed by every outage combination up to the configured
// order, in lexicographic order of outage sets.
class ContingencySet {
 public:
  ContingencySet(const PowerNetwork& network, ContingencyConfig config,
                 std::vector<SystemState> states);

  const std::vector<SystemState>& states() const { return states_; }
  std::size_t size() const { return states_.size(); }
  const SystemState& operator[](std::size_t s) const { return states_[s]; }
  const ContingencyConfig& config() const { return config_; }

  // Row i holds {j : a_ij,s = 1}; the diagonal is always set.
  std::vector<BusSet> AdjacencyRows(std::size_t state) const;

  // Ordered sum of state probabilities.
  double TotalProbability() const;

 private:
  ContingencyConfig config_;
  std::vector<SystemState> states_;
  std::vector<BusSet> base_rows_;
  std::vector<Edge> endpoints_;
};

// Throws ModelError if the configuration is invalid or the number of states
// would exceed config.state_cap.
ContingencySet EnumerateStates(const PowerNetwork& network, const ContingencyConfig& config);

// o_{i,s} for every bus: 1 iff the bus is measured directly, by a DULR at its
// own end of any branch, or across an in-service branch.
std::vector<std::uint8_t> Observability(const PlacementPlan& plan,
                                        const ContingencySet& states, std::size_t state);

struct UnreliabilityReport {
  std::vector<double> per_bus;
  double total = 0.0;
};

// U_i = sum_s p_s (1 - o_{i,s}); total = sum_i U_i, both summed in index
// order.
UnreliabilityReport Unreliability(const PlacementPlan& plan, const ContingencySet& states);

}  // namespace wamsplan

#endif  // WAMSPLAN_CONTINGENCY_HPP_
