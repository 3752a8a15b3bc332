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

#ifndef WAMSPLAN_PLAN_HPP_
#define WAMSPLAN_PLAN_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wamsplan/network.hpp"
#include "wamsplan/options.hpp"

namespace wamsplan {

class BinaryMatrix {
 public:
  BinaryMatrix() = default;
  explicit BinaryMatrix(std::size_t n) : n_(n), bits_(n * n, 0) {}

  std::size_t size() const { return n_; }
  bool operator()(std::size_t i, std::size_t j) const { return bits_[i * n_ + j] != 0; }
  void set(std::size_t i, std::size_t j, bool v = true) { bits_[i * n_ + j] = v ? 1 : 0; }
  bool RowAny(std::size_t i) const;
  int RowCount(std::size_t i) const;

  friend bool operator==(const BinaryMatrix&, const BinaryMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> bits_;
};

// A WAMS construction plan over bus indices.
//   pmu(i, i)    PMU installed at bus i (measures its voltage)
//   pmu(i, j)    that PMU measures the current of branch (i, j)
//   dulr(i, j)   DULR at the i end of branch (i, j)
//   pdc[j]       PDC at bus j
//   assign(i, j) devices at bus i report to the PDC at bus j
struct PlacementPlan {
  PlacementPlan() = default;
  explicit PlacementPlan(std::size_t n) : pmu(n), dulr(n), pdc(n, 0), assign(n) {}

  std::size_t size() const { return pdc.size(); }

  BinaryMatrix pmu;
  BinaryMatrix dulr;
  std::vector<std::uint8_t> pdc;
  BinaryMatrix assign;

  friend bool operator==(const PlacementPlan&, const PlacementPlan&) = default;
};

// Indicators implied by a plan; never stored, always recomputed.
struct DerivedIndicators {
  // A newly installed PMU at bus i (pre-installed ones excluded).
  std::vector<std::uint8_t> new_pmu;
  // Any measurement device (PMU or DULR) at bus i.
  std::vector<std::uint8_t> device;
  // Substation k hosts any device and must be interrupted.
  std::vector<std::uint8_t> interrupted;
};

DerivedIndicators Derive(const PlacementPlan& plan, const PowerNetwork& network,
                         const PlanningOptions& options);

// Plan files: {"pmus": [{"bus", "observes", "pdc"}], "dulrs": [{"bus",
// "toward", "pdc"}], "pdcs": [...]}. Throws PlanError on malformed input.
PlacementPlan PlanFromJson(const nlohmann::json& doc, const PowerNetwork& network);
nlohmann::json PlanToJson(const PlacementPlan& plan, const PowerNetwork& network,
                          const PlanningOptions& options);

// Columns of the tabular report, e.g. "1(1)→9, 7(5,7,8)→9".
struct PlanNotation {
  std::string pmus;
  std::string dulrs;
  std::string pdcs;
};
PlanNotation FormatPlan(const PlacementPlan& plan, const PowerNetwork& network);

}  // namespace wamsplan

#endif  // WAMSPLAN_PLAN_HPP_
