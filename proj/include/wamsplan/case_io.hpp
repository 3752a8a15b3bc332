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

#ifndef WAMSPLAN_CASE_IO_HPP_
#define WAMSPLAN_CASE_IO_HPP_

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "wamsplan/network.hpp"
#include "wamsplan/options.hpp"

namespace wamsplan {

// A complete planning case: network, parameters and planning options.
struct Case {
  std::string name;
  PowerNetwork network;
  CaseParameters parameters;
  PlanningOptions options;
};

// Parses and validates a case document (schema in docs/case-format.md).
// Throws CaseError naming the offending location.
Case LoadCase(std::istream& source);
Case LoadCaseJson(const nlohmann::json& doc);

// Inverse of LoadCaseJson; LoadCaseJson(SerializeCase(c)) reproduces c.
nlohmann::json SerializeCase(const Case& c);

// Embedded "ieee9" and "ieee57" cases.
Case BuiltinCase(std::string_view name);
std::vector<std::string> BuiltinCaseNames();

// A built-in name or a path to a case file.
Case LoadCaseOrBuiltin(const std::string& name_or_path);

}  // namespace wamsplan

#endif  // WAMSPLAN_CASE_IO_HPP_
