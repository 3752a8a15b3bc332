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

#include <sstream>
#include <string>

#include <fmt/format.h>

#include "wamsplan/case_io.hpp"
#include "wamsplan/errors.hpp"

namespace wamsplan {

namespace {

struct BuiltinSpec {
  const char* name;
  int num_buses;
  int controller_bus;
  // Space-separated "from-to" tokens; a trailing T marks a transformer.
  const char* branches;
};

// WSCC 3-machine system in the Anderson numbering.
constexpr BuiltinSpec kIeee9{"ieee9", 9, 8,
    "4-5 4-6 5-7 6-9 7-8 8-9 1-4T 2-7T 3-9T "};

// Parallel circuits 4-18 and 24-25 appear once.
constexpr BuiltinSpec kIeee57{"ieee57", 57, 38,
    "1-2 2-3 3-4 4-5 4-6 6-7 6-8 8-9 9-10 9-11 9-12 9-13 13-14 13-15 1-15 "
    "1-16 1-17 3-15 4-18T 5-6 7-8 10-12 11-13 12-13 12-16 12-17 14-15 18-19 "
    "19-20 21-20T 21-22 22-23 23-24 24-25T 24-26T 26-27 27-28 28-29 7-29T "
    "25-30 30-31 31-32 32-33 34-32T 34-35 35-36 36-37 37-38 37-39 36-40 22-38 "
    "11-41T 41-42 41-43 38-44 15-45T 14-46T 46-47 47-48 48-49 49-50 50-51 "
    "10-51T 13-49T 29-52 52-53 53-54 54-55 11-43T 44-45 40-56T 56-41 56-42 "
    "39-57T 57-56 38-49 38-48 9-55T "};

nlohmann::json ToJson(const BuiltinSpec& spec) {
  nlohmann::json doc;
  doc["name"] = spec.name;
  nlohmann::json buses = nlohmann::json::array();
  for (int i = 1; i <= spec.num_buses; ++i) buses.push_back(i);
  doc["buses"] = buses;
  nlohmann::json branches = nlohmann::json::array();
  std::istringstream tokens(spec.branches);
  std::string token;
  while (tokens >> token) {
    const bool transformer = token.back() == 'T';
    if (transformer) token.pop_back();
    const auto dash = token.find('-');
    branches.push_back({{"from", std::stoi(token.substr(0, dash))},
                        {"to", std::stoi(token.substr(dash + 1))},
                        {"transformer", transformer}});
  }
  doc["branches"] = branches;
  doc["controller_bus"] = spec.controller_bus;
  return doc;
}

}  // namespace

std::vector<std::string> BuiltinCaseNames() { return {kIeee9.name, kIeee57.name}; }

Case BuiltinCase(std::string_view name) {
  for (const BuiltinSpec* spec : {&kIeee9, &kIeee57}) {
    if (name == spec->name) return LoadCaseJson(ToJson(*spec));
  }
  throw CaseError(fmt::format("unknown builtin case \"{}\"", name));
}

}  // namespace wamsplan
