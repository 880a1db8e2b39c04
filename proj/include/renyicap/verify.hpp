// Copyright 2026 The renyicap developers
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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace renyicap::verify {

/// One property over a seeded corpus: `worst_slack` is the largest observed
/// violation measure (at most zero means comfortably inside tolerance) and
/// `detail` pins the violating instance for replay when the property fails.
struct PropertyResult {
  std::string name;
  int samples = 0;
  double worst_slack = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<PropertyResult> properties;
  bool pass = true;
};

/// Suites: divergence-props, channel-props, lemma-equality, subadditivity,
/// converse-chain, all.
std::vector<std::string> suite_names();

/// Runs one named suite; deterministic given (name, seed).
SuiteReport run_suite(const std::string& name, std::uint64_t seed);

nlohmann::json report_to_json(const SuiteReport& report);

}  // namespace renyicap::verify
