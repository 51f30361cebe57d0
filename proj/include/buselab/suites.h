// Copyright 2026 The Buselab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Named check suites and their serialized results.

#ifndef BUSELAB_SUITES_H_
#define BUSELAB_SUITES_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "buselab/model_spaces.h"
#include "buselab/report.h"

namespace buselab {

enum class ReportFormat { kJson, kText };

struct ScenarioConfig {
  std::string suite;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;            // overrides the axiom and unit-distance tolerances
  std::optional<nlohmann::json> space;  // replaces the catalog in axioms and busemann
  std::string out;                      // empty: standard output
  ReportFormat format = ReportFormat::kJson;
};

const std::vector<std::string>& suite_names();
bool suite_needs_seed(const std::string& suite);

// Throws ConfigError on unknown keys or suites, or a missing seed.
ScenarioConfig config_from_json(const nlohmann::json& j);
void validate_config(const ScenarioConfig& config);
OrderedJson config_to_json(const ScenarioConfig& config);
ReportFormat format_from_string(const std::string& text);

struct SuiteResult {
  std::string suite;
  std::optional<std::uint64_t> seed;
  std::vector<VerificationReport> reports;
  OrderedJson config = OrderedJson::object();
  double duration_ms = 0.0;  // reported in text output only

  bool passed() const;
  OrderedJson to_json() const;
  static SuiteResult from_json(const OrderedJson& j);
  bool operator==(const SuiteResult& other) const;
};

// The model catalog used by the axioms suite.
std::vector<SpaceModel> catalog_spaces();
// The uniquely geodesic Busemann spaces of the catalog.
std::vector<SpaceModel> busemann_catalog();

SuiteResult run_suite(const ScenarioConfig& config);
std::string emit_report(const SuiteResult& result, ReportFormat format);
// Throws IoError when the path cannot be written.
void write_report(const std::string& path, const std::string& text);

}  // namespace buselab

#endif  // BUSELAB_SUITES_H_
