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

#include "buselab/suites.h"

#include <gtest/gtest.h>

#include "buselab/errors.h"

namespace buselab {
namespace {

ScenarioConfig Config(std::string suite, std::optional<std::uint64_t> seed = 7) {
  ScenarioConfig c;
  c.suite = std::move(suite);
  c.seed = seed;
  return c;
}

TEST(ScenarioConfig, Validation) {
  EXPECT_THROW(validate_config(Config("foo")), ConfigError);
  EXPECT_THROW(validate_config(Config("axioms", std::nullopt)), ConfigError);
  EXPECT_NO_THROW(validate_config(Config("scissors", std::nullopt)));
  auto bad_tol = Config("axioms");
  bad_tol.tol = -1.0;
  EXPECT_THROW(validate_config(bad_tol), ConfigError);
  auto bad_space = Config("axioms");
  bad_space.space = nlohmann::json{{"kind", "klein_bottle"}};
  EXPECT_THROW(validate_config(bad_space), ConfigError);
}

TEST(ScenarioConfig, FromJson) {
  const auto c = config_from_json(
      nlohmann::json::parse(R"({"suite": "busemann", "seed": 3, "tol": 1e-8,
                                "space": {"kind": "hyperbolic"}, "format": "text"})"));
  EXPECT_EQ(c.suite, "busemann");
  EXPECT_EQ(c.seed, 3u);
  EXPECT_EQ(c.tol, 1e-8);
  EXPECT_EQ(c.format, ReportFormat::kText);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"suite": "axioms", "sed": 1})")),
               ConfigError);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"seed": -4})")), ConfigError);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"format": "xml"})")), ConfigError);
  EXPECT_THROW(config_from_json(nlohmann::json::array()), ConfigError);
}

TEST(RunSuite, CounterexamplesPass) {
  const auto r = run_suite(Config("counterexamples"));
  ASSERT_EQ(r.reports.size(), 5u);
  EXPECT_TRUE(r.passed()) << r.to_json().dump(1);
  EXPECT_EQ(r.reports[0].check(), "counterexample.line-sine");
}

TEST(RunSuite, DeterministicSuitesPass) {
  for (const char* name : {"transfers", "scissors", "tapes"}) {
    const auto r = run_suite(Config(name, std::nullopt));
    EXPECT_TRUE(r.passed()) << name << r.to_json().dump(1);
  }
}

TEST(RunSuite, SupNormOverrideFails) {
  auto c = Config("busemann");
  c.space = nlohmann::json{{"kind", "minkowski_linf"}};
  const auto r = run_suite(c);
  ASSERT_EQ(r.reports.size(), 1u);
  EXPECT_FALSE(r.passed());
  EXPECT_FALSE(r.reports[0].witnesses().empty());
}

TEST(SuiteResult, JsonRoundTripAndDeterminism) {
  const auto a = run_suite(Config("grasshopper", 11));
  const auto b = run_suite(Config("grasshopper", 11));
  EXPECT_EQ(emit_report(a, ReportFormat::kJson), emit_report(b, ReportFormat::kJson));
  const auto back = SuiteResult::from_json(OrderedJson::parse(emit_report(a, ReportFormat::kJson)));
  EXPECT_EQ(back, a);
  EXPECT_EQ(emit_report(back, ReportFormat::kJson), emit_report(a, ReportFormat::kJson));
}

TEST(SuiteResult, EmptyAndFailingReports) {
  SuiteResult empty;
  empty.suite = "none";
  const auto j = OrderedJson::parse(emit_report(empty, ReportFormat::kJson));
  EXPECT_TRUE(j["reports"].is_array());
  EXPECT_TRUE(j["reports"].empty());
  EXPECT_TRUE(j["passed"].get<bool>());

  SuiteResult failing;
  failing.suite = "demo";
  VerificationReport r("demo.check", 1e-9);
  r.record(false, {{"x", 1}});
  failing.reports.push_back(r);
  const auto fj = OrderedJson::parse(emit_report(failing, ReportFormat::kJson));
  EXPECT_FALSE(fj["passed"].get<bool>());
  EXPECT_FALSE(fj["reports"][0]["witnesses"].empty());
  const auto text = emit_report(failing, ReportFormat::kText);
  EXPECT_NE(text.find("FAIL"), std::string::npos);
  EXPECT_NE(text.find("demo.check"), std::string::npos);
}

TEST(WriteReport, UnwritablePath) {
  EXPECT_THROW(write_report("/nonexistent-dir/out.json", "{}"), IoError);
}

}  // namespace
}  // namespace buselab
