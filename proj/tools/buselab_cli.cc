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

// Command-line front end: runs a named check suite and writes its report.
// Exit status 0 when every check passes, 1 on check failures, 2 on usage,
// configuration or I/O errors.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "buselab/buselab.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

int report_error(const std::string& message) {
  std::cerr << "buselab: " << message << "\n";
  return kExitUsage;
}

bool read_file(const std::string& path, std::string& text) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream s;
  s << in.rdbuf();
  text = s.str();
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Runs buselab check suites and emits verification reports."};
  std::string config_path, suite, out, format;
  std::uint64_t seed = 0;
  double tol = 0.0;
  app.add_option("--config", config_path, "JSON scenario config")->check(CLI::ExistingFile);
  app.add_option("--suite", suite,
                 "axioms|busemann|horofn|transfers|scissors|tapes|grasshopper|counterexamples|all");
  auto* seed_opt = app.add_option("--seed", seed, "random seed");
  app.add_option("--out", out, "output path (default: standard output)");
  app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  auto* tol_opt = app.add_option("--tol", tol, "tolerance override");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  nlohmann::json config = nlohmann::json::object();
  if (!config_path.empty()) {
    std::string text;
    if (!read_file(config_path, text)) return report_error("cannot read " + config_path);
    try {
      config = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      return report_error(config_path + ": " + e.what());
    }
    if (!config.is_object()) return report_error(config_path + ": config must be an object");
  }
  if (!suite.empty()) config["suite"] = suite;
  if (*seed_opt) config["seed"] = seed;
  if (*tol_opt) config["tol"] = tol;
  if (!out.empty()) config["out"] = out;
  if (!format.empty()) config["format"] = format;
  if (!config.contains("suite")) return report_error("no suite given (use --suite or --config)");

  const std::string out_path = config.value("out", std::string());
  const buselab_format fmt =
      config.value("format", std::string("json")) == "text" ? BUSELAB_FORMAT_TEXT
                                                            : BUSELAB_FORMAT_JSON;

  buselab_result* result = nullptr;
  if (buselab_run_suite(config.dump().c_str(), &result) != BUSELAB_OK) {
    return report_error(buselab_last_error());
  }
  const bool passed = buselab_result_passed(result) != 0;
  buselab_status status = BUSELAB_OK;
  if (out_path.empty()) {
    char* text = nullptr;
    status = buselab_result_emit(result, fmt, &text);
    if (status == BUSELAB_OK) {
      std::cout << text;
      std::cout.flush();
      buselab_string_free(text);
    }
  } else {
    status = buselab_result_write(result, fmt, out_path.c_str());
  }
  buselab_result_destroy(result);
  if (status != BUSELAB_OK) return report_error(buselab_last_error());
  return passed ? kExitPass : kExitCheckFailure;
}
