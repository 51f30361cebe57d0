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

#include "buselab/buselab.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <string>

#include <json.hpp>

#include "buselab/errors.h"
#include "buselab/grasshopper.h"
#include "buselab/horofunctions.h"
#include "buselab/model_spaces.h"
#include "buselab/suites.h"
#include "buselab/tapes.h"

struct buselab_space {
  buselab::SpaceModel model;
};

struct buselab_result {
  buselab::SuiteResult result;
};

namespace {

thread_local std::string last_error;

buselab_status fail(buselab_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <typename Body>
buselab_status guard(Body&& body) {
  try {
    body();
    last_error.clear();
    return BUSELAB_OK;
  } catch (const buselab::Error& e) {
    return fail(static_cast<buselab_status>(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(BUSELAB_ERR_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(BUSELAB_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(BUSELAB_ERR_INTERNAL, "unknown error");
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

nlohmann::json parse(const char* text) {
  require(text != nullptr, "null JSON argument");
  return nlohmann::json::parse(text);
}

buselab::Point point(const buselab_space* space, const char* text) {
  return buselab::point_from_json(space->model, parse(text));
}

buselab::ReportFormat to_format(buselab_format format) {
  switch (format) {
    case BUSELAB_FORMAT_JSON:
      return buselab::ReportFormat::kJson;
    case BUSELAB_FORMAT_TEXT:
      return buselab::ReportFormat::kText;
  }
  throw buselab::ConfigError("unknown report format");
}

// Null handles and outputs are argument errors, not crashes.
template <typename Body>
buselab_status guarded_call(bool args_ok, Body&& body) {
  if (!args_ok) return fail(BUSELAB_ERR_ARGUMENT, "null argument");
  return guard(std::forward<Body>(body));
}

}  // namespace

extern "C" {

const char* buselab_version(void) { return "1.0.0"; }

const char* buselab_last_error(void) { return last_error.c_str(); }

const char* buselab_status_name(buselab_status status) {
  switch (status) {
    case BUSELAB_OK: return "ok";
    case BUSELAB_ERR_DOMAIN: return "domain";
    case BUSELAB_ERR_DEGENERATE: return "degenerate";
    case BUSELAB_ERR_AMBIGUOUS: return "ambiguous";
    case BUSELAB_ERR_CONVERGENCE: return "convergence";
    case BUSELAB_ERR_SEARCH: return "search";
    case BUSELAB_ERR_PRECONDITION: return "precondition";
    case BUSELAB_ERR_CONFIG: return "config";
    case BUSELAB_ERR_IO: return "io";
    case BUSELAB_ERR_ARGUMENT: return "argument";
    case BUSELAB_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void buselab_string_free(char* text) { std::free(text); }

buselab_status buselab_space_from_json(const char* json, buselab_space** out) {
  return guarded_call(out != nullptr, [&] {
    *out = new buselab_space{buselab::space_from_json(parse(json))};
  });
}

buselab_status buselab_space_load_tree(const char* path, buselab_space** out) {
  return guarded_call(path != nullptr && out != nullptr, [&] {
    *out = new buselab_space{buselab::SpaceModel::Tree(buselab::load_tree_desc(path))};
  });
}

buselab_status buselab_space_to_json(const buselab_space* space, char** out) {
  return guarded_call(space != nullptr && out != nullptr, [&] {
    *out = copy_string(buselab::space_to_json(space->model).dump());
  });
}

void buselab_space_destroy(buselab_space* space) { delete space; }

buselab_status buselab_distance(const buselab_space* space, const char* x, const char* y,
                                double* out) {
  return guarded_call(space != nullptr && out != nullptr, [&] {
    *out = buselab::distance(space->model, point(space, x), point(space, y));
  });
}

buselab_status buselab_distance_exact(const buselab_space* space, const char* x, const char* y,
                                      char** out) {
  return guarded_call(space != nullptr && out != nullptr, [&] {
    const auto d = buselab::distance_exact(space->model, point(space, x), point(space, y));
    *out = copy_string(buselab::format_rational(d));
  });
}

buselab_status buselab_midpoint(const buselab_space* space, const char* x, const char* y,
                                char** out) {
  return guarded_call(space != nullptr && out != nullptr, [&] {
    const auto m = buselab::midpoint(space->model, point(space, x), point(space, y));
    *out = copy_string(buselab::point_to_json(space->model, m).dump());
  });
}

buselab_status buselab_busemann(const buselab_space* space, const char* base, const char* xi,
                                const char* y, double* out) {
  return guarded_call(space != nullptr && out != nullptr, [&] {
    const auto ideal = buselab::ideal_from_json(space->model, parse(xi));
    const auto ray = buselab::ray_from(space->model, point(space, base), ideal);
    *out = buselab::busemann_value(space->model, ray, point(space, y));
  });
}

buselab_status buselab_grasshopper(const buselab_space* space, const char* x, const char* y,
                                   int64_t* out) {
  return guarded_call(space != nullptr && out != nullptr, [&] {
    const auto g = buselab::grasshopper_distance(space->model, point(space, x), point(space, y));
    *out = g ? *g : -1;
  });
}

buselab_status buselab_tape_position(int p, int j, int z, double* out) {
  return guarded_call(out != nullptr, [&] { *out = buselab::tape_position(p, j, z); });
}

buselab_status buselab_run_suite(const char* config, buselab_result** out) {
  return guarded_call(out != nullptr, [&] {
    nlohmann::json j;
    try {
      j = parse(config);
    } catch (const nlohmann::json::exception& e) {
      throw buselab::ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    const auto cfg = buselab::config_from_json(j);
    *out = new buselab_result{buselab::run_suite(cfg)};
  });
}

int buselab_result_passed(const buselab_result* result) {
  return result != nullptr && result->result.passed() ? 1 : 0;
}

buselab_status buselab_result_emit(const buselab_result* result, buselab_format format,
                                   char** out) {
  return guarded_call(result != nullptr && out != nullptr, [&] {
    *out = copy_string(buselab::emit_report(result->result, to_format(format)));
  });
}

buselab_status buselab_result_write(const buselab_result* result, buselab_format format,
                                    const char* path) {
  return guarded_call(result != nullptr && path != nullptr, [&] {
    buselab::write_report(path, buselab::emit_report(result->result, to_format(format)));
  });
}

void buselab_result_destroy(buselab_result* result) { delete result; }

}  // extern "C"
