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

// C interface to the buselab geometry core. Every function returns a status
// code; on failure buselab_last_error() describes the error of the calling
// thread. Strings returned through `char**` are released with
// buselab_string_free. Points and ideal points are passed as JSON text in
// the same forms the configuration files use.

#ifndef BUSELAB_BUSELAB_H_
#define BUSELAB_BUSELAB_H_

#include <stdint.h>

#if defined(_WIN32)
#define BUSELAB_API __declspec(dllexport)
#else
#define BUSELAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum buselab_status {
  BUSELAB_OK = 0,
  BUSELAB_ERR_DOMAIN = 2,
  BUSELAB_ERR_DEGENERATE = 3,
  BUSELAB_ERR_AMBIGUOUS = 4,
  BUSELAB_ERR_CONVERGENCE = 5,
  BUSELAB_ERR_SEARCH = 6,
  BUSELAB_ERR_PRECONDITION = 7,
  BUSELAB_ERR_CONFIG = 8,
  BUSELAB_ERR_IO = 9,
  BUSELAB_ERR_ARGUMENT = 10,
  BUSELAB_ERR_INTERNAL = 11
} buselab_status;

typedef enum buselab_format { BUSELAB_FORMAT_JSON = 0, BUSELAB_FORMAT_TEXT = 1 } buselab_format;

typedef struct buselab_space buselab_space;
typedef struct buselab_result buselab_result;

BUSELAB_API const char* buselab_version(void);
BUSELAB_API const char* buselab_last_error(void);
BUSELAB_API const char* buselab_status_name(buselab_status status);
BUSELAB_API void buselab_string_free(char* text);

BUSELAB_API buselab_status buselab_space_from_json(const char* json, buselab_space** out);
BUSELAB_API buselab_status buselab_space_load_tree(const char* path, buselab_space** out);
BUSELAB_API buselab_status buselab_space_to_json(const buselab_space* space, char** out);
BUSELAB_API void buselab_space_destroy(buselab_space* space);

BUSELAB_API buselab_status buselab_distance(const buselab_space* space, const char* x,
                                            const char* y, double* out);
// Exact rational distance on trees, as "n/d" text.
BUSELAB_API buselab_status buselab_distance_exact(const buselab_space* space, const char* x,
                                                  const char* y, char** out);
BUSELAB_API buselab_status buselab_midpoint(const buselab_space* space, const char* x,
                                            const char* y, char** out);
// Busemann function of the ray from `base` to the ideal point `xi`.
BUSELAB_API buselab_status buselab_busemann(const buselab_space* space, const char* base,
                                            const char* xi, const char* y, double* out);
// Grasshopper distance; -1 when y is unreachable.
BUSELAB_API buselab_status buselab_grasshopper(const buselab_space* space, const char* x,
                                               const char* y, int64_t* out);
BUSELAB_API buselab_status buselab_tape_position(int p, int j, int z, double* out);

// Runs a suite described by a JSON scenario config.
BUSELAB_API buselab_status buselab_run_suite(const char* config, buselab_result** out);
BUSELAB_API int buselab_result_passed(const buselab_result* result);
BUSELAB_API buselab_status buselab_result_emit(const buselab_result* result,
                                               buselab_format format, char** out);
BUSELAB_API buselab_status buselab_result_write(const buselab_result* result,
                                                buselab_format format, const char* path);
BUSELAB_API void buselab_result_destroy(buselab_result* result);

#ifdef __cplusplus
}
#endif

#endif  // BUSELAB_BUSELAB_H_
