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

#ifndef BUSELAB_ERRORS_H_
#define BUSELAB_ERRORS_H_

#include <stdexcept>
#include <string>

namespace buselab {

enum class ErrorCode {
  kDomain = 2,
  kDegenerate = 3,
  kAmbiguous = 4,
  kConvergence = 5,
  kSearch = 6,
  kPrecondition = 7,
  kConfig = 8,
  kIo = 9,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

#define BUSELAB_DEFINE_ERROR(Name, Code)                                  \
  class Name : public Error {                                              \
   public:                                                                 \
    explicit Name(const std::string& what) : Error(ErrorCode::Code, what) {} \
  };

// Point/space mismatch, empty sets, invalid descriptors.
BUSELAB_DEFINE_ERROR(DomainError, kDomain)
// Identical endpoints or equal ideal points where distinct ones are needed.
BUSELAB_DEFINE_ERROR(DegenerateError, kDegenerate)
// More than one minimizer and no rule to pick one (antipodal sphere points).
BUSELAB_DEFINE_ERROR(AmbiguityError, kAmbiguous)
// A truncated limit did not settle before its cap.
BUSELAB_DEFINE_ERROR(ConvergenceError, kConvergence)
// A root was not bracketed inside the largest search window.
BUSELAB_DEFINE_ERROR(SearchError, kSearch)
BUSELAB_DEFINE_ERROR(PreconditionError, kPrecondition)
BUSELAB_DEFINE_ERROR(ConfigError, kConfig)
BUSELAB_DEFINE_ERROR(IoError, kIo)

#undef BUSELAB_DEFINE_ERROR

}  // namespace buselab

#endif  // BUSELAB_ERRORS_H_
