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

#ifndef BUSELAB_REPORT_H_
#define BUSELAB_REPORT_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace buselab {

using OrderedJson = nlohmann::ordered_json;

// Pass/fail record of one check. Witnesses are kept in canonical order (by
// their serialized form) and capped, so the retained set does not depend on
// the order in which cases were evaluated.
class VerificationReport {
 public:
  static constexpr std::size_t kWitnessCap = 32;

  VerificationReport() = default;
  VerificationReport(std::string check, double tolerance)
      : check_(std::move(check)), tolerance_(tolerance) {}

  // Counts one evaluated case; a failed case contributes `witness`.
  void record(bool ok, const OrderedJson& witness = OrderedJson::object());
  // Marks the report failed without a counted case (e.g. a precondition of
  // the whole check did not hold).
  void fail(const OrderedJson& witness);
  void merge(const VerificationReport& other);

  const std::string& check() const { return check_; }
  void set_check(std::string name) { check_ = std::move(name); }
  bool passed() const { return failures_ == 0 && !forced_failure_; }
  std::int64_t checked() const { return checked_; }
  std::int64_t failures() const { return failures_; }
  double tolerance() const { return tolerance_; }
  void set_tolerance(double tol) { tolerance_ = tol; }
  std::vector<OrderedJson> witnesses() const;
  OrderedJson& details() { return details_; }
  const OrderedJson& details() const { return details_; }

  OrderedJson to_json() const;
  static VerificationReport from_json(const OrderedJson& j);

  bool operator==(const VerificationReport& other) const;

 private:
  void keep_witness(const OrderedJson& witness);

  std::string check_;
  double tolerance_ = 0.0;
  std::int64_t checked_ = 0;
  std::int64_t failures_ = 0;
  bool forced_failure_ = false;
  std::map<std::string, OrderedJson> witnesses_;
  OrderedJson details_ = OrderedJson::object();
};

}  // namespace buselab

#endif  // BUSELAB_REPORT_H_
