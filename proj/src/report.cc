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

#include "buselab/report.h"

#include "buselab/errors.h"

namespace buselab {

void VerificationReport::keep_witness(const OrderedJson& witness) {
  witnesses_.emplace(witness.dump(), witness);
  if (witnesses_.size() > kWitnessCap) witnesses_.erase(std::prev(witnesses_.end()));
}

void VerificationReport::record(bool ok, const OrderedJson& witness) {
  ++checked_;
  if (ok) return;
  ++failures_;
  keep_witness(witness);
}

void VerificationReport::fail(const OrderedJson& witness) {
  forced_failure_ = true;
  keep_witness(witness);
}

void VerificationReport::merge(const VerificationReport& other) {
  checked_ += other.checked_;
  failures_ += other.failures_;
  forced_failure_ = forced_failure_ || other.forced_failure_;
  for (const auto& [key, w] : other.witnesses_) keep_witness(w);
}

std::vector<OrderedJson> VerificationReport::witnesses() const {
  std::vector<OrderedJson> out;
  out.reserve(witnesses_.size());
  for (const auto& [key, w] : witnesses_) out.push_back(w);
  return out;
}

OrderedJson VerificationReport::to_json() const {
  OrderedJson j;
  j["check"] = check_;
  j["passed"] = passed();
  j["checked"] = checked_;
  j["failures"] = failures_;
  j["tolerance"] = tolerance_;
  j["witnesses"] = witnesses();
  j["details"] = details_;
  return j;
}

VerificationReport VerificationReport::from_json(const OrderedJson& j) {
  try {
    VerificationReport r(j.at("check").get<std::string>(), j.at("tolerance").get<double>());
    r.checked_ = j.at("checked").get<std::int64_t>();
    r.failures_ = j.at("failures").get<std::int64_t>();
    for (const auto& w : j.at("witnesses")) r.keep_witness(w);
    r.forced_failure_ = !j.at("passed").get<bool>() && r.failures_ == 0;
    r.details_ = j.at("details");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed report: ") + e.what());
  }
}

bool VerificationReport::operator==(const VerificationReport& other) const {
  return to_json() == other.to_json();
}

}  // namespace buselab
