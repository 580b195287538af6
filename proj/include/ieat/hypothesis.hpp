// Copyright 2026 The ieat Authors
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

// Verdicts for three intersectional-bias hypotheses, evaluated over the
// valence tests of the intersectional battery:
//
//   intersectionality  Valence (WFBM) or Valence (WMBF) has |d| above both
//                      single-axis tests, Valence (BW) and Valence (FM), with
//                      all three significant.
//   race               Valence (WMBM) significant while Valence (WFBF) is not,
//                      or both significant with |d_WMBM| > |d_WFBF|.
//   gender             Valence (WMWF) is the largest significant same-race
//                      gender test (the other being Valence (BFBM)).
//
// Only the significance flag of an insignificant result is ever consulted,
// never its d. With no significant result to compare, the verdict is
// insufficient-significance.

#ifndef IEAT_HYPOTHESIS_HPP_
#define IEAT_HYPOTHESIS_HPP_

#include <span>
#include <string>
#include <vector>

#include "ieat/battery.hpp"

namespace ieat {

inline constexpr double kHypothesisSignificance = 0.05;

enum class Verdict { kConsistent, kInconsistent, kInsufficientSignificance };

const char* VerdictName(Verdict v) noexcept;

struct CitedResult {
  std::string name;
  double d = 0.0;
  double p = 0.0;
  bool significant = false;
};

struct HypothesisEntry {
  std::string hypothesis;  // "intersectionality" | "race" | "gender"
  std::vector<CitedResult> cited;
  Verdict verdict = Verdict::kInsufficientSignificance;
  std::string rule;
  std::string detail;
};

struct HypothesisReport {
  std::vector<HypothesisEntry> entries;
};

// Throws Error(kNotFound) listing every required test name that is missing.
HypothesisReport EvaluateHypotheses(std::span<const TestResult> results);

}  // namespace ieat

#endif  // IEAT_HYPOTHESIS_HPP_
