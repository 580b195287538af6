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

#ifndef IEAT_BATTERY_HPP_
#define IEAT_BATTERY_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ieat/embedding_store.hpp"
#include "ieat/error.hpp"
#include "ieat/permutation.hpp"

namespace ieat {

// Conventional effect-size classes; each boundary belongs to the higher class.
enum class Magnitude { kNone, kSmall, kMedium, kLarge };

Magnitude ClassifyMagnitude(double d) noexcept;
const char* MagnitudeName(Magnitude m) noexcept;

struct TestSpec {
  std::string name;
  std::string x_category;
  std::string y_category;
  std::string a_category;
  std::string b_category;
  // Unset fields fall back to RunOptions.
  std::optional<Pooling> pooling = std::nullopt;
  std::optional<TiePolicy> tie_policy = std::nullopt;
  std::string notes = {};
};

struct RunOptions {
  PermutationOptions permutation;
  Pooling pooling = Pooling::kPerImage;
};

struct TestResult {
  std::string name;
  std::string x_category;
  std::string y_category;
  std::string a_category;
  std::string b_category;
  double statistic = 0.0;
  double d = 0.0;
  PValueResult p;
  std::size_t n_t = 0;  // |X| == |Y|
  std::size_t n_a = 0;  // |A|
  std::size_t n_b = 0;  // |B|
  Magnitude magnitude = Magnitude::kNone;
  int direction = 0;  // sign of d
  Pooling pooling = Pooling::kPerImage;
};

// Fills magnitude and direction from d.
void Classify(TestResult& result) noexcept;

struct Battery {
  std::string name;
  std::string model;
  std::string description;
  std::vector<TestSpec> tests;
};

// JSON document:
//   { "battery": str, "model": str, "description": str,
//     "tests": [ { "name", "x_category", "y_category", "a_category",
//                  "b_category", "pooling"?, "tie_policy"?, "notes"? } ] }
// Test names must be unique and the four categories of a test distinct.
Battery ParseBattery(std::string_view json_text);
Battery LoadBattery(const std::filesystem::path& path);

// Errors propagate with the spec name prefixed to the message.
TestResult RunTest(const TestSpec& spec, const StimulusManifest& manifest,
                   const EmbeddingTable& table, const RunOptions& options);

// Assembles a result from already-resolved sets.
TestResult EvaluateSets(const TestSpec& spec, const CategorySet& x,
                        const CategorySet& y, const CategorySet& a,
                        const CategorySet& b, const RunOptions& options);

struct TestOutcome {
  TestSpec spec;
  std::optional<TestResult> result;
  ErrorCode error_code = ErrorCode::kInternal;
  std::string error;

  bool ok() const noexcept { return result.has_value(); }
};

// Results in spec order; a failing spec does not stop the battery. Throws
// only for an empty battery or when no spec succeeds.
std::vector<TestOutcome> RunBattery(const std::vector<TestSpec>& battery,
                                    const StimulusManifest& manifest,
                                    const EmbeddingTable& table,
                                    const RunOptions& options);

}  // namespace ieat

#endif  // IEAT_BATTERY_HPP_
