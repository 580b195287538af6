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

// False-positive calibration: the four sets of a test are pooled, randomly
// re-split into sets of the original sizes, and tested again. The fraction of
// re-splits with p < alpha estimates the false positive rate at alpha.

#ifndef IEAT_SPECIFICITY_HPP_
#define IEAT_SPECIFICITY_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "ieat/battery.hpp"

namespace ieat {

inline constexpr std::uint64_t kMinSpecificityTrials = 100;

struct SpecificityThreshold {
  double alpha = 0.0;
  std::uint64_t false_positives = 0;
  double false_positive_rate = 0.0;
};

struct SpecificityReport {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::array<std::size_t, 4> sizes{};  // |X|, |Y|, |A|, |B|
  std::vector<SpecificityThreshold> thresholds;
  std::uint64_t exact_trials = 0;
  std::uint64_t monte_carlo_trials = 0;
};

// pool holds at least sum(sizes) vectors; sizes[0] == sizes[1].
// Trial t shuffles with stream t of `seed`, so reports do not depend on
// options.permutation.threads.
SpecificityReport EvaluateSpecificity(const CategorySet& pool,
                                      const std::array<std::size_t, 4>& sizes,
                                      std::uint64_t trials,
                                      std::span<const double> alphas,
                                      std::uint64_t seed,
                                      const RunOptions& options);

// Pools the resolved categories of `spec` in X, Y, A, B order.
SpecificityReport EvaluateSpecificity(const TestSpec& spec,
                                      const StimulusManifest& manifest,
                                      const EmbeddingTable& table,
                                      std::uint64_t trials,
                                      std::span<const double> alphas,
                                      std::uint64_t seed,
                                      const RunOptions& options);

}  // namespace ieat

#endif  // IEAT_SPECIFICITY_HPP_
