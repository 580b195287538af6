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

// One-sided permutation p-values for the differential association statistic.
//
// Every assignment of n of the 2n pooled elements to the X label is a
// partition; its statistic is 2 * (sum of chosen s-values) - total. The exact
// path walks all C(2n, n) assignments in revolving-door order (one add and one
// subtract per step); the Monte Carlo path samples assignments uniformly with
// a counter-based generator keyed by (seed, draw index).
//
// Counts are integers merged across workers, so results never depend on the
// thread count.

#ifndef IEAT_PERMUTATION_HPP_
#define IEAT_PERMUTATION_HPP_

#include <cstdint>
#include <optional>
#include <string_view>

#include "ieat/association.hpp"

namespace ieat {

enum class TiePolicy { kStrict, kInclusive };
enum class PValueMethod { kExact, kMonteCarlo };

std::optional<TiePolicy> ParseTiePolicy(std::string_view name);
const char* TiePolicyName(TiePolicy policy) noexcept;
const char* PValueMethodName(PValueMethod method) noexcept;

inline constexpr std::uint64_t kDefaultExactLimit = 10'000'000;
inline constexpr std::uint64_t kDefaultMonteCarloSamples = 100'000;
inline constexpr std::uint64_t kMinMonteCarloSamples = 1'000;
inline constexpr std::uint64_t kDefaultSeed = 42;

struct PValueResult {
  double p = 0.0;
  PValueMethod method = PValueMethod::kExact;
  TiePolicy tie_policy = TiePolicy::kStrict;
  // Partitions enumerated (exact) or samples drawn (Monte Carlo).
  std::uint64_t denominator = 0;
  std::uint64_t greater_count = 0;
  std::uint64_t tie_count = 0;
  std::uint64_t less_count = 0;
  double observed = 0.0;
  double tie_tolerance = 0.0;
  // Monte Carlo only.
  double ci_halfwidth = 0.0;
  std::uint64_t seed = 0;

  std::uint64_t numerator() const noexcept {
    return tie_policy == TiePolicy::kStrict ? greater_count
                                            : greater_count + tie_count;
  }
};

struct PermutationPlan {
  unsigned n = 0;
  // C(2n, n); nullopt when it overflows 64 bits.
  std::optional<std::uint64_t> total_partitions;
  std::uint64_t exact_limit = kDefaultExactLimit;
  bool exact = false;
};

PermutationPlan Plan(unsigned n, std::uint64_t exact_limit = kDefaultExactLimit);

// 1e-12 * max|s| * 2n; differences within it count as ties.
double TieTolerance(const AssociationProfile& profile);

// threads == 0 picks the hardware concurrency.
PValueResult ExactPValue(const AssociationProfile& profile, TiePolicy policy,
                         std::uint64_t exact_limit = kDefaultExactLimit,
                         unsigned threads = 0);

PValueResult MonteCarloPValue(const AssociationProfile& profile,
                              std::uint64_t samples, std::uint64_t seed,
                              TiePolicy policy, unsigned threads = 0);

struct PermutationOptions {
  std::uint64_t exact_limit = kDefaultExactLimit;
  std::uint64_t mc_samples = kDefaultMonteCarloSamples;
  std::uint64_t seed = kDefaultSeed;
  TiePolicy tie_policy = TiePolicy::kStrict;
  unsigned threads = 0;
};

// Exact when the plan allows it, Monte Carlo otherwise.
PValueResult PermutationPValue(const AssociationProfile& profile,
                               const PermutationOptions& options);

}  // namespace ieat

#endif  // IEAT_PERMUTATION_HPP_
