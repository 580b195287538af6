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

#include "ieat/permutation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "ieat/combinations.hpp"
#include "ieat/counter_rng.hpp"
#include "ieat/error.hpp"

namespace ieat {
namespace {

// Ranks per work unit. The running sum is rebuilt from scratch at every block
// start, which bounds incremental drift and keeps every partition's value
// independent of how blocks are distributed.
constexpr std::uint64_t kBlockSize = 1024;

struct Counts {
  std::uint64_t greater = 0;
  std::uint64_t tie = 0;
  std::uint64_t less = 0;

  Counts& operator+=(const Counts& o) {
    greater += o.greater;
    tie += o.tie;
    less += o.less;
    return *this;
  }
};

struct Classifier {
  double observed;
  double total;
  double tolerance;

  void operator()(double chosen_sum, Counts& c) const {
    const double diff = (2.0 * chosen_sum - total) - observed;
    if (diff > tolerance) {
      ++c.greater;
    } else if (diff >= -tolerance) {
      ++c.tie;
    } else {
      ++c.less;
    }
  }
};

unsigned ResolveThreads(unsigned threads, std::uint64_t work_units) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(
      std::min<std::uint64_t>(threads, std::max<std::uint64_t>(work_units, 1)));
}

// Runs fn(unit, counts) over [0, units) on a small pool pulling units from a
// shared counter; per-worker counts are summed at the end.
template <typename Fn>
Counts ParallelCount(std::uint64_t units, unsigned threads, Fn fn) {
  threads = ResolveThreads(threads, units);
  if (threads == 1) {
    Counts c;
    for (std::uint64_t u = 0; u < units; ++u) fn(u, c);
    return c;
  }
  std::atomic<std::uint64_t> next{0};
  std::vector<Counts> partial(threads);
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (auto u = next.fetch_add(1); u < units; u = next.fetch_add(1)) {
          fn(u, partial[w]);
        }
      });
    }
  }
  Counts total;
  for (const auto& c : partial) total += c;
  return total;
}

void CheckProfile(const AssociationProfile& profile) {
  if (profile.x_size == 0 || profile.size() != 2 * profile.x_size) {
    throw Error(ErrorCode::kSizeMismatch,
                "permutation test needs |X| == |Y| >= 1 (got " +
                    std::to_string(profile.x_size) + " and " +
                    std::to_string(profile.size() - profile.x_size) + ")");
  }
}

PValueResult Finish(PValueResult r, const Counts& c) {
  r.greater_count = c.greater;
  r.tie_count = c.tie;
  r.less_count = c.less;
  r.p = static_cast<double>(r.numerator()) /
        static_cast<double>(r.denominator);
  return r;
}

}  // namespace

std::optional<TiePolicy> ParseTiePolicy(std::string_view name) {
  if (name == "strict") return TiePolicy::kStrict;
  if (name == "inclusive") return TiePolicy::kInclusive;
  return std::nullopt;
}

const char* TiePolicyName(TiePolicy policy) noexcept {
  return policy == TiePolicy::kStrict ? "strict" : "inclusive";
}

const char* PValueMethodName(PValueMethod method) noexcept {
  return method == PValueMethod::kExact ? "exact" : "monte-carlo";
}

PermutationPlan Plan(unsigned n, std::uint64_t exact_limit) {
  if (n == 0) {
    throw Error(ErrorCode::kInvalidArgument, "plan: n must be >= 1");
  }
  PermutationPlan plan;
  plan.n = n;
  plan.exact_limit = exact_limit;
  plan.total_partitions = Binomial(2ull * n, n);
  plan.exact = plan.total_partitions && *plan.total_partitions <= exact_limit;
  return plan;
}

double TieTolerance(const AssociationProfile& profile) {
  double max_abs = 0.0;
  for (double s : profile.s_values) max_abs = std::max(max_abs, std::abs(s));
  return 1e-12 * max_abs * static_cast<double>(profile.size());
}

PValueResult ExactPValue(const AssociationProfile& profile, TiePolicy policy,
                         std::uint64_t exact_limit, unsigned threads) {
  CheckProfile(profile);
  const auto n = static_cast<unsigned>(profile.x_size);
  const PermutationPlan plan = Plan(n, exact_limit);
  if (!plan.exact) {
    throw Error(ErrorCode::kLimitExceeded,
                "exact enumeration of C(" + std::to_string(2 * n) + ", " +
                    std::to_string(n) + ") partitions exceeds the limit of " +
                    std::to_string(exact_limit) + "; use Monte Carlo");
  }
  const std::uint64_t total = *plan.total_partitions;

  PValueResult r;
  r.method = PValueMethod::kExact;
  r.tie_policy = policy;
  r.denominator = total;
  r.observed = StatisticFromProfile(profile);
  r.tie_tolerance = TieTolerance(profile);
  const Classifier classify{r.observed, profile.total, r.tie_tolerance};
  const auto& s = profile.s_values;
  const unsigned universe = 2 * n;

  const std::uint64_t blocks = (total + kBlockSize - 1) / kBlockSize;
  const Counts counts =
      ParallelCount(blocks, threads, [&](std::uint64_t block, Counts& c) {
        const std::uint64_t first = block * kBlockSize;
        const std::uint64_t last = std::min(total, first + kBlockSize);
        auto door = RevolvingDoor::AtRank(universe, n, first);
        double chosen = 0.0;
        for (unsigned idx : door.current()) chosen += s[idx];
        classify(chosen, c);
        RevolvingDoor::Swap swap{};
        for (std::uint64_t rank = first + 1; rank < last; ++rank) {
          door.Next(swap);
          chosen += s[swap.in] - s[swap.out];
          classify(chosen, c);
        }
      });
  return Finish(r, counts);
}

PValueResult MonteCarloPValue(const AssociationProfile& profile,
                              std::uint64_t samples, std::uint64_t seed,
                              TiePolicy policy, unsigned threads) {
  CheckProfile(profile);
  if (samples < kMinMonteCarloSamples) {
    throw Error(ErrorCode::kInvalidArgument,
                "Monte Carlo needs at least " +
                    std::to_string(kMinMonteCarloSamples) + " samples (got " +
                    std::to_string(samples) + ")");
  }

  PValueResult r;
  r.method = PValueMethod::kMonteCarlo;
  r.tie_policy = policy;
  r.denominator = samples;
  r.seed = seed;
  r.observed = StatisticFromProfile(profile);
  r.tie_tolerance = TieTolerance(profile);
  const Classifier classify{r.observed, profile.total, r.tie_tolerance};
  const auto& s = profile.s_values;
  const std::size_t universe = profile.size();
  const std::size_t n = profile.x_size;

  const std::uint64_t blocks = (samples + kBlockSize - 1) / kBlockSize;
  const Counts counts =
      ParallelCount(blocks, threads, [&](std::uint64_t block, Counts& c) {
        std::vector<std::uint32_t> order(universe);
        const std::uint64_t first = block * kBlockSize;
        const std::uint64_t last = std::min(samples, first + kBlockSize);
        for (std::uint64_t draw = first; draw < last; ++draw) {
          CounterStream rng(seed, draw);
          std::iota(order.begin(), order.end(), 0u);
          double chosen = 0.0;
          // Partial Fisher-Yates: the first n slots are a uniform n-subset.
          for (std::size_t j = 0; j < n; ++j) {
            const auto k = j + rng.UniformBelow(universe - j);
            std::swap(order[j], order[k]);
            chosen += s[order[j]];
          }
          classify(chosen, c);
        }
      });

  r = Finish(r, counts);
  r.ci_halfwidth =
      1.96 * std::sqrt(r.p * (1.0 - r.p) / static_cast<double>(samples));
  return r;
}

PValueResult PermutationPValue(const AssociationProfile& profile,
                               const PermutationOptions& options) {
  CheckProfile(profile);
  const auto plan =
      Plan(static_cast<unsigned>(profile.x_size), options.exact_limit);
  if (plan.exact) {
    return ExactPValue(profile, options.tie_policy, options.exact_limit,
                       options.threads);
  }
  return MonteCarloPValue(profile, options.mc_samples, options.seed,
                          options.tie_policy, options.threads);
}

}  // namespace ieat
