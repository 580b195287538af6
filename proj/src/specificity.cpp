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

#include "ieat/specificity.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>

#include "ieat/association.hpp"
#include "ieat/counter_rng.hpp"

namespace ieat {
namespace {

CategorySet Slice(const CategorySet& pool, std::span<const std::uint32_t> idx,
                  std::string name) {
  std::vector<double> data;
  data.reserve(idx.size() * pool.dimension());
  for (auto i : idx) {
    const auto v = pool[i];
    data.insert(data.end(), v.begin(), v.end());
  }
  return CategorySet(std::move(name), pool.dimension(), std::move(data));
}

}  // namespace

SpecificityReport EvaluateSpecificity(const CategorySet& pool,
                                      const std::array<std::size_t, 4>& sizes,
                                      std::uint64_t trials,
                                      std::span<const double> alphas,
                                      std::uint64_t seed,
                                      const RunOptions& options) {
  if (trials < kMinSpecificityTrials) {
    throw Error(ErrorCode::kInvalidArgument,
                "specificity needs at least " +
                    std::to_string(kMinSpecificityTrials) + " trials (got " +
                    std::to_string(trials) + ")");
  }
  if (alphas.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no alpha thresholds given");
  }
  for (double a : alphas) {
    if (!(a > 0.0 && a < 1.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "alpha " + std::to_string(a) + " is outside (0, 1)");
    }
  }
  if (sizes[0] != sizes[1] || sizes[0] == 0 || sizes[2] == 0 ||
      sizes[3] == 0) {
    throw Error(ErrorCode::kSizeMismatch,
                "specificity needs |X| == |Y| >= 1 and nonempty A, B");
  }
  const std::size_t needed = sizes[0] + sizes[1] + sizes[2] + sizes[3];
  if (pool.size() < needed) {
    throw Error(ErrorCode::kInvalidArgument,
                "insufficient pool: " + std::to_string(pool.size()) +
                    " vectors for sets totalling " + std::to_string(needed));
  }

  const TestSpec spec{.name = "random-partition",
                      .x_category = "X'",
                      .y_category = "Y'",
                      .a_category = "A'",
                      .b_category = "B'"};

  // p-values per trial, filled by index.
  std::vector<double> p_values(trials);
  std::vector<char> exact(trials);

  auto run_trial = [&](std::uint64_t t) {
    std::vector<std::uint32_t> order(pool.size());
    std::iota(order.begin(), order.end(), 0u);
    CounterStream rng(seed, t);
    for (std::size_t i = order.size() - 1; i > 0; --i) {
      std::swap(order[i], order[rng.UniformBelow(i + 1)]);
    }
    std::span<const std::uint32_t> rest(order);
    const auto x = Slice(pool, rest.first(sizes[0]), spec.x_category);
    rest = rest.subspan(sizes[0]);
    const auto y = Slice(pool, rest.first(sizes[1]), spec.y_category);
    rest = rest.subspan(sizes[1]);
    const auto a = Slice(pool, rest.first(sizes[2]), spec.a_category);
    rest = rest.subspan(sizes[2]);
    const auto b = Slice(pool, rest.first(sizes[3]), spec.b_category);

    RunOptions trial_options = options;
    trial_options.permutation.threads = 1;
    trial_options.permutation.seed = MixSeed(seed, t);
    const auto stat = ComputeTestStatistic(x, y, a, b);
    const auto p = PermutationPValue(stat.profile, trial_options.permutation);
    p_values[t] = p.p;
    exact[t] = p.method == PValueMethod::kExact;
  };

  unsigned threads = options.permutation.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, trials));
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  {
    std::vector<std::jthread> pool_threads;
    for (unsigned w = 0; w < threads; ++w) {
      pool_threads.emplace_back([&] {
        for (auto t = next.fetch_add(1); t < trials; t = next.fetch_add(1)) {
          try {
            run_trial(t);
          } catch (...) {
            std::lock_guard lock(failure_mu);
            if (!failure) failure = std::current_exception();
            next = trials;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);

  SpecificityReport report;
  report.trials = trials;
  report.seed = seed;
  report.sizes = sizes;
  for (std::uint64_t t = 0; t < trials; ++t) {
    (exact[t] ? report.exact_trials : report.monte_carlo_trials) += 1;
  }
  for (double alpha : alphas) {
    SpecificityThreshold th;
    th.alpha = alpha;
    th.false_positives = static_cast<std::uint64_t>(
        std::count_if(p_values.begin(), p_values.end(),
                      [alpha](double p) { return p < alpha; }));
    th.false_positive_rate =
        static_cast<double>(th.false_positives) / static_cast<double>(trials);
    report.thresholds.push_back(th);
  }
  return report;
}

SpecificityReport EvaluateSpecificity(const TestSpec& spec,
                                      const StimulusManifest& manifest,
                                      const EmbeddingTable& table,
                                      std::uint64_t trials,
                                      std::span<const double> alphas,
                                      std::uint64_t seed,
                                      const RunOptions& options) {
  const Pooling pooling = spec.pooling.value_or(options.pooling);
  std::array<std::size_t, 4> sizes{};
  std::vector<double> data;
  std::size_t dim = 0;
  const std::array<const std::string*, 4> names{
      &spec.x_category, &spec.y_category, &spec.a_category, &spec.b_category};
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto set = ResolveCategory(manifest, table, *names[i], pooling);
    sizes[i] = set.size();
    dim = set.dimension();
    data.insert(data.end(), set.data().begin(), set.data().end());
  }
  RunOptions opts = options;
  if (spec.tie_policy) opts.permutation.tie_policy = *spec.tie_policy;
  return EvaluateSpecificity(CategorySet("pool", dim, std::move(data)), sizes,
                             trials, alphas, seed, opts);
}

}  // namespace ieat
