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

#include "ieat/association.hpp"

#include <cmath>
#include <random>

#include "doctest.h"
#include "ieat/error.hpp"
#include "oracle.hpp"

namespace {

using ieat::AssociationProfile;
using ieat::CategorySet;
using ieat::ErrorCode;

CategorySet Make(const oracle::Set& s, const char* name = "s") {
  return CategorySet(name, s.front().size(), oracle::Flatten(s));
}

ErrorCode CodeOf(auto&& fn) {
  try {
    fn();
  } catch (const ieat::Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

TEST_CASE("cosine examples") {
  const std::vector<double> e0{1, 0}, e1{0, 1}, a{1, 2}, b{2, 1};
  CHECK(ieat::Cosine(e0, e0) == 1.0);
  CHECK(ieat::Cosine(e0, e1) == 0.0);
  CHECK(ieat::Cosine(a, b) == doctest::Approx(0.8).epsilon(1e-15));
  // Clamped even when rounding would push past 1.
  const std::vector<double> u{0.1, 0.2, 0.3}, v{0.3, 0.6, 0.9};
  CHECK(ieat::Cosine(u, v) <= 1.0);
  CHECK(CodeOf([&] { ieat::Cosine(e0, u); }) == ErrorCode::kSizeMismatch);
  const std::vector<double> z{0, 0};
  CHECK(CodeOf([&] { ieat::Cosine(e0, z); }) == ErrorCode::kDegenerate);
}

TEST_CASE("differential association examples") {
  const auto a = Make({{1, 0}});
  const auto b = Make({{0, 1}});
  CHECK(ieat::DifferentialAssociation(std::vector<double>{1, 0}, a, b) == 1.0);
  CHECK(ieat::DifferentialAssociation(std::vector<double>{1, 1}, a, b) ==
        doctest::Approx(0.0));
  CHECK(ieat::DifferentialAssociation(std::vector<double>{0, 1}, a, b) == -1.0);
}

TEST_CASE("statistic and effect size on the separated case") {
  const auto x = Make({{1, 0}, {1, 0}});
  const auto y = Make({{0, 1}, {0, 1}});
  const auto a = Make({{1, 0}});
  const auto b = Make({{0, 1}});
  const auto t = ieat::ComputeTestStatistic(x, y, a, b);
  CHECK(t.value == 4.0);
  CHECK(t.profile.s_values == std::vector<double>{1, 1, -1, -1});
  CHECK(t.profile.total == 0.0);
  CHECK(std::abs(ieat::EffectSize(t.profile) - 1.7320508075688772) <= 1e-9);
  CHECK(ieat::ComputeTestStatistic(y, x, a, b).value == -4.0);
  CHECK(ieat::ComputeTestStatistic(x, x, a, b).value == 0.0);
}

TEST_CASE("X = Y gives d = 0") {
  std::mt19937_64 rng(11);
  const auto xs = oracle::RandomSet(rng, 5, 4);
  const auto a = Make(oracle::RandomSet(rng, 3, 4));
  const auto b = Make(oracle::RandomSet(rng, 3, 4));
  const auto t = ieat::ComputeTestStatistic(Make(xs), Make(xs), a, b);
  CHECK(t.value == 0.0);
  CHECK(ieat::EffectSize(t.profile) == 0.0);
}

TEST_CASE("degenerate and size errors") {
  const auto p = AssociationProfile::FromValues({0.5, 0.5, 0.5, 0.5}, 2);
  CHECK(CodeOf([&] { ieat::EffectSize(p); }) == ErrorCode::kDegenerate);
  const auto x = Make({{1, 0}, {0, 1}, {1, 1}});
  const auto y = Make({{1, 0}, {0, 1}});
  CHECK(CodeOf([&] { ieat::ComputeTestStatistic(x, y, y, y); }) ==
        ErrorCode::kSizeMismatch);
  const auto d3 = Make({{1, 0, 0}});
  CHECK(CodeOf([&] { ieat::ComputeTestStatistic(y, y, d3, d3); }) ==
        ErrorCode::kSizeMismatch);
}

struct Instance {
  oracle::Set x, y, a, b;
};

Instance RandomInstance(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nt(1, 8), na(1, 8), dim(2, 10);
  const int n = nt(rng), d = dim(rng);
  return {oracle::RandomSet(rng, n, d), oracle::RandomSet(rng, n, d),
          oracle::RandomSet(rng, na(rng), d), oracle::RandomSet(rng, na(rng), d)};
}

TEST_CASE("matches the oracle on random instances") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    auto in = RandomInstance(rng);
    if (in.x.size() < 2 && in.y.size() < 2) continue;
    const auto t = ieat::ComputeTestStatistic(Make(in.x), Make(in.y),
                                              Make(in.a), Make(in.b));
    CHECK(t.value == doctest::Approx(oracle::Statistic(in.x, in.y, in.a, in.b))
                         .epsilon(1e-12).scale(1.0));
    CHECK(ieat::StatisticFromProfile(t.profile) == t.value);
    CHECK(ieat::EffectSize(t.profile) ==
          doctest::Approx(oracle::EffectSize(in.x, in.y, in.a, in.b))
              .epsilon(1e-10));
    double sum = 0.0;
    for (double s : t.profile.s_values) {
      CHECK(std::abs(s) <= 2.0);
      sum += s;
    }
    CHECK(std::abs(t.profile.total - sum) <= 1e-12 * std::max(1.0, std::abs(sum)));
    CHECK(std::abs(t.value) <= 2.0 * (in.x.size() + in.y.size()));
  }
}

TEST_CASE("profile values are bit-identical to direct evaluation") {
  std::mt19937_64 rng(13);
  const auto in = RandomInstance(rng);
  const auto a = Make(in.a), b = Make(in.b);
  const auto t = ieat::ComputeTestStatistic(Make(in.x), Make(in.y), a, b);
  for (std::size_t i = 0; i < in.x.size(); ++i) {
    CHECK(t.profile.s_values[i] == ieat::DifferentialAssociation(in.x[i], a, b));
  }
  for (std::size_t i = 0; i < in.y.size(); ++i) {
    CHECK(t.profile.s_values[in.x.size() + i] ==
          ieat::DifferentialAssociation(in.y[i], a, b));
  }
}

TEST_CASE("rotation and scale invariance") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> scale(1e-3, 1e3);
  for (int trial = 0; trial < 100; ++trial) {
    auto in = RandomInstance(rng);
    if (in.x.size() < 2) continue;
    const auto base = ieat::ComputeTestStatistic(Make(in.x), Make(in.y),
                                                 Make(in.a), Make(in.b));
    const double d0 = ieat::EffectSize(base.profile);

    const auto q = oracle::RandomOrthogonal(rng, in.x.front().size());
    const auto rot = ieat::ComputeTestStatistic(
        Make(oracle::Apply(q, in.x)), Make(oracle::Apply(q, in.y)),
        Make(oracle::Apply(q, in.a)), Make(oracle::Apply(q, in.b)));
    CHECK(std::abs(ieat::EffectSize(rot.profile) - d0) <= 1e-9);
    CHECK(std::abs(rot.value - base.value) <= 1e-9);

    auto scaled = in;
    for (auto* set : {&scaled.x, &scaled.y, &scaled.a, &scaled.b}) {
      for (auto& v : *set) {
        const double c = scale(rng);
        for (auto& e : v) e *= c;
      }
    }
    const auto sc = ieat::ComputeTestStatistic(Make(scaled.x), Make(scaled.y),
                                               Make(scaled.a), Make(scaled.b));
    CHECK(std::abs(ieat::EffectSize(sc.profile) - d0) <= 1e-12);
  }
}

TEST_CASE("antisymmetry is exact") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 200; ++trial) {
    auto in = RandomInstance(rng);
    if (in.x.size() < 2) continue;
    const auto x = Make(in.x), y = Make(in.y), a = Make(in.a), b = Make(in.b);
    const auto t = ieat::ComputeTestStatistic(x, y, a, b);
    const auto swapped_xy = ieat::ComputeTestStatistic(y, x, a, b);
    const auto swapped_ab = ieat::ComputeTestStatistic(x, y, b, a);
    CHECK(swapped_xy.value == -t.value);
    const double d = ieat::EffectSize(t.profile);
    CHECK(ieat::EffectSize(swapped_xy.profile) == -d);
    CHECK(ieat::EffectSize(swapped_ab.profile) == -d);
  }
}

}  // namespace
