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

#include <algorithm>
#include <cmath>
#include <string>

#include "ieat/error.hpp"

namespace ieat {
namespace {

double Sum(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

void CheckDims(const CategorySet& s, std::size_t dim) {
  if (s.dimension() != dim) {
    throw Error(ErrorCode::kSizeMismatch,
                "category '" + s.name() + "' has dimension " +
                    std::to_string(s.dimension()) + ", expected " +
                    std::to_string(dim));
  }
}

}  // namespace

double Cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw Error(ErrorCode::kSizeMismatch, "cosine: dimension mismatch");
  }
  double dot = 0.0, uu = 0.0, vv = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    dot += u[k] * v[k];
    uu += u[k] * u[k];
    vv += v[k] * v[k];
  }
  if (!(uu > 0.0) || !(vv > 0.0)) {
    throw Error(ErrorCode::kDegenerate, "cosine: zero-norm vector");
  }
  return std::clamp(dot / (std::sqrt(uu) * std::sqrt(vv)), -1.0, 1.0);
}

double DifferentialAssociation(std::span<const double> w, const CategorySet& a,
                               const CategorySet& b) {
  if (a.size() == 0 || b.size() == 0) {
    throw Error(ErrorCode::kInvalidArgument, "empty attribute set");
  }
  double sa = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sa += Cosine(w, a[i]);
  double sb = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) sb += Cosine(w, b[i]);
  return sa / static_cast<double>(a.size()) -
         sb / static_cast<double>(b.size());
}

AssociationProfile AssociationProfile::FromValues(std::vector<double> s_values,
                                                  std::size_t x_size) {
  if (x_size == 0 || s_values.size() != 2 * x_size) {
    throw Error(ErrorCode::kSizeMismatch,
                "target sets must be nonempty and of equal size");
  }
  AssociationProfile p;
  p.x_size = x_size;
  p.s_values = std::move(s_values);
  p.total = Sum(p.s_values);
  return p;
}

double StatisticFromProfile(const AssociationProfile& profile) {
  return Sum(profile.x_values()) - Sum(profile.y_values());
}

TestStatistic ComputeTestStatistic(const CategorySet& x, const CategorySet& y,
                                   const CategorySet& a, const CategorySet& b) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kSizeMismatch,
                "target sets differ in size (|X| = " + std::to_string(x.size()) +
                    ", |Y| = " + std::to_string(y.size()) +
                    "); the permutation test needs equal-size partitions");
  }
  const std::size_t dim = x.dimension();
  CheckDims(y, dim);
  CheckDims(a, dim);
  CheckDims(b, dim);

  std::vector<double> s;
  s.reserve(x.size() + y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    s.push_back(DifferentialAssociation(x[i], a, b));
  }
  for (std::size_t i = 0; i < y.size(); ++i) {
    s.push_back(DifferentialAssociation(y[i], a, b));
  }
  TestStatistic out;
  out.profile = AssociationProfile::FromValues(std::move(s), x.size());
  out.value = StatisticFromProfile(out.profile);
  return out;
}

double EffectSize(const AssociationProfile& profile) {
  const std::size_t n = profile.size();
  if (n < 2) {
    throw Error(ErrorCode::kDegenerate, "effect size needs at least 2 values");
  }
  const auto [lo, hi] =
      std::minmax_element(profile.s_values.begin(), profile.s_values.end());
  if (*lo == *hi) {
    throw Error(ErrorCode::kDegenerate,
                "all association values are identical; effect size undefined");
  }

  const auto xs = profile.x_values();
  const auto ys = profile.y_values();
  const double mean_x = Sum(xs) / static_cast<double>(xs.size());
  const double mean_y = Sum(ys) / static_cast<double>(ys.size());

  // Squared deviations are summed in sorted order, which makes the result
  // bit-identical under X <-> Y and A <-> B swaps.
  const double mean = (Sum(xs) + Sum(ys)) / static_cast<double>(n);
  std::vector<double> sq;
  sq.reserve(n);
  for (double v : profile.s_values) sq.push_back((v - mean) * (v - mean));
  std::sort(sq.begin(), sq.end());
  const double stddev = std::sqrt(Sum(sq) / static_cast<double>(n - 1));
  if (!(stddev > 0.0)) {
    throw Error(ErrorCode::kDegenerate, "zero standard deviation");
  }
  return (mean_x - mean_y) / stddev;
}

}  // namespace ieat
