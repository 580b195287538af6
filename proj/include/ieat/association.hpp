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

// Cosine association statistics between two target sets X, Y and two
// attribute sets A, B.
//
//   s(w, A, B)     = mean_a cos(w, a) - mean_b cos(w, b)
//   s(X, Y, A, B)  = sum_x s(x, A, B) - sum_y s(y, A, B)
//   d              = (mean_x s - mean_y s) / stddev_{w in X u Y} s
//
// stddev uses the corrected (n - 1) divisor. All arithmetic is binary64 in a
// fixed summation order.

#ifndef IEAT_ASSOCIATION_HPP_
#define IEAT_ASSOCIATION_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "ieat/embedding_store.hpp"

namespace ieat {

// dot(u, v) / (|u| |v|), clamped to [-1, 1].
double Cosine(std::span<const double> u, std::span<const double> v);

double DifferentialAssociation(std::span<const double> w, const CategorySet& a,
                               const CategorySet& b);

// Per-element s-values for X followed by Y. The permutation engine works
// exclusively from this cache.
struct AssociationProfile {
  std::vector<double> s_values;  // |X| + |Y| entries, X first.
  std::size_t x_size = 0;
  double total = 0.0;  // sum of s_values in index order

  std::size_t size() const noexcept { return s_values.size(); }
  std::span<const double> x_values() const {
    return std::span(s_values).first(x_size);
  }
  std::span<const double> y_values() const {
    return std::span(s_values).subspan(x_size);
  }

  // Builds a profile from precomputed s-values; x_size must equal the
  // number of y values.
  static AssociationProfile FromValues(std::vector<double> s_values,
                                       std::size_t x_size);
};

struct TestStatistic {
  double value = 0.0;
  AssociationProfile profile;
};

// Requires |X| == |Y| >= 1, nonempty A and B, matching dimensions.
TestStatistic ComputeTestStatistic(const CategorySet& x, const CategorySet& y,
                                   const CategorySet& a, const CategorySet& b);

// sum over X minus sum over Y, in index order.
double StatisticFromProfile(const AssociationProfile& profile);

// Throws Error(kDegenerate) when every s-value is identical.
double EffectSize(const AssociationProfile& profile);

}  // namespace ieat

#endif  // IEAT_ASSOCIATION_HPP_
