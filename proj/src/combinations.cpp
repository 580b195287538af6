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

#include "ieat/combinations.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "ieat/error.hpp"

namespace ieat {
namespace {

std::uint64_t BinomialOrThrow(std::uint64_t n, std::uint64_t k) {
  auto c = Binomial(n, k);
  if (!c) throw Error(ErrorCode::kLimitExceeded, "binomial overflows 64 bits");
  return *c;
}

}  // namespace

std::optional<std::uint64_t> Binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // r * (n - k + i) / i is exact at every step; divide by the gcd first to
    // delay overflow.
    const std::uint64_t num = n - k + i;
    const std::uint64_t g = std::gcd(r, i);
    const std::uint64_t r_red = r / g;
    const std::uint64_t i_red = i / g;
    const std::uint64_t num_red = num / i_red;  // i_red | num here
    std::uint64_t next;
    if (__builtin_mul_overflow(r_red, num_red, &next)) return std::nullopt;
    r = next;
  }
  return r;
}

RevolvingDoor::RevolvingDoor(unsigned n, unsigned t)
    : n_(n), t_(t), c_(t + 2) {
  if (t == 0 || t > n) {
    throw Error(ErrorCode::kInvalidArgument,
                "revolving door needs 1 <= t <= n");
  }
  for (unsigned j = 1; j <= t; ++j) c_[j] = j - 1;
  c_[t + 1] = n;
}

RevolvingDoor RevolvingDoor::AtRank(unsigned n, unsigned t,
                                    std::uint64_t rank) {
  RevolvingDoor rd(n, t);
  const auto subset = RevolvingDoorUnrank(n, t, rank);
  std::copy(subset.begin(), subset.end(), rd.c_.begin() + 1);
  return rd;
}

bool RevolvingDoor::Next(Swap& swap) {
  auto& c = c_;
  const unsigned t = t_;
  if (t % 2 == 1) {
    if (c[1] + 1 < c[2]) {
      swap = {c[1], c[1] + 1};
      ++c[1];
      return true;
    }
  } else if (c[1] > 0) {
    swap = {c[1], c[1] - 1};
    --c[1];
    return true;
  }

  unsigned j = 2;
  bool decrease = t % 2 == 1;
  while (j <= t) {
    if (decrease) {
      // Here c_j == c_{j-1} + 1.
      if (c[j] >= j) {
        swap = {c[j], j - 2};
        c[j] = c[j - 1];
        c[j - 1] = j - 2;
        return true;
      }
    } else {
      // Here c_{j-1} == j - 2.
      if (c[j] + 1 < c[j + 1]) {
        swap = {j - 2, c[j] + 1};
        c[j - 1] = c[j];
        ++c[j];
        return true;
      }
    }
    // Knuth's R4 falls through to R5 at j + 1; R5 continues with R4.
    ++j;
    decrease = !decrease;
  }
  return false;
}

std::vector<unsigned> RevolvingDoorUnrank(unsigned n, unsigned t,
                                          std::uint64_t rank) {
  const std::uint64_t total = BinomialOrThrow(n, t);
  if (rank >= total) {
    throw Error(ErrorCode::kInvalidArgument,
                "rank " + std::to_string(rank) + " out of range");
  }
  std::vector<unsigned> out;
  out.reserve(t);
  while (t > 0) {
    if (t == n) {
      for (unsigned i = n; i-- > 0;) out.push_back(i);
      break;
    }
    const std::uint64_t without_last = BinomialOrThrow(n - 1, t);
    if (rank >= without_last) {
      rank = BinomialOrThrow(n, t) - 1 - rank;
      out.push_back(n - 1);
      --t;
    }
    --n;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::uint64_t RevolvingDoorRank(unsigned n, std::span<const unsigned> subset) {
  // Unwinds the unrank recursion from the largest element down:
  //   rank(n, t, S) = C(n-1, t) + C(n-1, t-1) - 1 - rank(n-1, t-1, S - {n-1})
  //                   if n-1 in S, else rank(n-1, t, S).
  // The result is tracked as rank = base + sign * (rank of the remainder);
  // intermediate values may wrap, the final one does not.
  auto t = static_cast<unsigned>(subset.size());
  std::size_t idx = subset.size();
  std::uint64_t base = 0;
  bool negated = false;
  while (t > 0 && t < n) {
    if (subset[idx - 1] == n - 1) {
      const std::uint64_t off =
          BinomialOrThrow(n - 1, t) + BinomialOrThrow(n - 1, t - 1) - 1;
      base = negated ? base - off : base + off;
      negated = !negated;
      --idx;
      --t;
    }
    --n;
  }
  return base;
}

}  // namespace ieat
