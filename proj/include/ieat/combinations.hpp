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

// Revolving-door (minimal change) enumeration of t-subsets of {0..n-1}.
//
// The order is the recursive one
//   G(n, t) = G(n-1, t), reverse(G(n-1, t-1)) + {n-1}
// so consecutive subsets differ by exactly one element leaving and one
// entering. Stepping follows Knuth's Algorithm R (TAOCP 7.2.1.3); ranking
// and unranking follow the recursion, which lets the sequence be split into
// contiguous rank ranges and walked independently.

#ifndef IEAT_COMBINATIONS_HPP_
#define IEAT_COMBINATIONS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace ieat {

// C(n, k), or nullopt if it does not fit in 64 bits.
std::optional<std::uint64_t> Binomial(std::uint64_t n, std::uint64_t k);

class RevolvingDoor {
 public:
  struct Swap {
    unsigned out;
    unsigned in;
  };

  // Positioned at rank 0, {0, ..., t-1}. Requires 1 <= t <= n.
  RevolvingDoor(unsigned n, unsigned t);

  // Positioned at the given rank; rank < C(n, t).
  static RevolvingDoor AtRank(unsigned n, unsigned t, std::uint64_t rank);

  // Ascending element list.
  std::span<const unsigned> current() const {
    return std::span(c_).subspan(1, t_);
  }

  // Advances one step and reports the exchanged pair. Returns false (state
  // unspecified) once the last subset has been passed.
  bool Next(Swap& swap);

 private:
  unsigned n_;
  unsigned t_;
  // 1-based: c_[1..t] are the elements, c_[t+1] = n is a sentinel.
  std::vector<unsigned> c_;
};

std::vector<unsigned> RevolvingDoorUnrank(unsigned n, unsigned t,
                                          std::uint64_t rank);
std::uint64_t RevolvingDoorRank(unsigned n, std::span<const unsigned> subset);

}  // namespace ieat

#endif  // IEAT_COMBINATIONS_HPP_
