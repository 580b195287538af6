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

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
//
// A CounterStream is addressed by (seed, stream); the output of stream s is
// independent of whichever other streams were drawn before it, so work can
// be split across threads without changing results.

#ifndef IEAT_COUNTER_RNG_HPP_
#define IEAT_COUNTER_RNG_HPP_

#include <array>
#include <cstdint>

namespace ieat {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter Philox4x32_10(PhiloxCounter counter, PhiloxKey key);

class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint64_t stream);

  std::uint32_t NextU32();
  std::uint64_t NextU64();

  // Uniform on [0, bound), bound > 0. Lemire's multiply-and-reject.
  std::uint64_t UniformBelow(std::uint64_t bound);

  // Uniform on [0, 1) with 53 random bits.
  double NextUnit();

  // Standard normal via Box-Muller (consumes two units per call).
  double NextGaussian();

 private:
  void Refill();

  PhiloxKey key_;
  PhiloxCounter counter_;
  PhiloxCounter block_{};
  unsigned used_ = 4;
};

// SplitMix64 finalizer; derives independent sub-seeds.
std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t salt);

}  // namespace ieat

#endif  // IEAT_COUNTER_RNG_HPP_
