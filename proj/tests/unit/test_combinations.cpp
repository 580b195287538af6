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
#include <set>

#include "doctest.h"
#include "oracle.hpp"

namespace {

using ieat::Binomial;
using ieat::RevolvingDoor;

TEST_CASE("binomial matches Pascal's triangle") {
  for (unsigned n = 0; n <= 60; ++n) {
    for (unsigned k = 0; k <= n; ++k) {
      CAPTURE(n);
      CAPTURE(k);
      REQUIRE(Binomial(n, k).has_value());
      CHECK(*Binomial(n, k) == oracle::Choose(n, k));
    }
  }
}

TEST_CASE("binomial edge values") {
  CHECK(*Binomial(4, 2) == 6);
  CHECK(*Binomial(2, 1) == 2);
  CHECK(*Binomial(40, 20) == 137'846'528'820ULL);
  CHECK(*Binomial(5, 7) == 0);
  CHECK(*Binomial(67, 33) == 14'226'520'737'620'288'370ULL);
  CHECK_FALSE(Binomial(68, 34).has_value());
  CHECK_FALSE(Binomial(200, 100).has_value());
}

TEST_CASE("stepping reproduces the recursive revolving-door order") {
  for (unsigned n = 1; n <= 11; ++n) {
    for (unsigned t = 1; t <= n; ++t) {
      CAPTURE(n);
      CAPTURE(t);
      const auto expected = oracle::RevolvingDoorList(n, t);
      RevolvingDoor door(n, t);
      std::vector<std::vector<unsigned>> seen;
      RevolvingDoor::Swap swap{};
      seen.emplace_back(door.current().begin(), door.current().end());
      while (door.Next(swap)) {
        const auto& prev = seen.back();
        std::vector<unsigned> cur(door.current().begin(),
                                  door.current().end());
        // Exactly one element leaves and one enters, as reported.
        std::vector<unsigned> gone, added;
        std::set_difference(prev.begin(), prev.end(), cur.begin(), cur.end(),
                            std::back_inserter(gone));
        std::set_difference(cur.begin(), cur.end(), prev.begin(), prev.end(),
                            std::back_inserter(added));
        REQUIRE(gone.size() == 1);
        REQUIRE(added.size() == 1);
        CHECK(gone[0] == swap.out);
        CHECK(added[0] == swap.in);
        CHECK(std::is_sorted(cur.begin(), cur.end()));
        seen.push_back(std::move(cur));
      }
      REQUIRE(seen.size() == expected.size());
      CHECK(seen == expected);
    }
  }
}

TEST_CASE("rank and unrank invert the enumeration order") {
  for (unsigned n = 1; n <= 10; ++n) {
    for (unsigned t = 1; t <= n; ++t) {
      const auto list = oracle::RevolvingDoorList(n, t);
      for (std::uint64_t r = 0; r < list.size(); ++r) {
        CAPTURE(n);
        CAPTURE(t);
        CAPTURE(r);
        CHECK(ieat::RevolvingDoorUnrank(n, t, r) == list[r]);
        CHECK(ieat::RevolvingDoorRank(n, list[r]) == r);
      }
    }
  }
}

TEST_CASE("stepping from an arbitrary rank continues the sequence") {
  const unsigned n = 12, t = 6;
  const auto list = oracle::RevolvingDoorList(n, t);
  for (std::uint64_t start : {0ULL, 1ULL, 17ULL, 461ULL, 923ULL}) {
    auto door = RevolvingDoor::AtRank(n, t, start);
    RevolvingDoor::Swap swap{};
    std::uint64_t r = start;
    do {
      std::vector<unsigned> cur(door.current().begin(), door.current().end());
      REQUIRE(cur == list[r]);
      ++r;
    } while (r < start + 40 && door.Next(swap));
  }
}

TEST_CASE("last subset reports the end") {
  RevolvingDoor door = RevolvingDoor::AtRank(6, 3, 19);
  RevolvingDoor::Swap swap{};
  CHECK_FALSE(door.Next(swap));
}

}  // namespace
