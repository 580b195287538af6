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

#include "ieat/valence.hpp"

#include <algorithm>
#include <random>

#include "doctest.h"
#include "ieat/error.hpp"
#include "oracle.hpp"

namespace {

using ieat::ErrorCode;
using ieat::ValenceNormRow;

ErrorCode CodeOf(auto&& fn) {
  try {
    fn();
  } catch (const ieat::Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

TEST_CASE("toy table") {
  const auto rows = ieat::ParseValenceNorms(
      "word,valence,imagery\nmid,3.0,4\nhigh,6.5,2\nlow,1.2,7\n");
  REQUIRE(rows.size() == 3);
  const auto w = ieat::SelectValenceWords(rows, 1, 0.0);
  CHECK(w.positive == std::vector<std::string>{"high"});
  CHECK(w.negative == std::vector<std::string>{"low"});
}

TEST_CASE("imagery filter and ordering") {
  const std::vector<ValenceNormRow> rows{
      {"a", 6.0, 5.0}, {"b", 6.5, 1.0}, {"c", 5.0, 6.0}, {"d", 1.0, 6.0},
      {"e", 2.0, 5.5}, {"f", 1.0, 5.0}, {"g", 4.0, 5.0}};
  const auto w = ieat::SelectValenceWords(rows, 2, 5.0);
  CHECK(w.positive == std::vector<std::string>{"a", "c"});
  // d and f tie on valence; word order decides.
  CHECK(w.negative == std::vector<std::string>{"d", "f"});
}

TEST_CASE("pool too small for 2k") {
  std::vector<ValenceNormRow> rows;
  for (int i = 0; i < 6; ++i) rows.push_back({"w" + std::to_string(i), i * 1.0, 5.0});
  CHECK(CodeOf([&] { ieat::SelectValenceWords(rows, 5, 0.0); }) ==
        ErrorCode::kInvalidArgument);
  CHECK_NOTHROW(ieat::SelectValenceWords(rows, 3, 0.0));
  CHECK(CodeOf([&] { ieat::SelectValenceWords(rows, 0, 0.0); }) ==
        ErrorCode::kInvalidArgument);
  CHECK(CodeOf([&] { ieat::SelectValenceWords({}, 1, 0.0); }) ==
        ErrorCode::kInvalidArgument);
}

TEST_CASE("norms parsing errors") {
  CHECK(CodeOf([] { ieat::ParseValenceNorms(""); }) == ErrorCode::kValidation);
  CHECK(CodeOf([] { ieat::ParseValenceNorms("word,valence,imagery\n"); }) ==
        ErrorCode::kValidation);
  CHECK(CodeOf([] { ieat::ParseValenceNorms("word,valence,imagery\na,1,2\na,3,4\n"); }) ==
        ErrorCode::kValidation);
  CHECK(CodeOf([] { ieat::ParseValenceNorms("word,valence,imagery\na,nan,2\n"); }) ==
        ErrorCode::kValidation);
  CHECK(CodeOf([] { ieat::ParseValenceNorms("word,valence,imagery\na,x,2\n"); }) ==
        ErrorCode::kParse);
  CHECK(CodeOf([] { ieat::ParseValenceNorms("word,valence,imagery\na,1\n"); }) ==
        ErrorCode::kParse);
  CHECK(CodeOf([] { ieat::LoadValenceNorms("/nonexistent/norms.csv"); }) ==
        ErrorCode::kIo);
}

TEST_CASE("selection is invariant to row order") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> v(1.0, 7.0);
  std::uniform_int_distribution<int> coarse(1, 5);
  std::vector<ValenceNormRow> rows;
  for (int i = 0; i < 200; ++i) {
    // Coarse valences force many ties.
    rows.push_back({"w" + std::to_string(i), static_cast<double>(coarse(rng)), v(rng)});
  }
  const auto base = ieat::SelectValenceWords(rows, 11, 3.0);
  CHECK(base.positive.size() == 11);
  CHECK(base.negative.size() == 11);
  for (int trial = 0; trial < 20; ++trial) {
    std::shuffle(rows.begin(), rows.end(), rng);
    const auto w = ieat::SelectValenceWords(rows, 11, 3.0);
    CHECK(w.positive == base.positive);
    CHECK(w.negative == base.negative);
  }
  for (const auto& p : base.positive) {
    CHECK(std::find(base.negative.begin(), base.negative.end(), p) == base.negative.end());
  }
}

}  // namespace
