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

#include "ieat/hypothesis.hpp"

#include <random>

#include "doctest.h"
#include "ieat/error.hpp"
#include "json.hpp"
#include "oracle.hpp"

namespace {

using ieat::TestResult;
using ieat::Verdict;

TestResult Row(const std::string& name, double d, double p) {
  TestResult r;
  r.name = name;
  r.d = d;
  r.p.p = p;
  ieat::Classify(r);
  return r;
}

const std::vector<std::string> kValenceNames{
    "Valence (BFBM)", "Valence (BW)",   "Valence (FM)",   "Valence (WFBF)",
    "Valence (WFBM)", "Valence (WMBF)", "Valence (WMBM)", "Valence (WMWF)"};

std::vector<TestResult> Published() {
  const auto doc = nlohmann::json::parse(oracle::ReadFile(
      oracle::SourcePath("data/fixtures/intersectional_published.json")));
  std::vector<TestResult> out;
  for (const auto& r : doc["results"]) {
    out.push_back(Row(r["name"], r["d"], r["p"]));
  }
  return out;
}

const ieat::HypothesisEntry& Entry(const ieat::HypothesisReport& r,
                                   const std::string& name) {
  for (const auto& e : r.entries) {
    if (e.hypothesis == name) return e;
  }
  FAIL("no entry " << name);
  return r.entries.front();
}

TEST_CASE("published intersectional rows give the narrative verdicts") {
  const auto doc = nlohmann::json::parse(oracle::ReadFile(
      oracle::SourcePath("data/fixtures/intersectional_published.json")));
  const auto report = ieat::EvaluateHypotheses(Published());
  REQUIRE(report.entries.size() == 3);
  for (const auto& [name, verdict] : doc["expected_verdicts"].items()) {
    CAPTURE(name);
    CHECK(std::string(ieat::VerdictName(Entry(report, name).verdict)) ==
          verdict.get<std::string>());
  }
  const auto& race = Entry(report, "race");
  REQUIRE(race.cited.size() >= 2);
  CHECK(race.cited[0].name == "Valence (WMBM)");
  CHECK(race.cited[0].d == 0.88);
}

TEST_CASE("all insignificant inputs give insufficient-significance") {
  std::vector<TestResult> rows;
  for (const auto& n : kValenceNames) rows.push_back(Row(n, 1.0, 0.5));
  for (const auto& e : ieat::EvaluateHypotheses(rows).entries) {
    CHECK(e.verdict == Verdict::kInsufficientSignificance);
  }
}

TEST_CASE("constructed emergent intersectional bias") {
  std::vector<TestResult> rows;
  for (const auto& n : kValenceNames) rows.push_back(Row(n, 0.3, 0.5));
  rows[1] = Row("Valence (BW)", 0.6, 0.001);
  rows[2] = Row("Valence (FM)", 0.5, 0.01);
  rows[4] = Row("Valence (WFBM)", 0.9, 0.001);
  const auto& e = Entry(ieat::EvaluateHypotheses(rows), "intersectionality");
  CHECK(e.verdict == Verdict::kConsistent);

  rows[4] = Row("Valence (WFBM)", 0.55, 0.001);
  CHECK(Entry(ieat::EvaluateHypotheses(rows), "intersectionality").verdict ==
        Verdict::kInconsistent);
}

TEST_CASE("missing required rows are reported") {
  std::vector<TestResult> rows;
  for (const auto& n : kValenceNames) {
    if (n != "Valence (WMBM)" && n != "Valence (FM)") rows.push_back(Row(n, 1, 0.5));
  }
  try {
    ieat::EvaluateHypotheses(rows);
    FAIL("expected an error");
  } catch (const ieat::Error& e) {
    CHECK(e.code() == ieat::ErrorCode::kNotFound);
    CHECK(std::string(e.what()).find("Valence (WMBM)") != std::string::npos);
    CHECK(std::string(e.what()).find("Valence (FM)") != std::string::npos);
  }
}

TEST_CASE("insignificant d values never change a verdict") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<TestResult> rows;
    for (const auto& n : kValenceNames) {
      rows.push_back(Row(n, d(rng), coin(rng) ? 0.001 : 0.3));
    }
    const auto base = ieat::EvaluateHypotheses(rows);
    for (auto& r : rows) {
      if (r.p.p >= ieat::kHypothesisSignificance) r.d = d(rng);
    }
    const auto again = ieat::EvaluateHypotheses(rows);
    for (std::size_t i = 0; i < base.entries.size(); ++i) {
      CHECK(base.entries[i].verdict == again.entries[i].verdict);
      CHECK(base.entries[i].cited.size() >= 2);
      if (base.entries[i].verdict != Verdict::kInsufficientSignificance) {
        bool any_significant = false;
        for (const auto& c : base.entries[i].cited) any_significant |= c.significant;
        CHECK(any_significant);
      }
    }
  }
}

}  // namespace
