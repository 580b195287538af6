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

#include <cmath>
#include <map>

namespace ieat {
namespace {

constexpr const char* kRace = "Valence (BW)";
constexpr const char* kGender = "Valence (FM)";
constexpr const char* kWhiteFemaleBlackMale = "Valence (WFBM)";
constexpr const char* kWhiteMaleBlackFemale = "Valence (WMBF)";
constexpr const char* kMaleMale = "Valence (WMBM)";
constexpr const char* kFemaleFemale = "Valence (WFBF)";
constexpr const char* kWhiteWhite = "Valence (WMWF)";
constexpr const char* kBlackBlack = "Valence (BFBM)";

using Lookup = std::map<std::string, CitedResult, std::less<>>;

HypothesisEntry Intersectionality(const Lookup& r) {
  HypothesisEntry e;
  e.hypothesis = "intersectionality";
  e.rule =
      "some intersectional test has |d| greater than both single-axis tests "
      "(Valence (BW), Valence (FM)), all three with p < 0.05";
  const auto& race = r.at(kRace);
  const auto& gender = r.at(kGender);

  std::vector<const CitedResult*> evaluable;
  for (const char* name : {kWhiteFemaleBlackMale, kWhiteMaleBlackFemale}) {
    const auto& t = r.at(name);
    if (t.significant && race.significant && gender.significant) {
      evaluable.push_back(&t);
    }
  }
  if (evaluable.empty()) {
    e.verdict = Verdict::kInsufficientSignificance;
    e.cited = {r.at(kWhiteFemaleBlackMale), r.at(kWhiteMaleBlackFemale), race,
               gender};
    e.detail = "no intersectional test has itself and both constituents "
               "significant";
    return e;
  }
  const double bound = std::max(std::abs(race.d), std::abs(gender.d));
  for (const auto* t : evaluable) {
    if (std::abs(t->d) > bound) {
      e.verdict = Verdict::kConsistent;
      e.cited = {*t, race, gender};
      e.detail = t->name + " exceeds both constituents";
      return e;
    }
  }
  e.verdict = Verdict::kInconsistent;
  for (const auto* t : evaluable) e.cited.push_back(*t);
  e.cited.push_back(race);
  e.cited.push_back(gender);
  e.detail = "no significant intersectional test exceeds its constituents";
  return e;
}

HypothesisEntry Race(const Lookup& r) {
  HypothesisEntry e;
  e.hypothesis = "race";
  e.rule =
      "Valence (WMBM) significant and Valence (WFBF) not, or both significant "
      "with |d_WMBM| > |d_WFBF|";
  const auto& mm = r.at(kMaleMale);
  const auto& ff = r.at(kFemaleFemale);
  e.cited = {mm, ff};
  if (mm.significant && !ff.significant) {
    e.verdict = Verdict::kConsistent;
    e.detail = "male-male race bias significant, female-female not";
  } else if (mm.significant && ff.significant) {
    const bool larger = std::abs(mm.d) > std::abs(ff.d);
    e.verdict = larger ? Verdict::kConsistent : Verdict::kInconsistent;
    e.detail = larger ? "male-male race bias larger than female-female"
                      : "female-female race bias at least as large";
  } else if (ff.significant) {
    e.verdict = Verdict::kInconsistent;
    e.detail = "female-female race bias significant, male-male not";
  } else {
    e.verdict = Verdict::kInsufficientSignificance;
    e.detail = "neither race comparison is significant";
  }
  return e;
}

HypothesisEntry Gender(const Lookup& r) {
  HypothesisEntry e;
  e.hypothesis = "gender";
  e.rule =
      "Valence (WMWF) is the largest significant same-race gender test "
      "(vs. Valence (BFBM))";
  const auto& ww = r.at(kWhiteWhite);
  const auto& bb = r.at(kBlackBlack);
  e.cited = {ww, bb};
  if (ww.significant) {
    const bool largest = !bb.significant || std::abs(ww.d) >= std::abs(bb.d);
    e.verdict = largest ? Verdict::kConsistent : Verdict::kInconsistent;
    e.detail = largest ? "White-White gender bias is the largest significant"
                       : "Black-Black gender bias is larger";
  } else if (bb.significant) {
    e.verdict = Verdict::kInconsistent;
    e.detail = "only the Black-Black gender bias is significant";
  } else {
    e.verdict = Verdict::kInsufficientSignificance;
    e.detail = "neither same-race gender comparison is significant";
  }
  return e;
}

}  // namespace

const char* VerdictName(Verdict v) noexcept {
  switch (v) {
    case Verdict::kConsistent:
      return "consistent";
    case Verdict::kInconsistent:
      return "inconsistent";
    case Verdict::kInsufficientSignificance:
      return "insufficient-significance";
  }
  return "insufficient-significance";
}

HypothesisReport EvaluateHypotheses(std::span<const TestResult> results) {
  Lookup lookup;
  for (const auto& t : results) {
    lookup[t.name] = CitedResult{t.name, t.d, t.p.p,
                                 t.p.p < kHypothesisSignificance};
  }
  std::string missing;
  for (const char* name :
       {kRace, kGender, kWhiteFemaleBlackMale, kWhiteMaleBlackFemale,
        kMaleMale, kFemaleFemale, kWhiteWhite, kBlackBlack}) {
    if (!lookup.contains(name)) {
      missing += missing.empty() ? "" : ", ";
      missing += name;
    }
  }
  if (!missing.empty()) {
    throw Error(ErrorCode::kNotFound,
                "hypothesis report: missing required tests: " + missing);
  }
  HypothesisReport report;
  report.entries = {Intersectionality(lookup), Race(lookup), Gender(lookup)};
  return report;
}

}  // namespace ieat
