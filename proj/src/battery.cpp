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

#include "ieat/battery.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "ieat/association.hpp"
#include "json.hpp"

namespace ieat {
namespace {

using json = nlohmann::json;

std::string RequireString(const json& obj, const char* key,
                          const std::string& ctx) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string() || it->get<std::string>().empty()) {
    throw Error(ErrorCode::kValidation,
                ctx + ": '" + key + "' must be a non-empty string");
  }
  return it->get<std::string>();
}

std::string OptionalString(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return {};
  if (!it->is_string()) {
    throw Error(ErrorCode::kValidation,
                std::string("'") + key + "' must be a string");
  }
  return it->get<std::string>();
}

}  // namespace

Magnitude ClassifyMagnitude(double d) noexcept {
  const double a = std::abs(d);
  if (a >= 0.8) return Magnitude::kLarge;
  if (a >= 0.5) return Magnitude::kMedium;
  if (a >= 0.2) return Magnitude::kSmall;
  return Magnitude::kNone;
}

const char* MagnitudeName(Magnitude m) noexcept {
  switch (m) {
    case Magnitude::kNone:
      return "none";
    case Magnitude::kSmall:
      return "small";
    case Magnitude::kMedium:
      return "medium";
    case Magnitude::kLarge:
      return "large";
  }
  return "none";
}

void Classify(TestResult& result) noexcept {
  result.magnitude = ClassifyMagnitude(result.d);
  result.direction = (result.d > 0) - (result.d < 0);
}

Battery ParseBattery(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("battery: ") + e.what());
  }
  if (!doc.is_object()) {
    throw Error(ErrorCode::kValidation, "battery: top level must be an object");
  }
  Battery battery;
  battery.name = OptionalString(doc, "battery");
  battery.model = OptionalString(doc, "model");
  battery.description = OptionalString(doc, "description");
  auto tests = doc.find("tests");
  if (tests == doc.end() || !tests->is_array()) {
    throw Error(ErrorCode::kValidation, "battery: 'tests' must be a list");
  }

  std::set<std::string> names;
  for (std::size_t i = 0; i < tests->size(); ++i) {
    const auto& t = (*tests)[i];
    std::string ctx = "tests[" + std::to_string(i) + "]";
    if (!t.is_object()) {
      throw Error(ErrorCode::kValidation, ctx + ": must be an object");
    }
    TestSpec spec;
    spec.name = RequireString(t, "name", ctx);
    ctx += " ('" + spec.name + "')";
    spec.x_category = RequireString(t, "x_category", ctx);
    spec.y_category = RequireString(t, "y_category", ctx);
    spec.a_category = RequireString(t, "a_category", ctx);
    spec.b_category = RequireString(t, "b_category", ctx);
    spec.notes = OptionalString(t, "notes");
    if (const auto pooling = OptionalString(t, "pooling"); !pooling.empty()) {
      spec.pooling = ParsePooling(pooling);
      if (!spec.pooling) {
        throw Error(ErrorCode::kValidation,
                    ctx + ": unknown pooling '" + pooling + "'");
      }
    }
    if (const auto tie = OptionalString(t, "tie_policy"); !tie.empty()) {
      spec.tie_policy = ParseTiePolicy(tie);
      if (!spec.tie_policy) {
        throw Error(ErrorCode::kValidation,
                    ctx + ": unknown tie_policy '" + tie + "'");
      }
    }
    const std::set<std::string> cats{spec.x_category, spec.y_category,
                                     spec.a_category, spec.b_category};
    if (cats.size() != 4) {
      throw Error(ErrorCode::kValidation,
                  ctx + ": the four category references must be distinct");
    }
    if (!names.insert(spec.name).second) {
      throw Error(ErrorCode::kValidation, ctx + ": duplicate test name");
    }
    battery.tests.push_back(std::move(spec));
  }
  return battery;
}

Battery LoadBattery(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return ParseBattery(ss.str());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

TestResult EvaluateSets(const TestSpec& spec, const CategorySet& x,
                        const CategorySet& y, const CategorySet& a,
                        const CategorySet& b, const RunOptions& options) {
  const auto stat = ComputeTestStatistic(x, y, a, b);
  PermutationOptions perm = options.permutation;
  if (spec.tie_policy) perm.tie_policy = *spec.tie_policy;

  TestResult r;
  r.name = spec.name;
  r.x_category = spec.x_category;
  r.y_category = spec.y_category;
  r.a_category = spec.a_category;
  r.b_category = spec.b_category;
  r.statistic = stat.value;
  r.d = EffectSize(stat.profile);
  r.p = PermutationPValue(stat.profile, perm);
  r.n_t = x.size();
  r.n_a = a.size();
  r.n_b = b.size();
  r.pooling = spec.pooling.value_or(options.pooling);
  Classify(r);
  return r;
}

TestResult RunTest(const TestSpec& spec, const StimulusManifest& manifest,
                   const EmbeddingTable& table, const RunOptions& options) {
  try {
    const Pooling pooling = spec.pooling.value_or(options.pooling);
    const auto x = ResolveCategory(manifest, table, spec.x_category, pooling);
    const auto y = ResolveCategory(manifest, table, spec.y_category, pooling);
    const auto a = ResolveCategory(manifest, table, spec.a_category, pooling);
    const auto b = ResolveCategory(manifest, table, spec.b_category, pooling);
    return EvaluateSets(spec, x, y, a, b, options);
  } catch (const Error& e) {
    throw Error(e.code(), "test '" + spec.name + "': " + e.what());
  }
}

std::vector<TestOutcome> RunBattery(const std::vector<TestSpec>& battery,
                                    const StimulusManifest& manifest,
                                    const EmbeddingTable& table,
                                    const RunOptions& options) {
  if (battery.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "battery has no tests");
  }
  std::vector<TestOutcome> out;
  out.reserve(battery.size());
  std::size_t succeeded = 0;
  for (const auto& spec : battery) {
    TestOutcome o;
    o.spec = spec;
    try {
      o.result = RunTest(spec, manifest, table, options);
      ++succeeded;
    } catch (const Error& e) {
      o.error_code = e.code();
      o.error = e.what();
    }
    out.push_back(std::move(o));
  }
  if (succeeded == 0) {
    std::string msg = "no test in the battery could be run";
    if (!out.empty()) msg += "; first error: " + out.front().error;
    throw Error(out.front().error_code, msg);
  }
  return out;
}

}  // namespace ieat
