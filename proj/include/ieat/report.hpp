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

#ifndef IEAT_REPORT_HPP_
#define IEAT_REPORT_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "ieat/battery.hpp"
#include "ieat/hypothesis.hpp"
#include "ieat/specificity.hpp"
#include "ieat/valence.hpp"

namespace ieat {

enum class RenderFormat { kTable, kCsv, kMarkdown };

// "table" | "csv" | "markdown" (also "plain-table", "md").
std::optional<RenderFormat> ParseRenderFormat(std::string_view name);

// Columns: name, X, Y, A, B, n_t, n_a, d, magnitude, p, p_method.
// p is written as "<decimal, 6 significant digits> (<count>/<total>)".
std::string RenderResults(std::span<const TestResult> results,
                          RenderFormat format);

std::string FormatPValue(const PValueResult& p);

std::string RenderSpecificity(const SpecificityReport& report,
                              RenderFormat format);
std::string RenderValenceWords(const ValenceWords& words, RenderFormat format);
std::string RenderHypotheses(const HypothesisReport& report,
                             RenderFormat format);

}  // namespace ieat

#endif  // IEAT_REPORT_HPP_
