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

#include "ieat/report.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

namespace ieat {
namespace {

using Row = std::vector<std::string>;

std::string Printf(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string MarkdownCell(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

std::string Render(const Row& header, const std::vector<Row>& rows,
                   RenderFormat format) {
  std::string out;
  switch (format) {
    case RenderFormat::kCsv: {
      auto emit = [&](const Row& r) {
        for (std::size_t i = 0; i < r.size(); ++i) {
          if (i) out += ',';
          out += CsvField(r[i]);
        }
        out += '\n';
      };
      emit(header);
      for (const auto& r : rows) emit(r);
      break;
    }
    case RenderFormat::kMarkdown: {
      auto emit = [&](const Row& r) {
        out += '|';
        for (const auto& c : r) out += ' ' + MarkdownCell(c) + " |";
        out += '\n';
      };
      emit(header);
      out += '|';
      for (std::size_t i = 0; i < header.size(); ++i) out += " --- |";
      out += '\n';
      for (const auto& r : rows) emit(r);
      break;
    }
    case RenderFormat::kTable: {
      std::vector<std::size_t> width(header.size());
      for (std::size_t i = 0; i < header.size(); ++i) {
        width[i] = header[i].size();
        for (const auto& r : rows) width[i] = std::max(width[i], r[i].size());
      }
      auto emit = [&](const Row& r) {
        std::string line;
        for (std::size_t i = 0; i < r.size(); ++i) {
          if (i) line += "  ";
          line += r[i];
          line.append(width[i] - r[i].size(), ' ');
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out += line + '\n';
      };
      emit(header);
      Row rule;
      for (auto w : width) rule.emplace_back(w, '-');
      emit(rule);
      for (const auto& r : rows) emit(r);
      break;
    }
  }
  return out;
}

}  // namespace

std::optional<RenderFormat> ParseRenderFormat(std::string_view name) {
  if (name == "table" || name == "plain-table") return RenderFormat::kTable;
  if (name == "csv") return RenderFormat::kCsv;
  if (name == "markdown" || name == "md") return RenderFormat::kMarkdown;
  return std::nullopt;
}

std::string FormatPValue(const PValueResult& p) {
  return Printf("%.6g", p.p) + " (" + std::to_string(p.numerator()) + "/" +
         std::to_string(p.denominator) + ")";
}

std::string RenderResults(std::span<const TestResult> results,
                          RenderFormat format) {
  const Row header{"name", "X",         "Y", "A",       "B", "n_t",
                   "n_a",  "d", "magnitude", "p", "p_method"};
  std::vector<Row> rows;
  rows.reserve(results.size());
  for (const auto& r : results) {
    std::string n_a = std::to_string(r.n_a);
    if (r.n_b != r.n_a) n_a += "/" + std::to_string(r.n_b);
    rows.push_back({r.name, r.x_category, r.y_category, r.a_category,
                    r.b_category, std::to_string(r.n_t), n_a,
                    Printf("%.4f", r.d), MagnitudeName(r.magnitude),
                    FormatPValue(r.p), PValueMethodName(r.p.method)});
  }
  return Render(header, rows, format);
}

std::string RenderSpecificity(const SpecificityReport& report,
                              RenderFormat format) {
  const Row header{"alpha", "false_positives", "trials",
                   "false_positive_rate"};
  std::vector<Row> rows;
  for (const auto& t : report.thresholds) {
    rows.push_back({Printf("%.6g", t.alpha), std::to_string(t.false_positives),
                    std::to_string(report.trials),
                    Printf("%.6g", t.false_positive_rate)});
  }
  std::string out;
  if (format != RenderFormat::kCsv) {
    out += "# specificity: trials=" + std::to_string(report.trials) +
           " seed=" + std::to_string(report.seed) + " sizes=" +
           std::to_string(report.sizes[0]) + "/" +
           std::to_string(report.sizes[1]) + "/" +
           std::to_string(report.sizes[2]) + "/" +
           std::to_string(report.sizes[3]) +
           " exact_trials=" + std::to_string(report.exact_trials) +
           " monte_carlo_trials=" + std::to_string(report.monte_carlo_trials) +
           "\n";
  }
  return out + Render(header, rows, format);
}

std::string RenderValenceWords(const ValenceWords& words, RenderFormat format) {
  const Row header{"rank", "positive", "negative"};
  std::vector<Row> rows;
  for (std::size_t i = 0; i < words.positive.size(); ++i) {
    rows.push_back({std::to_string(i + 1), words.positive[i],
                    words.negative[i]});
  }
  return Render(header, rows, format);
}

std::string RenderHypotheses(const HypothesisReport& report,
                             RenderFormat format) {
  const Row header{"hypothesis", "verdict", "cited", "detail"};
  std::vector<Row> rows;
  for (const auto& e : report.entries) {
    std::string cited;
    for (const auto& c : e.cited) {
      if (!cited.empty()) cited += "; ";
      cited += c.name + " d=" + Printf("%.2f", c.d) +
               (c.significant ? " sig" : " n.s.");
    }
    rows.push_back({e.hypothesis, VerdictName(e.verdict), cited, e.detail});
  }
  return Render(header, rows, format);
}

}  // namespace ieat
