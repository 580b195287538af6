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
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "ieat/error.hpp"

namespace ieat {
namespace {

std::string_view Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

double ParseScore(std::string_view field, const std::string& where) {
  double v = 0.0;
  const auto f = field.starts_with('+') ? field.substr(1) : field;
  const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
  if (ec != std::errc() || ptr != f.data() + f.size() || f.empty()) {
    throw Error(ErrorCode::kParse,
                where + ": invalid score '" + std::string(field) + "'");
  }
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::kValidation,
                where + ": non-finite score '" + std::string(field) + "'");
  }
  return v;
}

}  // namespace

std::vector<ValenceNormRow> ParseValenceNorms(std::string_view text) {
  std::vector<ValenceNormRow> rows;
  std::unordered_set<std::string> seen;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const auto line = Trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty()) continue;

    std::vector<std::string_view> f;
    for (std::size_t start = 0;;) {
      const auto c = line.find(',', start);
      f.push_back(Trim(line.substr(start, c - start)));
      if (c == std::string_view::npos) break;
      start = c + 1;
    }
    const std::string where = "norms line " + std::to_string(line_no);
    if (!header_seen) {
      header_seen = true;
      if (f.size() == 3 && f[0] == "word") {
        if (f[1] != "valence" || f[2] != "imagery") {
          throw Error(ErrorCode::kParse,
                      where + ": header must be word,valence,imagery");
        }
        continue;
      }
    }
    if (f.size() != 3 || f[0].empty()) {
      throw Error(ErrorCode::kParse, where + ": expected word,valence,imagery");
    }
    ValenceNormRow row{std::string(f[0]), ParseScore(f[1], where),
                       ParseScore(f[2], where)};
    if (!seen.insert(row.word).second) {
      throw Error(ErrorCode::kValidation,
                  where + ": duplicate word '" + row.word + "'");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw Error(ErrorCode::kValidation, "norms table has no rows");
  }
  return rows;
}

std::vector<ValenceNormRow> LoadValenceNorms(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return ParseValenceNorms(ss.str());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

ValenceWords SelectValenceWords(std::span<const ValenceNormRow> norms,
                                std::size_t k, double imagery_min) {
  if (norms.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "norms table is empty");
  }
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");

  std::vector<const ValenceNormRow*> pool;
  for (const auto& r : norms) {
    if (r.imagery >= imagery_min) pool.push_back(&r);
  }
  if (pool.size() < 2 * k) {
    throw Error(ErrorCode::kInvalidArgument,
                std::to_string(pool.size()) +
                    " words pass the imagery filter; need at least 2k = " +
                    std::to_string(2 * k) +
                    " for disjoint positive and negative lists");
  }

  std::sort(pool.begin(), pool.end(), [](const auto* a, const auto* b) {
    if (a->valence != b->valence) return a->valence > b->valence;
    return a->word < b->word;
  });
  ValenceWords out;
  for (std::size_t i = 0; i < k; ++i) out.positive.push_back(pool[i]->word);

  std::vector<const ValenceNormRow*> rest(pool.begin() + k, pool.end());
  std::sort(rest.begin(), rest.end(), [](const auto* a, const auto* b) {
    if (a->valence != b->valence) return a->valence < b->valence;
    return a->word < b->word;
  });
  for (std::size_t i = 0; i < k; ++i) out.negative.push_back(rest[i]->word);
  return out;
}

}  // namespace ieat
