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

#ifndef IEAT_VALENCE_HPP_
#define IEAT_VALENCE_HPP_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ieat {

struct ValenceNormRow {
  std::string word;
  double valence = 0.0;  // rated pleasantness, on the norms' own scale
  double imagery = 0.0;
};

// Text table with header `word,valence,imagery`. Words must be unique and
// scores finite.
std::vector<ValenceNormRow> ParseValenceNorms(std::string_view text);
std::vector<ValenceNormRow> LoadValenceNorms(const std::filesystem::path& path);

struct ValenceWords {
  std::vector<std::string> positive;  // most pleasant first
  std::vector<std::string> negative;  // least pleasant first
};

// Keeps rows with imagery >= imagery_min, then takes the k highest-valence
// words as positive and the k lowest of the remainder as negative. Equal
// valences are ordered by word. Throws if fewer than 2k rows pass the filter.
ValenceWords SelectValenceWords(std::span<const ValenceNormRow> norms,
                                std::size_t k, double imagery_min);

}  // namespace ieat

#endif  // IEAT_VALENCE_HPP_
