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

// Embedding tables, stimulus manifests, and resolution of named categories
// into vector sets.
//
// Two on-disk embedding formats are supported:
//
//   csv     UTF-8 text. Header `id,dim_0,...,dim_{D-1}`, then one record per
//           line: `<id>,<v0>,...,<v{D-1}>`.
//   packed  Binary, little-endian throughout:
//             char[4]  magic "IEAT"
//             u16      version (currently 1)
//             u32      D
//             u64      record count
//             per record: u32 id byte length, id bytes (UTF-8),
//                         D x IEEE-754 binary64
//
// Every loaded vector is finite and has nonzero norm; all rows share D.

#ifndef IEAT_EMBEDDING_STORE_HPP_
#define IEAT_EMBEDDING_STORE_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ieat {

enum class EmbeddingFormat { kCsv, kPacked };

inline constexpr std::uint16_t kPackedFormatVersion = 1;

struct EmbeddingRecord {
  std::string id;
  std::vector<double> vector;
};

// Immutable after construction. Iteration order is file order.
class EmbeddingTable {
 public:
  // Validates every record; throws Error(kValidation) naming the offending id.
  explicit EmbeddingTable(std::vector<EmbeddingRecord> records);

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return records_.size(); }
  const std::vector<EmbeddingRecord>& records() const noexcept {
    return records_;
  }

  // nullptr if the id is absent.
  const EmbeddingRecord* Find(std::string_view id) const;

 private:
  std::size_t dimension_ = 0;
  std::vector<EmbeddingRecord> records_;
  std::unordered_map<std::string, std::size_t> index_;
};

EmbeddingTable LoadEmbeddings(const std::filesystem::path& path,
                              EmbeddingFormat format);
EmbeddingTable ParseEmbeddingsCsv(std::string_view text);
EmbeddingTable ParseEmbeddingsPacked(std::span<const std::byte> bytes);

void WriteEmbeddings(const EmbeddingTable& table,
                     const std::filesystem::path& path,
                     EmbeddingFormat format);
std::string FormatEmbeddingsCsv(const EmbeddingTable& table);
std::vector<std::byte> FormatEmbeddingsPacked(const EmbeddingTable& table);

// "csv" | "packed" (also accepts "packed-binary", "bin").
std::optional<EmbeddingFormat> ParseEmbeddingFormat(std::string_view name);

enum class CategoryRole { kUnspecified, kTarget, kAttribute };

struct ExemplarEntry {
  std::string verbal_stimulus;
  std::vector<std::string> search_terms;
  std::vector<std::string> image_ids;
  bool unvisualizable = false;
};

struct CategoryEntry {
  std::string name;
  CategoryRole role = CategoryRole::kUnspecified;
  std::vector<ExemplarEntry> exemplars;

  std::size_t image_count() const;
};

// JSON document:
//   { "categories": [ { "name": ..., "role": "target"|"attribute"|...,
//                       "exemplars": [ { "verbal_stimulus": ...,
//                                        "search_terms": [...],
//                                        "image_ids": [...],
//                                        "unvisualizable": bool } ] } ] }
class StimulusManifest {
 public:
  explicit StimulusManifest(std::vector<CategoryEntry> categories);

  const std::vector<CategoryEntry>& categories() const noexcept {
    return categories_;
  }
  const CategoryEntry* Find(std::string_view name) const;

 private:
  std::vector<CategoryEntry> categories_;
};

StimulusManifest LoadManifest(const std::filesystem::path& path);
StimulusManifest ParseManifest(std::string_view json_text);

enum class Pooling { kPerImage, kPerExemplarMean };

std::optional<Pooling> ParsePooling(std::string_view name);
const char* PoolingName(Pooling pooling) noexcept;

// Row-major set of equal-dimension vectors.
class CategorySet {
 public:
  CategorySet(std::string name, std::size_t dimension,
              std::vector<double> data);

  const std::string& name() const noexcept { return name_; }
  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return data_.size() / dimension_; }
  std::span<const double> operator[](std::size_t i) const {
    return {data_.data() + i * dimension_, dimension_};
  }
  std::span<const double> data() const noexcept { return data_; }

 private:
  std::string name_;
  std::size_t dimension_;
  std::vector<double> data_;
};

CategorySet ResolveCategory(const StimulusManifest& manifest,
                            const EmbeddingTable& table,
                            std::string_view name, Pooling pooling);

}  // namespace ieat

#endif  // IEAT_EMBEDDING_STORE_HPP_
