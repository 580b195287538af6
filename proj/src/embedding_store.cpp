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

#include "ieat/embedding_store.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <unordered_set>

#include "ieat/error.hpp"
#include "json.hpp"

namespace ieat {
namespace {

using json = nlohmann::json;

static_assert(std::endian::native == std::endian::little,
              "packed format I/O assumes a little-endian host");

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, "read failed: " + path.string());
  return std::move(ss).str();
}

std::string_view Trim(std::string_view s) {
  const auto* ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(Trim(line.substr(start)));
      break;
    }
    out.push_back(Trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

std::string RowLabel(std::string_view id, std::size_t line_no) {
  std::string label = "row '";
  label.append(id);
  label += "' (line " + std::to_string(line_no) + ")";
  return label;
}

void ValidateVector(const EmbeddingRecord& r, const std::string& where) {
  if (r.vector.empty()) {
    throw Error(ErrorCode::kValidation, where + ": vector has no components");
  }
  double sq = 0.0;
  for (std::size_t k = 0; k < r.vector.size(); ++k) {
    if (!std::isfinite(r.vector[k])) {
      throw Error(ErrorCode::kValidation,
                  where + ": non-finite component at dim_" + std::to_string(k));
    }
    sq += r.vector[k] * r.vector[k];
  }
  if (!(sq > 0.0)) {
    throw Error(ErrorCode::kValidation, where + ": zero-norm vector");
  }
}

template <typename T>
T ReadLe(std::span<const std::byte> bytes, std::size_t& pos,
         std::string_view what) {
  if (bytes.size() - pos < sizeof(T)) {
    throw Error(ErrorCode::kParse,
                "packed embeddings truncated while reading " +
                    std::string(what));
  }
  T v;
  std::memcpy(&v, bytes.data() + pos, sizeof(T));
  pos += sizeof(T);
  return v;
}

template <typename T>
void WriteLe(std::vector<std::byte>& out, T v) {
  const auto* p = reinterpret_cast<const std::byte*>(&v);
  out.insert(out.end(), p, p + sizeof(T));
}

const json& Require(const json& obj, const char* key, const std::string& ctx) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw Error(ErrorCode::kValidation,
                ctx + ": missing required field '" + key + "'");
  }
  return *it;
}

std::vector<std::string> StringList(const json& v, const std::string& ctx) {
  if (!v.is_array()) {
    throw Error(ErrorCode::kValidation, ctx + ": expected a list of strings");
  }
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (!e.is_string()) {
      throw Error(ErrorCode::kValidation, ctx + ": expected a list of strings");
    }
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace

EmbeddingTable::EmbeddingTable(std::vector<EmbeddingRecord> records)
    : records_(std::move(records)) {
  if (records_.empty()) {
    throw Error(ErrorCode::kValidation, "embedding table is empty");
  }
  dimension_ = records_.front().vector.size();
  index_.reserve(records_.size());
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const auto& r = records_[i];
    const std::string where = "record '" + r.id + "'";
    if (r.id.empty()) {
      throw Error(ErrorCode::kValidation,
                  "record " + std::to_string(i) + ": empty id");
    }
    if (r.vector.size() != dimension_) {
      throw Error(ErrorCode::kValidation,
                  where + ": dimension mismatch (expected " +
                      std::to_string(dimension_) + ", got " +
                      std::to_string(r.vector.size()) + ")");
    }
    ValidateVector(r, where);
    if (!index_.emplace(r.id, i).second) {
      throw Error(ErrorCode::kValidation, where + ": duplicate id");
    }
  }
}

const EmbeddingRecord* EmbeddingTable::Find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &records_[it->second];
}

EmbeddingTable ParseEmbeddingsCsv(std::string_view text) {
  std::vector<EmbeddingRecord> records;
  std::unordered_set<std::string_view> seen;
  std::size_t expected_dim = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool first_content_line = true;

  // Strip a UTF-8 BOM.
  if (text.starts_with("\xEF\xBB\xBF")) pos = 3;

  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = Trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty()) continue;

    const auto fields = SplitFields(line);
    if (first_content_line) {
      first_content_line = false;
      if (fields.front() == "id") {
        expected_dim = fields.size() - 1;
        for (std::size_t k = 1; k < fields.size(); ++k) {
          if (fields[k] != "dim_" + std::to_string(k - 1)) {
            throw Error(ErrorCode::kParse,
                        "header column " + std::to_string(k) +
                            " must be 'dim_" + std::to_string(k - 1) + "'");
          }
        }
        continue;
      }
    }

    const std::string_view id = fields.front();
    const std::string where = RowLabel(id, line_no);
    if (id.empty()) {
      throw Error(ErrorCode::kParse,
                  "line " + std::to_string(line_no) + ": empty id");
    }
    const std::size_t dim = fields.size() - 1;
    if (expected_dim == 0) expected_dim = dim;
    if (dim != expected_dim) {
      throw Error(ErrorCode::kValidation,
                  where + ": dimension mismatch (expected " +
                      std::to_string(expected_dim) + ", got " +
                      std::to_string(dim) + ")");
    }

    EmbeddingRecord rec;
    rec.id = std::string(id);
    rec.vector.resize(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      const auto f = fields[k + 1];
      // from_chars rejects a leading '+'.
      const auto num = f.starts_with('+') ? f.substr(1) : f;
      const auto [ptr, ec] =
          std::from_chars(num.data(), num.data() + num.size(), rec.vector[k]);
      if (ec == std::errc::result_out_of_range) {
        throw Error(ErrorCode::kValidation,
                    where + ": non-finite component at dim_" +
                        std::to_string(k));
      }
      if (ec != std::errc() || ptr != num.data() + num.size() || num.empty()) {
        throw Error(ErrorCode::kParse, where + ": malformed number '" +
                                           std::string(f) + "' at dim_" +
                                           std::to_string(k));
      }
    }
    ValidateVector(rec, where);
    if (!seen.insert(id).second) {
      throw Error(ErrorCode::kValidation, where + ": duplicate id");
    }
    records.push_back(std::move(rec));
  }
  if (records.empty()) {
    throw Error(ErrorCode::kValidation, "embedding file has no records");
  }
  return EmbeddingTable(std::move(records));
}

EmbeddingTable ParseEmbeddingsPacked(std::span<const std::byte> bytes) {
  std::size_t pos = 0;
  if (bytes.size() < 4 || std::memcmp(bytes.data(), "IEAT", 4) != 0) {
    throw Error(ErrorCode::kParse, "packed embeddings: bad magic");
  }
  pos = 4;
  const auto version = ReadLe<std::uint16_t>(bytes, pos, "version");
  if (version != kPackedFormatVersion) {
    throw Error(ErrorCode::kParse, "packed embeddings: unsupported version " +
                                       std::to_string(version));
  }
  const auto dim = ReadLe<std::uint32_t>(bytes, pos, "dimension");
  const auto count = ReadLe<std::uint64_t>(bytes, pos, "record count");
  if (dim == 0) throw Error(ErrorCode::kParse, "packed embeddings: D = 0");

  std::vector<EmbeddingRecord> records;
  std::unordered_set<std::string> seen;
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::string rec_ctx = "record " + std::to_string(i);
    const auto len = ReadLe<std::uint32_t>(bytes, pos, rec_ctx + " id length");
    if (bytes.size() - pos < len) {
      throw Error(ErrorCode::kParse,
                  "packed embeddings truncated in " + rec_ctx + " id");
    }
    EmbeddingRecord rec;
    rec.id.assign(reinterpret_cast<const char*>(bytes.data() + pos), len);
    pos += len;
    if (rec.id.empty()) {
      throw Error(ErrorCode::kParse, rec_ctx + ": empty id");
    }
    const std::string where = "record '" + rec.id + "'";
    rec.vector.resize(dim);
    for (std::uint32_t k = 0; k < dim; ++k) {
      rec.vector[k] = ReadLe<double>(bytes, pos, where);
    }
    ValidateVector(rec, where);
    if (!seen.insert(rec.id).second) {
      throw Error(ErrorCode::kValidation, where + ": duplicate id");
    }
    records.push_back(std::move(rec));
  }
  if (pos != bytes.size()) {
    throw Error(ErrorCode::kParse, "packed embeddings: trailing bytes");
  }
  if (records.empty()) {
    throw Error(ErrorCode::kValidation, "embedding file has no records");
  }
  return EmbeddingTable(std::move(records));
}

EmbeddingTable LoadEmbeddings(const std::filesystem::path& path,
                              EmbeddingFormat format) {
  const std::string raw = ReadFile(path);
  try {
    if (format == EmbeddingFormat::kCsv) return ParseEmbeddingsCsv(raw);
    return ParseEmbeddingsPacked(std::as_bytes(std::span(raw)));
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::string FormatEmbeddingsCsv(const EmbeddingTable& table) {
  std::string out = "id";
  for (std::size_t k = 0; k < table.dimension(); ++k) {
    out += ",dim_" + std::to_string(k);
  }
  out += '\n';
  char buf[64];
  for (const auto& r : table.records()) {
    out += r.id;
    for (double v : r.vector) {
      // Shortest representation that parses back to the identical double.
      const auto res = std::to_chars(buf, buf + sizeof(buf), v);
      out += ',';
      out.append(buf, res.ptr);
    }
    out += '\n';
  }
  return out;
}

std::vector<std::byte> FormatEmbeddingsPacked(const EmbeddingTable& table) {
  std::vector<std::byte> out;
  const auto* magic = reinterpret_cast<const std::byte*>("IEAT");
  out.insert(out.end(), magic, magic + 4);
  WriteLe<std::uint16_t>(out, kPackedFormatVersion);
  WriteLe<std::uint32_t>(out, static_cast<std::uint32_t>(table.dimension()));
  WriteLe<std::uint64_t>(out, table.size());
  for (const auto& r : table.records()) {
    WriteLe<std::uint32_t>(out, static_cast<std::uint32_t>(r.id.size()));
    const auto* id = reinterpret_cast<const std::byte*>(r.id.data());
    out.insert(out.end(), id, id + r.id.size());
    for (double v : r.vector) WriteLe<double>(out, v);
  }
  return out;
}

void WriteEmbeddings(const EmbeddingTable& table,
                     const std::filesystem::path& path,
                     EmbeddingFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  if (format == EmbeddingFormat::kCsv) {
    out << FormatEmbeddingsCsv(table);
  } else {
    const auto bytes = FormatEmbeddingsPacked(table);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
  }
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path.string());
}

std::optional<EmbeddingFormat> ParseEmbeddingFormat(std::string_view name) {
  if (name == "csv") return EmbeddingFormat::kCsv;
  if (name == "packed" || name == "packed-binary" || name == "bin") {
    return EmbeddingFormat::kPacked;
  }
  return std::nullopt;
}

std::size_t CategoryEntry::image_count() const {
  std::size_t n = 0;
  for (const auto& e : exemplars) n += e.image_ids.size();
  return n;
}

StimulusManifest::StimulusManifest(std::vector<CategoryEntry> categories)
    : categories_(std::move(categories)) {
  std::unordered_set<std::string> names;
  for (const auto& c : categories_) {
    const std::string ctx = "category '" + c.name + "'";
    if (c.name.empty()) {
      throw Error(ErrorCode::kValidation, "category with empty name");
    }
    if (!names.insert(c.name).second) {
      throw Error(ErrorCode::kValidation, ctx + ": duplicate category name");
    }
    if (c.exemplars.empty()) {
      throw Error(ErrorCode::kValidation, ctx + ": empty category");
    }
    for (std::size_t j = 0; j < c.exemplars.size(); ++j) {
      const auto& ex = c.exemplars[j];
      const std::string ex_ctx =
          ctx + ", exemplar '" + ex.verbal_stimulus + "'";
      if (ex.image_ids.empty() && !ex.unvisualizable) {
        throw Error(ErrorCode::kValidation,
                    ex_ctx + ": no image_ids and not flagged unvisualizable");
      }
      for (const auto& id : ex.image_ids) {
        if (id.empty()) {
          throw Error(ErrorCode::kValidation, ex_ctx + ": empty image id");
        }
      }
    }
    if (c.image_count() == 0) {
      throw Error(ErrorCode::kValidation,
                  ctx + ": empty category (no images in any exemplar)");
    }
  }
}

const CategoryEntry* StimulusManifest::Find(std::string_view name) const {
  for (const auto& c : categories_) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

StimulusManifest ParseManifest(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("manifest: ") + e.what());
  }
  if (!doc.is_object()) {
    throw Error(ErrorCode::kValidation, "manifest: top level must be an object");
  }
  const auto& cats = Require(doc, "categories", "manifest");
  if (!cats.is_array()) {
    throw Error(ErrorCode::kValidation, "manifest: 'categories' must be a list");
  }

  std::vector<CategoryEntry> categories;
  for (std::size_t i = 0; i < cats.size(); ++i) {
    const auto& c = cats[i];
    const std::string ctx = "categories[" + std::to_string(i) + "]";
    if (!c.is_object()) {
      throw Error(ErrorCode::kValidation, ctx + ": must be an object");
    }
    CategoryEntry entry;
    const auto& name = Require(c, "name", ctx);
    if (!name.is_string()) {
      throw Error(ErrorCode::kValidation, ctx + ".name: must be a string");
    }
    entry.name = name.get<std::string>();
    if (auto it = c.find("role"); it != c.end() && !it->is_null()) {
      const auto role = it->is_string() ? it->get<std::string>() : "";
      if (role == "target") {
        entry.role = CategoryRole::kTarget;
      } else if (role == "attribute") {
        entry.role = CategoryRole::kAttribute;
      } else if (role == "unspecified") {
        entry.role = CategoryRole::kUnspecified;
      } else {
        throw Error(ErrorCode::kValidation,
                    ctx + ".role: expected target|attribute|unspecified");
      }
    }
    const auto& exemplars = Require(c, "exemplars", ctx);
    if (!exemplars.is_array()) {
      throw Error(ErrorCode::kValidation, ctx + ".exemplars: must be a list");
    }
    for (std::size_t j = 0; j < exemplars.size(); ++j) {
      const auto& e = exemplars[j];
      const std::string ectx = ctx + ".exemplars[" + std::to_string(j) + "]";
      if (!e.is_object()) {
        throw Error(ErrorCode::kValidation, ectx + ": must be an object");
      }
      ExemplarEntry ex;
      const auto& stim = Require(e, "verbal_stimulus", ectx);
      if (!stim.is_string()) {
        throw Error(ErrorCode::kValidation,
                    ectx + ".verbal_stimulus: must be a string");
      }
      ex.verbal_stimulus = stim.get<std::string>();
      if (auto it = e.find("search_terms"); it != e.end()) {
        ex.search_terms = StringList(*it, ectx + ".search_terms");
      }
      ex.image_ids = StringList(Require(e, "image_ids", ectx),
                                ectx + ".image_ids");
      if (auto it = e.find("unvisualizable"); it != e.end()) {
        if (!it->is_boolean()) {
          throw Error(ErrorCode::kValidation,
                      ectx + ".unvisualizable: must be a boolean");
        }
        ex.unvisualizable = it->get<bool>();
      }
      entry.exemplars.push_back(std::move(ex));
    }
    categories.push_back(std::move(entry));
  }
  return StimulusManifest(std::move(categories));
}

StimulusManifest LoadManifest(const std::filesystem::path& path) {
  const std::string raw = ReadFile(path);
  try {
    return ParseManifest(raw);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::optional<Pooling> ParsePooling(std::string_view name) {
  if (name == "per-image") return Pooling::kPerImage;
  if (name == "per-exemplar-mean") return Pooling::kPerExemplarMean;
  return std::nullopt;
}

const char* PoolingName(Pooling pooling) noexcept {
  return pooling == Pooling::kPerImage ? "per-image" : "per-exemplar-mean";
}

CategorySet::CategorySet(std::string name, std::size_t dimension,
                         std::vector<double> data)
    : name_(std::move(name)), dimension_(dimension), data_(std::move(data)) {
  if (dimension_ == 0 || data_.empty() || data_.size() % dimension_ != 0) {
    throw Error(ErrorCode::kValidation,
                "category set '" + name_ + "' must hold at least one vector");
  }
}

CategorySet ResolveCategory(const StimulusManifest& manifest,
                            const EmbeddingTable& table, std::string_view name,
                            Pooling pooling) {
  const CategoryEntry* cat = manifest.Find(name);
  if (cat == nullptr) {
    throw Error(ErrorCode::kNotFound,
                "unknown category '" + std::string(name) + "'");
  }

  std::vector<std::string> missing;
  for (const auto& ex : cat->exemplars) {
    for (const auto& id : ex.image_ids) {
      if (table.Find(id) == nullptr) missing.push_back(id);
    }
  }
  if (!missing.empty()) {
    std::string msg = "category '" + cat->name + "': missing image ids:";
    for (const auto& id : missing) msg += " " + id;
    throw Error(ErrorCode::kNotFound, msg);
  }

  const std::size_t dim = table.dimension();
  std::vector<double> data;
  if (pooling == Pooling::kPerImage) {
    data.reserve(cat->image_count() * dim);
    for (const auto& ex : cat->exemplars) {
      for (const auto& id : ex.image_ids) {
        const auto& v = table.Find(id)->vector;
        data.insert(data.end(), v.begin(), v.end());
      }
    }
  } else {
    std::vector<double> mean(dim);
    for (const auto& ex : cat->exemplars) {
      if (ex.image_ids.empty()) continue;
      std::fill(mean.begin(), mean.end(), 0.0);
      for (const auto& id : ex.image_ids) {
        const auto& v = table.Find(id)->vector;
        for (std::size_t k = 0; k < dim; ++k) mean[k] += v[k];
      }
      double sq = 0.0;
      for (auto& m : mean) {
        m /= static_cast<double>(ex.image_ids.size());
        sq += m * m;
      }
      const double norm = std::sqrt(sq);
      // Relative to the mean image norm so that near-cancellation counts too.
      double ref = 0.0;
      for (const auto& id : ex.image_ids) {
        double s = 0.0;
        for (double x : table.Find(id)->vector) s += x * x;
        ref += std::sqrt(s);
      }
      ref /= static_cast<double>(ex.image_ids.size());
      if (!(norm > 1e-12 * ref)) {
        throw Error(ErrorCode::kDegenerate,
                    "category '" + cat->name + "', exemplar '" +
                        ex.verbal_stimulus +
                        "': pooled mean vector has zero norm");
      }
      for (double m : mean) data.push_back(m / norm);
    }
  }
  return CategorySet(cat->name, dim, std::move(data));
}

}  // namespace ieat
