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

#include "ieat/ieat.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "ieat/battery.hpp"
#include "ieat/embedding_store.hpp"
#include "ieat/error.hpp"
#include "ieat/hypothesis.hpp"
#include "ieat/report.hpp"
#include "ieat/specificity.hpp"
#include "ieat/valence.hpp"

struct ieat_embeddings {
  ieat::EmbeddingTable table;
};

struct ieat_manifest {
  ieat::StimulusManifest manifest;
};

struct ieat_battery {
  ieat::Battery battery;
};

struct ieat_results {
  std::vector<ieat::TestOutcome> outcomes;
  std::vector<ieat::TestResult> succeeded;
};

struct ieat_specificity {
  ieat::SpecificityReport report;
};

struct ieat_valence_words {
  ieat::ValenceWords words;
};

namespace {

thread_local std::string g_last_error;

ieat_status ToStatus(ieat::ErrorCode code) {
  return static_cast<ieat_status>(static_cast<int>(code));
}

ieat_status Fail(ieat_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs fn, translating exceptions into a status plus g_last_error.
template <typename Fn>
ieat_status Guard(Fn&& fn) noexcept {
  try {
    fn();
    return IEAT_OK;
  } catch (const ieat::Error& e) {
    return Fail(ToStatus(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(IEAT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(IEAT_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(IEAT_ERR_INTERNAL, "unknown error");
  }
}

#define IEAT_REQUIRE(cond, what)                                        \
  do {                                                                  \
    if (!(cond)) return Fail(IEAT_ERR_INVALID_ARGUMENT, what);          \
  } while (0)

ieat::RunOptions ToRunOptions(const ieat_options* o) {
  ieat_options defaults;
  ieat_options_init(&defaults);
  if (o == nullptr) o = &defaults;
  ieat::RunOptions r;
  r.permutation.exact_limit = o->exact_limit;
  r.permutation.mc_samples = o->mc_samples;
  r.permutation.seed = o->seed;
  r.permutation.tie_policy = o->tie_policy == IEAT_TIE_INCLUSIVE
                                 ? ieat::TiePolicy::kInclusive
                                 : ieat::TiePolicy::kStrict;
  r.permutation.threads = o->threads;
  r.pooling = o->pooling == IEAT_POOL_PER_EXEMPLAR_MEAN
                  ? ieat::Pooling::kPerExemplarMean
                  : ieat::Pooling::kPerImage;
  return r;
}

ieat::RenderFormat ToFormat(ieat_render_format f) {
  switch (f) {
    case IEAT_RENDER_CSV:
      return ieat::RenderFormat::kCsv;
    case IEAT_RENDER_MARKDOWN:
      return ieat::RenderFormat::kMarkdown;
    default:
      return ieat::RenderFormat::kTable;
  }
}

ieat::EmbeddingFormat ToEmbeddingFormat(ieat_embedding_format f) {
  return f == IEAT_FORMAT_PACKED ? ieat::EmbeddingFormat::kPacked
                                 : ieat::EmbeddingFormat::kCsv;
}

char* CopyString(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void FillResult(const ieat::TestResult& r, bool with_names,
                ieat_test_result* out) {
  *out = ieat_test_result{};
  if (with_names) {
    out->name = r.name.c_str();
    out->x_category = r.x_category.c_str();
    out->y_category = r.y_category.c_str();
    out->a_category = r.a_category.c_str();
    out->b_category = r.b_category.c_str();
  }
  out->statistic = r.statistic;
  out->d = r.d;
  out->p = r.p.p;
  out->method = r.p.method == ieat::PValueMethod::kExact
                    ? IEAT_METHOD_EXACT
                    : IEAT_METHOD_MONTE_CARLO;
  out->tie_policy = r.p.tie_policy == ieat::TiePolicy::kStrict
                        ? IEAT_TIE_STRICT
                        : IEAT_TIE_INCLUSIVE;
  out->denominator = r.p.denominator;
  out->greater_count = r.p.greater_count;
  out->tie_count = r.p.tie_count;
  out->less_count = r.p.less_count;
  out->ci_halfwidth = r.p.ci_halfwidth;
  out->seed = r.p.seed;
  out->n_t = r.n_t;
  out->n_a = r.n_a;
  out->n_b = r.n_b;
  out->magnitude = static_cast<ieat_magnitude>(static_cast<int>(r.magnitude));
  out->direction = r.direction;
}

}  // namespace

extern "C" {

const char* ieat_version(void) { return IEAT_VERSION_STRING; }

const char* ieat_status_string(ieat_status status) {
  switch (status) {
    case IEAT_OK:
      return "ok";
    case IEAT_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case IEAT_ERR_IO:
      return "i/o error";
    case IEAT_ERR_PARSE:
      return "parse error";
    case IEAT_ERR_VALIDATION:
      return "validation error";
    case IEAT_ERR_DEGENERATE:
      return "degenerate data";
    case IEAT_ERR_NOT_FOUND:
      return "not found";
    case IEAT_ERR_SIZE_MISMATCH:
      return "size mismatch";
    case IEAT_ERR_LIMIT_EXCEEDED:
      return "limit exceeded";
    case IEAT_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* ieat_last_error(void) { return g_last_error.c_str(); }

void ieat_string_free(char* s) { std::free(s); }

void ieat_options_init(ieat_options* options) {
  if (options == nullptr) return;
  options->exact_limit = ieat::kDefaultExactLimit;
  options->mc_samples = ieat::kDefaultMonteCarloSamples;
  options->seed = ieat::kDefaultSeed;
  options->tie_policy = IEAT_TIE_STRICT;
  options->pooling = IEAT_POOL_PER_IMAGE;
  options->threads = 0;
}

ieat_status ieat_embeddings_load(const char* path,
                                 ieat_embedding_format format,
                                 ieat_embeddings** out) {
  IEAT_REQUIRE(path != nullptr && out != nullptr, "null argument");
  *out = nullptr;
  return Guard([&] {
    *out = new ieat_embeddings{
        ieat::LoadEmbeddings(path, ToEmbeddingFormat(format))};
  });
}

ieat_status ieat_embeddings_save(const ieat_embeddings* table,
                                 const char* path,
                                 ieat_embedding_format format) {
  IEAT_REQUIRE(table != nullptr && path != nullptr, "null argument");
  return Guard([&] {
    ieat::WriteEmbeddings(table->table, path, ToEmbeddingFormat(format));
  });
}

size_t ieat_embeddings_count(const ieat_embeddings* table) {
  return table ? table->table.size() : 0;
}

size_t ieat_embeddings_dimension(const ieat_embeddings* table) {
  return table ? table->table.dimension() : 0;
}

void ieat_embeddings_free(ieat_embeddings* table) { delete table; }

ieat_status ieat_manifest_load(const char* path, ieat_manifest** out) {
  IEAT_REQUIRE(path != nullptr && out != nullptr, "null argument");
  *out = nullptr;
  return Guard([&] { *out = new ieat_manifest{ieat::LoadManifest(path)}; });
}

size_t ieat_manifest_category_count(const ieat_manifest* manifest) {
  return manifest ? manifest->manifest.categories().size() : 0;
}

const char* ieat_manifest_category_name(const ieat_manifest* manifest,
                                        size_t index) {
  if (!manifest || index >= manifest->manifest.categories().size()) {
    return nullptr;
  }
  return manifest->manifest.categories()[index].name.c_str();
}

ieat_status ieat_manifest_category_size(const ieat_manifest* manifest,
                                        const ieat_embeddings* table,
                                        const char* name, ieat_pooling pooling,
                                        size_t* out) {
  IEAT_REQUIRE(manifest && table && name && out, "null argument");
  return Guard([&] {
    *out = ieat::ResolveCategory(manifest->manifest, table->table, name,
                                 pooling == IEAT_POOL_PER_EXEMPLAR_MEAN
                                     ? ieat::Pooling::kPerExemplarMean
                                     : ieat::Pooling::kPerImage)
               .size();
  });
}

void ieat_manifest_free(ieat_manifest* manifest) { delete manifest; }

ieat_status ieat_battery_load(const char* path, ieat_battery** out) {
  IEAT_REQUIRE(path != nullptr && out != nullptr, "null argument");
  *out = nullptr;
  return Guard([&] { *out = new ieat_battery{ieat::LoadBattery(path)}; });
}

const char* ieat_battery_name(const ieat_battery* battery) {
  return battery ? battery->battery.name.c_str() : nullptr;
}

const char* ieat_battery_model(const ieat_battery* battery) {
  return battery ? battery->battery.model.c_str() : nullptr;
}

size_t ieat_battery_test_count(const ieat_battery* battery) {
  return battery ? battery->battery.tests.size() : 0;
}

const char* ieat_battery_test_name(const ieat_battery* battery, size_t index) {
  if (!battery || index >= battery->battery.tests.size()) return nullptr;
  return battery->battery.tests[index].name.c_str();
}

void ieat_battery_free(ieat_battery* battery) { delete battery; }

ieat_status ieat_battery_run(const ieat_battery* battery,
                             const ieat_manifest* manifest,
                             const ieat_embeddings* table,
                             const ieat_options* options, ieat_results** out) {
  IEAT_REQUIRE(battery && manifest && table && out, "null argument");
  *out = nullptr;
  return Guard([&] {
    auto results = std::make_unique<ieat_results>();
    results->outcomes = ieat::RunBattery(battery->battery.tests,
                                         manifest->manifest, table->table,
                                         ToRunOptions(options));
    for (const auto& o : results->outcomes) {
      if (o.ok()) results->succeeded.push_back(*o.result);
    }
    *out = results.release();
  });
}

size_t ieat_results_count(const ieat_results* results) {
  return results ? results->outcomes.size() : 0;
}

size_t ieat_results_failed_count(const ieat_results* results) {
  return results ? results->outcomes.size() - results->succeeded.size() : 0;
}

const char* ieat_results_error(const ieat_results* results, size_t index) {
  if (!results || index >= results->outcomes.size()) return nullptr;
  const auto& o = results->outcomes[index];
  return o.ok() ? nullptr : o.error.c_str();
}

ieat_status ieat_results_get(const ieat_results* results, size_t index,
                             ieat_test_result* out) {
  IEAT_REQUIRE(results && out, "null argument");
  IEAT_REQUIRE(index < results->outcomes.size(), "row index out of range");
  const auto& o = results->outcomes[index];
  if (!o.ok()) return Fail(ToStatus(o.error_code), o.error);
  FillResult(*o.result, true, out);
  return IEAT_OK;
}

ieat_status ieat_results_render(const ieat_results* results,
                                ieat_render_format format, char** out) {
  IEAT_REQUIRE(results && out, "null argument");
  *out = nullptr;
  return Guard([&] {
    *out = CopyString(ieat::RenderResults(results->succeeded, ToFormat(format)));
  });
}

ieat_status ieat_results_render_hypotheses(const ieat_results* results,
                                           ieat_render_format format,
                                           char** out) {
  IEAT_REQUIRE(results && out, "null argument");
  *out = nullptr;
  return Guard([&] {
    const auto report = ieat::EvaluateHypotheses(results->succeeded);
    *out = CopyString(ieat::RenderHypotheses(report, ToFormat(format)));
  });
}

void ieat_results_free(ieat_results* results) { delete results; }

ieat_status ieat_evaluate(const double* x, const double* y, size_t n_t,
                          const double* a, size_t n_a, const double* b,
                          size_t n_b, size_t dim, const ieat_options* options,
                          ieat_test_result* out) {
  IEAT_REQUIRE(x && y && a && b && out, "null argument");
  IEAT_REQUIRE(n_t > 0 && n_a > 0 && n_b > 0 && dim > 0,
               "set sizes and dimension must be positive");
  return Guard([&] {
    auto make = [dim](const char* name, const double* p, size_t n) {
      return ieat::CategorySet(name, dim, std::vector<double>(p, p + n * dim));
    };
    const ieat::TestSpec spec{.name = "", .x_category = "X",
                              .y_category = "Y", .a_category = "A",
                              .b_category = "B"};
    const auto r = ieat::EvaluateSets(spec, make("X", x, n_t),
                                      make("Y", y, n_t), make("A", a, n_a),
                                      make("B", b, n_b), ToRunOptions(options));
    FillResult(r, false, out);
  });
}

ieat_status ieat_specificity_run(const ieat_battery* battery,
                                 const char* test_name,
                                 const ieat_manifest* manifest,
                                 const ieat_embeddings* table, uint64_t trials,
                                 const double* alphas, size_t alpha_count,
                                 uint64_t seed, const ieat_options* options,
                                 ieat_specificity** out) {
  IEAT_REQUIRE(battery && manifest && table && out, "null argument");
  IEAT_REQUIRE(alphas != nullptr || alpha_count == 0, "null alphas");
  *out = nullptr;
  const auto& tests = battery->battery.tests;
  const ieat::TestSpec* spec = nullptr;
  for (const auto& t : tests) {
    if (test_name == nullptr || t.name == test_name) {
      spec = &t;
      break;
    }
  }
  if (spec == nullptr) {
    return Fail(IEAT_ERR_NOT_FOUND,
                test_name ? std::string("no test named '") + test_name + "'"
                          : std::string("battery has no tests"));
  }
  return Guard([&] {
    *out = new ieat_specificity{ieat::EvaluateSpecificity(
        *spec, manifest->manifest, table->table, trials,
        std::span<const double>(alphas, alpha_count), seed,
        ToRunOptions(options))};
  });
}

size_t ieat_specificity_threshold_count(const ieat_specificity* s) {
  return s ? s->report.thresholds.size() : 0;
}

ieat_status ieat_specificity_threshold(const ieat_specificity* s, size_t index,
                                       double* alpha,
                                       uint64_t* false_positives,
                                       double* rate) {
  IEAT_REQUIRE(s != nullptr, "null argument");
  IEAT_REQUIRE(index < s->report.thresholds.size(), "index out of range");
  const auto& t = s->report.thresholds[index];
  if (alpha) *alpha = t.alpha;
  if (false_positives) *false_positives = t.false_positives;
  if (rate) *rate = t.false_positive_rate;
  return IEAT_OK;
}

ieat_status ieat_specificity_render(const ieat_specificity* s,
                                    ieat_render_format format, char** out) {
  IEAT_REQUIRE(s && out, "null argument");
  *out = nullptr;
  return Guard([&] {
    *out = CopyString(ieat::RenderSpecificity(s->report, ToFormat(format)));
  });
}

void ieat_specificity_free(ieat_specificity* s) { delete s; }

ieat_status ieat_select_valence(const char* norms_path, size_t k,
                                double imagery_min, ieat_valence_words** out) {
  IEAT_REQUIRE(norms_path && out, "null argument");
  *out = nullptr;
  return Guard([&] {
    const auto norms = ieat::LoadValenceNorms(norms_path);
    *out = new ieat_valence_words{
        ieat::SelectValenceWords(norms, k, imagery_min)};
  });
}

size_t ieat_valence_words_count(const ieat_valence_words* w) {
  return w ? w->words.positive.size() : 0;
}

const char* ieat_valence_positive(const ieat_valence_words* w, size_t index) {
  if (!w || index >= w->words.positive.size()) return nullptr;
  return w->words.positive[index].c_str();
}

const char* ieat_valence_negative(const ieat_valence_words* w, size_t index) {
  if (!w || index >= w->words.negative.size()) return nullptr;
  return w->words.negative[index].c_str();
}

ieat_status ieat_valence_words_render(const ieat_valence_words* w,
                                      ieat_render_format format, char** out) {
  IEAT_REQUIRE(w && out, "null argument");
  *out = nullptr;
  return Guard([&] {
    *out = CopyString(ieat::RenderValenceWords(w->words, ToFormat(format)));
  });
}

void ieat_valence_words_free(ieat_valence_words* w) { delete w; }

}  // extern "C"
