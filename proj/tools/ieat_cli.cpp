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

// ieat command-line tool. Talks to the library only through ieat.h.
//
// Exit status: 0 success, 1 some battery test failed (other rows are still
// written), 2 fatal configuration or I/O error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ieat/ieat.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitTestFailure = 1;
constexpr int kExitFatal = 2;

struct RunConfig {
  std::string embeddings;
  std::string format = "csv";
  std::string manifest;
  std::string battery;
  std::string out = "-";
  std::string out_format = "auto";
  std::uint64_t exact_limit = 10'000'000;
  std::uint64_t mc_samples = 100'000;
  std::uint64_t seed = 42;
  std::string tie_policy = "strict";
  std::string pooling = "per-image";
  std::uint32_t threads = 0;
  std::string hypotheses;  // optional extra report path
};

struct SpecificityConfig {
  std::uint64_t trials = 1000;
  std::string alphas = "0.1,0.01";
  std::string test;
};

struct ValenceConfig {
  std::string norms;
  std::size_t k = 11;
  double imagery_min = 0.0;
};

// Thrown for exit-2 conditions; carries the message for stderr.
struct Fatal {
  std::string message;
};

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
template <typename T, void (*Free)(T*)>
using Handle = std::unique_ptr<T, Deleter<T, Free>>;

using Embeddings = Handle<ieat_embeddings, ieat_embeddings_free>;
using Manifest = Handle<ieat_manifest, ieat_manifest_free>;
using Battery = Handle<ieat_battery, ieat_battery_free>;
using Results = Handle<ieat_results, ieat_results_free>;
using Specificity = Handle<ieat_specificity, ieat_specificity_free>;
using ValenceWords = Handle<ieat_valence_words, ieat_valence_words_free>;

void Check(ieat_status status, const std::string& what) {
  if (status != IEAT_OK) {
    throw Fatal{what + ": " + ieat_status_string(status) + ": " +
                ieat_last_error()};
  }
}

std::string TakeString(char* s) {
  std::string out(s ? s : "");
  ieat_string_free(s);
  return out;
}

ieat_render_format ResolveOutFormat(const std::string& name,
                                    const std::string& out_path) {
  std::string n = name;
  if (n == "auto") {
    auto ends_with = [&](const char* suffix) {
      const std::string s(suffix);
      return out_path.size() >= s.size() &&
             out_path.compare(out_path.size() - s.size(), s.size(), s) == 0;
    };
    n = ends_with(".csv") ? "csv" : ends_with(".md") ? "markdown" : "table";
  }
  if (n == "table" || n == "plain-table") return IEAT_RENDER_TABLE;
  if (n == "csv") return IEAT_RENDER_CSV;
  if (n == "markdown" || n == "md") return IEAT_RENDER_MARKDOWN;
  throw Fatal{"unknown --out-format '" + name + "'"};
}

void WriteOutput(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Fatal{"cannot write " + path};
  out << text;
  if (!out) throw Fatal{"write failed: " + path};
}

ieat_options ToOptions(const RunConfig& c) {
  ieat_options o;
  ieat_options_init(&o);
  o.exact_limit = c.exact_limit;
  o.mc_samples = c.mc_samples;
  o.seed = c.seed;
  o.threads = c.threads;
  if (c.tie_policy == "strict") {
    o.tie_policy = IEAT_TIE_STRICT;
  } else if (c.tie_policy == "inclusive") {
    o.tie_policy = IEAT_TIE_INCLUSIVE;
  } else {
    throw Fatal{"unknown --tie-policy '" + c.tie_policy + "'"};
  }
  if (c.pooling == "per-image") {
    o.pooling = IEAT_POOL_PER_IMAGE;
  } else if (c.pooling == "per-exemplar-mean") {
    o.pooling = IEAT_POOL_PER_EXEMPLAR_MEAN;
  } else {
    throw Fatal{"unknown --pooling '" + c.pooling + "'"};
  }
  return o;
}

struct Inputs {
  Embeddings embeddings;
  Manifest manifest;
  Battery battery;
};

Inputs LoadInputs(const RunConfig& c) {
  if (c.embeddings.empty()) throw Fatal{"--embeddings is required"};
  if (c.manifest.empty()) throw Fatal{"--manifest is required"};
  if (c.battery.empty()) throw Fatal{"--battery is required"};
  ieat_embedding_format fmt;
  if (c.format == "csv") {
    fmt = IEAT_FORMAT_CSV;
  } else if (c.format == "packed" || c.format == "packed-binary") {
    fmt = IEAT_FORMAT_PACKED;
  } else {
    throw Fatal{"unknown --format '" + c.format + "'"};
  }

  Inputs in;
  ieat_embeddings* e = nullptr;
  Check(ieat_embeddings_load(c.embeddings.c_str(), fmt, &e), "embeddings");
  in.embeddings.reset(e);
  ieat_manifest* m = nullptr;
  Check(ieat_manifest_load(c.manifest.c_str(), &m), "manifest");
  in.manifest.reset(m);
  ieat_battery* b = nullptr;
  Check(ieat_battery_load(c.battery.c_str(), &b), "battery");
  in.battery.reset(b);
  return in;
}

int CmdRun(const RunConfig& c) {
  const auto options = ToOptions(c);
  const auto format = ResolveOutFormat(c.out_format, c.out);
  auto in = LoadInputs(c);

  ieat_results* r = nullptr;
  Check(ieat_battery_run(in.battery.get(), in.manifest.get(),
                         in.embeddings.get(), &options, &r),
        "battery");
  Results results(r);

  char* text = nullptr;
  Check(ieat_results_render(results.get(), format, &text), "render");
  WriteOutput(c.out, TakeString(text));

  const std::size_t n = ieat_results_count(results.get());
  for (std::size_t i = 0; i < n; ++i) {
    if (const char* err = ieat_results_error(results.get(), i)) {
      std::cerr << "ieat: " << err << "\n";
    }
  }

  if (!c.hypotheses.empty()) {
    char* h = nullptr;
    const auto h_format = ResolveOutFormat(c.out_format, c.hypotheses);
    Check(ieat_results_render_hypotheses(results.get(), h_format, &h),
          "hypotheses");
    WriteOutput(c.hypotheses, TakeString(h));
  }
  return ieat_results_failed_count(results.get()) > 0 ? kExitTestFailure
                                                      : kExitOk;
}

std::vector<double> ParseAlphas(const std::string& list) {
  std::vector<double> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw Fatal{"invalid --alphas entry '" + item + "'"};
    }
    if (used != item.size()) throw Fatal{"invalid --alphas entry '" + item + "'"};
    out.push_back(v);
  }
  if (out.empty()) throw Fatal{"--alphas is empty"};
  return out;
}

int CmdSpecificity(const RunConfig& c, const SpecificityConfig& s) {
  const auto options = ToOptions(c);
  const auto format = ResolveOutFormat(c.out_format, c.out);
  const auto alphas = ParseAlphas(s.alphas);
  auto in = LoadInputs(c);

  ieat_specificity* sp = nullptr;
  Check(ieat_specificity_run(in.battery.get(),
                             s.test.empty() ? nullptr : s.test.c_str(),
                             in.manifest.get(), in.embeddings.get(), s.trials,
                             alphas.data(), alphas.size(), c.seed, &options,
                             &sp),
        "specificity");
  Specificity report(sp);
  char* text = nullptr;
  Check(ieat_specificity_render(report.get(), format, &text), "render");
  WriteOutput(c.out, TakeString(text));
  return kExitOk;
}

int CmdSelectValence(const RunConfig& c, const ValenceConfig& v) {
  const auto format = ResolveOutFormat(c.out_format, c.out);
  if (v.norms.empty()) throw Fatal{"--norms is required"};
  ieat_valence_words* w = nullptr;
  Check(ieat_select_valence(v.norms.c_str(), v.k, v.imagery_min, &w),
        "select-valence");
  ValenceWords words(w);
  char* text = nullptr;
  Check(ieat_valence_words_render(words.get(), format, &text), "render");
  WriteOutput(c.out, TakeString(text));
  return kExitOk;
}

void AddRunFlags(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--embeddings", c.embeddings, "Embedding table path");
  cmd->add_option("--format", c.format, "Embedding format: csv | packed")
      ->capture_default_str();
  cmd->add_option("--manifest", c.manifest, "Stimulus manifest (JSON)");
  cmd->add_option("--battery", c.battery, "Battery config (JSON)");
}

void AddEngineFlags(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--exact-limit", c.exact_limit,
                  "Largest partition count enumerated exactly")
      ->capture_default_str();
  cmd->add_option("--mc-samples", c.mc_samples,
                  "Monte Carlo draws beyond the exact limit")
      ->capture_default_str();
  cmd->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  cmd->add_option("--tie-policy", c.tie_policy,
                  "strict | inclusive (default for tests without one)")
      ->capture_default_str();
  cmd->add_option("--pooling", c.pooling,
                  "per-image | per-exemplar-mean (default for tests without "
                  "one)")
      ->capture_default_str();
  cmd->add_option("--threads", c.threads, "Worker cap, 0 = auto")
      ->capture_default_str();
}

void AddOutputFlags(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--out", c.out, "Output path, - for stdout")
      ->capture_default_str();
  cmd->add_option("--out-format", c.out_format,
                  "auto | table | csv | markdown (auto picks by extension)")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Image embedding association tests"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ieat_version()));

  RunConfig run_cfg;
  SpecificityConfig spec_cfg;
  ValenceConfig val_cfg;

  auto* run = app.add_subcommand("run", "Run a test battery");
  AddRunFlags(run, run_cfg);
  AddEngineFlags(run, run_cfg);
  AddOutputFlags(run, run_cfg);
  run->add_option("--hypotheses", run_cfg.hypotheses,
                  "Also write intersectional hypothesis verdicts here");

  auto* spec = app.add_subcommand(
      "specificity", "False-positive rate over random re-partitions");
  AddRunFlags(spec, run_cfg);
  AddEngineFlags(spec, run_cfg);
  AddOutputFlags(spec, run_cfg);
  spec->add_option("--trials", spec_cfg.trials, "Random partitions")
      ->capture_default_str();
  spec->add_option("--alphas", spec_cfg.alphas,
                   "Comma-separated significance thresholds")
      ->capture_default_str();
  spec->add_option("--test", spec_cfg.test,
                   "Battery test whose sets are pooled (default: first)");

  auto* val = app.add_subcommand(
      "select-valence", "Pick extreme-valence, high-imagery words");
  val->add_option("--norms", val_cfg.norms,
                  "Norms table with header word,valence,imagery");
  val->add_option("--k", val_cfg.k, "Words per list")->capture_default_str();
  val->add_option("--imagery-min", val_cfg.imagery_min,
                  "Minimum imagery score")
      ->capture_default_str();
  AddOutputFlags(val, run_cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitFatal;
  }

  try {
    if (*run) return CmdRun(run_cfg);
    if (*spec) return CmdSpecificity(run_cfg, spec_cfg);
    if (*val) return CmdSelectValence(run_cfg, val_cfg);
  } catch (const Fatal& f) {
    std::cerr << "ieat: " << f.message << "\n";
    return kExitFatal;
  }
  return kExitFatal;
}
