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

// Drives the ieat binary as a subprocess and checks exit codes and output.

#include <sys/wait.h>

#include <cstdlib>
#include <string>

#include "doctest.h"
#include "ieat/ieat.h"
#include "oracle.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome Run(const std::string& args) {
  static int counter = 0;
  const auto dir = oracle::TempDir("cli-" + std::to_string(counter++));
  const auto out = dir / "stdout", err = dir / "stderr";
  const std::string cmd = std::string("cd '") + IEAT_SOURCE_DIR + "' && '" +
                          IEAT_CLI_PATH + "' " + args + " >'" + out.string() +
                          "' 2>'" + err.string() + "'";
  const int raw = std::system(cmd.c_str());
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, oracle::ReadFile(out),
          oracle::ReadFile(err)};
}

const std::string kSynthetic =
    "--embeddings data/fixtures/synthetic/embeddings.csv "
    "--manifest data/fixtures/synthetic/manifest.json ";
const std::string kNull =
    "--embeddings data/fixtures/null/embeddings.csv "
    "--manifest data/fixtures/null/manifest.json "
    "--battery data/fixtures/null/null.battery ";

int CountLines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

TEST_CASE("run the replication battery to csv") {
  const auto dir = oracle::TempDir("cli-run");
  const auto out = (dir / "results.csv").string();
  const auto r = Run("run " + kSynthetic + "--battery configs/replication.battery "
                     "--mc-samples 2000 --out '" + out + "'");
  CHECK(r.code == 0);
  const auto text = oracle::ReadFile(out);
  CHECK(CountLines(text) == 16);
  CHECK(text.starts_with("name,X,Y,A,B,n_t,n_a,d,magnitude,p,p_method\n"));
}

TEST_CASE("fatal errors exit 2") {
  CHECK(Run("run " + kSynthetic).code == 2);  // no battery
  CHECK(Run("run --embeddings data/fixtures/synthetic/embeddings.csv "
            "--manifest missing.json --battery configs/replication.battery")
            .code == 2);
  CHECK(Run("run " + kSynthetic + "--battery configs/replication.battery --tie-policy loose")
            .code == 2);
  CHECK(Run("run " + kSynthetic + "--battery configs/replication.battery --format npy")
            .code == 2);
  CHECK(Run("run " + kSynthetic + "--battery configs/replication.battery --seed nope").code ==
        2);
  CHECK(Run("").code == 2);
}

TEST_CASE("unknown category exits 1 with the other rows present") {
  const auto r = Run("run " + kSynthetic +
                     "--battery data/fixtures/synthetic/partial.battery "
                     "--mc-samples 2000 --out-format csv");
  CHECK(r.code == 1);
  CHECK(CountLines(r.out) == 2);
  CHECK(r.out.find("Insect-Flower") != std::string::npos);
  CHECK(r.err.find("Unicorn") != std::string::npos);
}

TEST_CASE("specificity command") {
  const auto r = Run("specificity " + kNull +
                     "--trials 200 --alphas 0.1,0.01 --seed 7 --out-format csv");
  CHECK(r.code == 0);
  CHECK(CountLines(r.out) == 3);
  CHECK(Run("specificity " + kNull + "--alphas 1.5").code == 2);
  CHECK(Run("specificity " + kNull + "--alphas 0.1,x").code == 2);
  CHECK(Run("specificity " + kNull + "--trials 50").code == 2);
  CHECK(Run("specificity " + kNull + "--test Nope").code == 2);
}

TEST_CASE("select-valence command") {
  const auto dir = oracle::TempDir("cli-valence");
  const auto norms = (dir / "norms.csv").string();
  std::string text = "word,valence,imagery\n";
  for (int i = 0; i < 30; ++i) {
    text += "w" + std::to_string(i) + "," + std::to_string(1.0 + i * 0.2) + ",6\n";
  }
  oracle::WriteFile(norms, text);
  const auto r = Run("select-valence --norms '" + norms + "' --k 11 --out-format csv");
  CHECK(r.code == 0);
  CHECK(CountLines(r.out) == 12);
  CHECK(r.out.find("1,w29,w0\n") != std::string::npos);

  const auto empty = (dir / "empty.csv").string();
  oracle::WriteFile(empty, "");
  CHECK(Run("select-valence --norms '" + empty + "'").code == 2);
  CHECK(Run("select-valence --norms '" + norms + "' --k 0").code == 2);
  CHECK(Run("select-valence --norms '" + norms + "' --k 16").code == 2);
}

TEST_CASE("help lists every flag") {
  for (const char* sub : {"run", "specificity"}) {
    const auto r = Run(std::string(sub) + " --help");
    CHECK(r.code == 0);
    for (const char* flag :
         {"--embeddings", "--format", "--manifest", "--battery", "--out",
          "--out-format", "--exact-limit", "--mc-samples", "--seed",
          "--tie-policy", "--pooling", "--threads"}) {
      CAPTURE(flag);
      CHECK(r.out.find(flag) != std::string::npos);
    }
  }
  const auto s = Run("specificity --help");
  CHECK(s.out.find("--trials") != std::string::npos);
  CHECK(s.out.find("--alphas") != std::string::npos);
  const auto v = Run("select-valence --help");
  CHECK(v.out.find("--imagery-min") != std::string::npos);
  CHECK(v.out.find("--k") != std::string::npos);
}

TEST_CASE("packed embeddings give the same results as csv") {
  const auto dir = oracle::TempDir("cli-packed");
  const auto bin = (dir / "e.bin").string();
  ieat_embeddings* e = nullptr;
  REQUIRE(ieat_embeddings_load(
              oracle::SourcePath("data/fixtures/synthetic/embeddings.csv").c_str(),
              IEAT_FORMAT_CSV, &e) == IEAT_OK);
  REQUIRE(ieat_embeddings_save(e, bin.c_str(), IEAT_FORMAT_PACKED) == IEAT_OK);
  ieat_embeddings_free(e);

  const std::string tail =
      "--manifest data/fixtures/synthetic/manifest.json "
      "--battery configs/replication.battery --mc-samples 2000";
  const auto csv = Run("run --embeddings data/fixtures/synthetic/embeddings.csv " + tail);
  const auto packed = Run("run --embeddings '" + bin + "' --format packed " + tail);
  CHECK(packed.code == 0);
  CHECK(packed.out == csv.out);
  const auto wrong = Run("run --embeddings data/fixtures/synthetic/embeddings.csv "
                         "--format packed " + tail);
  CHECK(wrong.code == 2);
}

TEST_CASE("output is byte-identical across runs and thread counts") {
  const std::string base = "run " + kSynthetic +
                           "--battery configs/intersectional.battery --mc-samples 5000 ";
  const auto a = Run(base + "--threads 1");
  const auto b = Run(base + "--threads 8");
  const auto c = Run(base + "--threads 1");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  CHECK(Run(base + "--seed 43").out != a.out);
}

}  // namespace
