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

// Independent reference implementations used as test oracles. Nothing here
// calls into the library; everything is the textbook formula written out the
// slow, obvious way.

#ifndef IEAT_TESTS_SUPPORT_ORACLE_HPP_
#define IEAT_TESTS_SUPPORT_ORACLE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;
using Set = std::vector<Vec>;

inline double Dot(const Vec& u, const Vec& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

inline double Cos(const Vec& u, const Vec& v) {
  return Dot(u, v) / std::sqrt(Dot(u, u) * Dot(v, v));
}

inline double S(const Vec& w, const Set& a, const Set& b) {
  double sa = 0.0, sb = 0.0;
  for (const auto& x : a) sa += Cos(w, x);
  for (const auto& x : b) sb += Cos(w, x);
  return sa / a.size() - sb / b.size();
}

inline double Statistic(const Set& x, const Set& y, const Set& a,
                        const Set& b) {
  double sx = 0.0, sy = 0.0;
  for (const auto& w : x) sx += S(w, a, b);
  for (const auto& w : y) sy += S(w, a, b);
  return sx - sy;
}

// Two-pass corrected standard deviation.
inline double Stddev(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= v.size();
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / (v.size() - 1));
}

inline double EffectSize(const Set& x, const Set& y, const Set& a,
                         const Set& b) {
  std::vector<double> sx, sy, all;
  for (const auto& w : x) sx.push_back(S(w, a, b));
  for (const auto& w : y) sy.push_back(S(w, a, b));
  all = sx;
  all.insert(all.end(), sy.begin(), sy.end());
  double mx = 0.0, my = 0.0;
  for (double s : sx) mx += s;
  for (double s : sy) my += s;
  return (mx / sx.size() - my / sy.size()) / Stddev(all);
}

// Pascal's triangle, no cleverness.
inline std::uint64_t Choose(unsigned n, unsigned k) {
  std::vector<std::vector<std::uint64_t>> c(n + 1,
                                            std::vector<std::uint64_t>(n + 1));
  for (unsigned i = 0; i <= n; ++i) {
    c[i][0] = 1;
    for (unsigned j = 1; j <= i; ++j) c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
  }
  return c[n][k];
}

struct Counts {
  std::uint64_t greater = 0, tie = 0, less = 0, total = 0;
  std::vector<double> statistics;  // one per partition, bitmask order
};

// Every n-subset of the pooled 2n elements becomes X_i; the statistic is
// recomputed from raw vectors.
inline Counts BruteForce(const Set& x, const Set& y, const Set& a,
                         const Set& b, double observed, double tol) {
  Set pool = x;
  pool.insert(pool.end(), y.begin(), y.end());
  const unsigned m = static_cast<unsigned>(pool.size());
  const unsigned n = m / 2;
  Counts c;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    if (static_cast<unsigned>(__builtin_popcount(mask)) != n) continue;
    Set xi, yi;
    for (unsigned i = 0; i < m; ++i) {
      ((mask >> i) & 1u ? xi : yi).push_back(pool[i]);
    }
    const double s = Statistic(xi, yi, a, b);
    c.statistics.push_back(s);
    ++c.total;
    if (std::abs(s - observed) <= tol) {
      ++c.tie;
    } else if (s > observed) {
      ++c.greater;
    } else {
      ++c.less;
    }
  }
  return c;
}

// Revolving-door order by its defining recursion:
//   G(n, t) = G(n-1, t), reverse(G(n-1, t-1)) + {n-1}
inline std::vector<std::vector<unsigned>> RevolvingDoorList(unsigned n,
                                                            unsigned t) {
  if (t == 0) return {{}};
  if (t == n) {
    std::vector<unsigned> all(n);
    for (unsigned i = 0; i < n; ++i) all[i] = i;
    return {all};
  }
  auto out = RevolvingDoorList(n - 1, t);
  auto tail = RevolvingDoorList(n - 1, t - 1);
  std::reverse(tail.begin(), tail.end());
  for (auto& s : tail) {
    s.push_back(n - 1);
    out.push_back(s);
  }
  return out;
}

inline Vec RandomVec(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> g;
  Vec v(dim);
  for (auto& x : v) x = g(rng);
  return v;
}

inline Set RandomSet(std::mt19937_64& rng, std::size_t n, std::size_t dim) {
  Set s;
  for (std::size_t i = 0; i < n; ++i) s.push_back(RandomVec(rng, dim));
  return s;
}

// Haar-ish random orthogonal matrix by Gram-Schmidt on a Gaussian matrix.
inline std::vector<Vec> RandomOrthogonal(std::mt19937_64& rng,
                                         std::size_t dim) {
  std::vector<Vec> q;
  while (q.size() < dim) {
    Vec v = RandomVec(rng, dim);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& e : q) {
        const double p = Dot(v, e);
        for (std::size_t i = 0; i < dim; ++i) v[i] -= p * e[i];
      }
    }
    const double n = std::sqrt(Dot(v, v));
    for (auto& x : v) x /= n;
    q.push_back(v);
  }
  return q;
}

inline Vec Apply(const std::vector<Vec>& q, const Vec& v) {
  Vec out(v.size(), 0.0);
  for (std::size_t i = 0; i < q.size(); ++i) out[i] = Dot(q[i], v);
  return out;
}

inline Set Apply(const std::vector<Vec>& q, const Set& s) {
  Set out;
  for (const auto& v : s) out.push_back(Apply(q, v));
  return out;
}

inline std::vector<double> Flatten(const Set& s) {
  std::vector<double> out;
  for (const auto& v : s) out.insert(out.end(), v.begin(), v.end());
  return out;
}

// Kolmogorov-Smirnov distance of a sample against the continuous uniform
// distribution on [0, 1].
inline double KsUniform(std::vector<double> sample) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double u = sample[i];
    d = std::max({d, (i + 1) / n - u, u - i / n});
  }
  return d;
}

inline std::string ReadFile(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void WriteFile(const std::filesystem::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << s;
}

// Fresh directory under the system temp dir, named after the caller.
inline std::filesystem::path TempDir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("ieat-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::filesystem::path SourcePath(const std::string& rel) {
  return std::filesystem::path(IEAT_SOURCE_DIR) / rel;
}

}  // namespace oracle

#endif  // IEAT_TESTS_SUPPORT_ORACLE_HPP_
