// tests/oracles.hpp

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Independent reference computations used to check the library. None of
// these call into the code paths they are compared against.

#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <tuple>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;

/// Roots of z^p + a_1 z^(p-1) + ... + a_p by simultaneous Aberth-Ehrlich
/// iteration in long double, started on a circle.
inline std::vector<Complex> aberth_roots(const std::vector<double> &a, int max_iter = 500) {
  using CL = std::complex<long double>;
  const std::size_t p = a.size();
  auto eval = [&](CL z, CL &d) {
    CL v(1), s(0);
    for (double c : a) {
      s = s * z + v;
      v = v * z + (long double)c;
    }
    d = s;
    return v;
  };
  long double radius = 0;
  for (double c : a) radius = std::max(radius, std::abs((long double)c));
  radius = std::pow(1 + radius, 1.0L / (long double)p);
  std::vector<CL> z(p);
  for (std::size_t k = 0; k < p; ++k)
    z[k] = std::polar(radius * 0.9L, 2.0L * 3.14159265358979323846L * (long double)k / (long double)p + 0.4L);
  for (int it = 0; it < max_iter; ++it) {
    long double moved = 0;
    for (std::size_t k = 0; k < p; ++k) {
      CL d;
      const CL v = eval(z[k], d);
      if (std::abs(v) == 0) continue;
      const CL ratio = v / d;
      CL sum(0);
      for (std::size_t j = 0; j < p; ++j)
        if (j != k) sum += CL(1) / (z[k] - z[j]);
      const CL step = ratio / (CL(1) - ratio * sum);
      z[k] -= step;
      moved = std::max(moved, std::abs(step));
    }
    if (moved < 1e-17L) break;
  }
  std::vector<Complex> out;
  for (const CL &r : z) out.emplace_back(double(r.real()), double(r.imag()));
  return out;
}

/// Greedy multiset distance: max over a of the distance to its nearest
/// unused partner in b.
inline double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::sort(a.begin(), a.end(), [](Complex x, Complex y) { return std::abs(x) > std::abs(y); });
  double worst = 0;
  std::vector<bool> used(b.size(), false);
  for (const Complex &x : a) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!used[j] && std::abs(b[j] - x) < best) {
        best = std::abs(b[j] - x);
        bi = j;
      }
    used[bi] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

/// EER by sweeping a threshold through every gap between consecutive
/// distinct scores (plus below the minimum and above the maximum), counting
/// errors directly and interpolating linearly at the first sign change.
/// Gap k accepts exactly the scores >= all[k]; the threshold is never
/// materialized as a midpoint, which would collapse onto one side when two
/// scores are adjacent doubles.
inline double brute_force_eer(const std::vector<double> &tar, const std::vector<double> &non) {
  std::vector<double> all(tar);
  all.insert(all.end(), non.begin(), non.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  // gap k in [0, all.size()]: accept iff score >= all[k]; the last gap rejects everything.
  std::vector<std::size_t> th(all.size() + 1);
  std::iota(th.begin(), th.end(), std::size_t{0});
  auto rates = [&](std::size_t k) {
    auto accepted = [&](double s) { return k < all.size() && !(s < all[k]); };
    double miss = 0, fa = 0;
    for (double s : tar)
      if (!accepted(s)) miss += 1;
    for (double s : non)
      if (accepted(s)) fa += 1;
    return std::make_pair(fa / double(non.size()), miss / double(tar.size()));
  };
  auto [fa0, miss0] = rates(th[0]);
  for (std::size_t i = 1; i < th.size(); ++i) {
    auto [fa, miss] = rates(th[i]);
    if (miss0 - fa0 == 0) return 100.0 * fa0;
    if (miss - fa >= 0) {
      if (miss - fa == 0) return 100.0 * fa;
      const double t = (fa0 - miss0) / ((miss - fa) - (miss0 - fa0));
      return 100.0 * (fa0 + t * (fa - fa0));
    }
    fa0 = fa;
    miss0 = miss;
  }
  return 100.0 * fa0;
}

struct EditCounts {
  std::size_t sub = 0, del = 0, ins = 0;
  bool operator==(const EditCounts &) const = default;
};

/// Top-down memoized edit distance from position (i, j) to the end. Among
/// minimum-cost completions the one with the most substitutions wins.
inline EditCounts memo_edit_counts(const std::vector<std::string> &ref, const std::vector<std::string> &hyp) {
  const std::size_t n = ref.size(), m = hyp.size();
  std::vector<std::vector<std::array<long, 4>>> memo(n + 1, std::vector<std::array<long, 4>>(m + 1, {-1, 0, 0, 0}));
  // entries: cost, sub, del, ins
  auto key = [](const std::array<long, 4> &c) { return std::make_pair(c[0], -c[1]); };
  auto solve = [&](auto &self, std::size_t i, std::size_t j) -> std::array<long, 4> {
    auto &slot = memo[i][j];
    if (slot[0] >= 0) return slot;
    std::array<long, 4> best{};
    if (i == n && j == m) {
      best = {0, 0, 0, 0};
    } else if (i == n) {
      best = {long(m - j), 0, 0, long(m - j)};
    } else if (j == m) {
      best = {long(n - i), 0, long(n - i), 0};
    } else {
      std::vector<std::array<long, 4>> options;
      auto diag = self(self, i + 1, j + 1);
      if (ref[i] != hyp[j]) {
        diag[0] += 1;
        diag[1] += 1;
      }
      options.push_back(diag);
      auto del = self(self, i + 1, j);
      del[0] += 1;
      del[2] += 1;
      options.push_back(del);
      auto ins = self(self, i, j + 1);
      ins[0] += 1;
      ins[3] += 1;
      options.push_back(ins);
      best = *std::min_element(options.begin(), options.end(),
                               [&](const auto &a, const auto &b) { return key(a) < key(b); });
    }
    slot = best;
    return best;
  };
  const auto r = solve(solve, 0, 0);
  return {std::size_t(r[1]), std::size_t(r[2]), std::size_t(r[3])};
}

/// Plain two-row Levenshtein distance.
inline std::size_t levenshtein(const std::vector<std::string> &a, const std::vector<std::string> &b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j)
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

/// UAR from a 4x4 confusion matrix (rows = reference class).
inline double confusion_uar(const std::array<std::array<int, 4>, 4> &cm) {
  double sum = 0;
  for (int i = 0; i < 4; ++i) {
    int row = 0;
    for (int j = 0; j < 4; ++j) row += cm[i][j];
    sum += double(cm[i][i]) / double(row);
  }
  return 100.0 * sum / 4.0;
}

/// One-sample Kolmogorov-Smirnov statistic against U(lo, hi).
inline double ks_uniform(std::vector<double> x, double lo, double hi) {
  std::sort(x.begin(), x.end());
  const double n = double(x.size());
  double d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = (x[i] - lo) / (hi - lo);
    d = std::max({d, f - double(i) / n, double(i + 1) / n - f});
  }
  return d;
}

/// Direct evaluation of the all-pole recursion x[n] = e[n] - sum a_k x[n-k]
/// driven by Gaussian noise, discarding a warm-up.
inline Eigen::VectorXd ar_process(const std::vector<double> &a, Eigen::Index n, std::mt19937_64 &rng,
                                  double sigma = 1.0, Eigen::Index warmup = 2000) {
  std::normal_distribution<double> noise(0.0, sigma);
  std::vector<double> x(std::size_t(n + warmup), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    double v = noise(rng);
    for (std::size_t k = 1; k <= a.size() && k <= i; ++k) v -= a[k - 1] * x[i - k];
    x[i] = v;
  }
  Eigen::VectorXd out(n);
  for (Eigen::Index i = 0; i < n; ++i) out[i] = x[std::size_t(i + warmup)];
  return out;
}

}  // namespace oracle
