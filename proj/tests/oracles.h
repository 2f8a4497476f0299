// tests/oracles.h

// Copyright 2026 The sqa-lab Authors
//
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

#ifndef SQALAB_TESTS_ORACLES_H_
#define SQALAB_TESTS_ORACLES_H_

// Brute-force reference computations used by the unit and acceptance tests.
// Nothing here calls into the library code paths being checked.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace sqalab::oracle {

/// Every nondecreasing score sequence over 1..5 with length in
/// [min_size, max_size].
inline std::vector<std::vector<int>> AllScoreMultisets(int min_size,
                                                       int max_size) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> extend = [&](int lowest) {
    if (static_cast<int>(cur.size()) >= min_size) out.push_back(cur);
    if (static_cast<int>(cur.size()) == max_size) return;
    for (int s = lowest; s <= 5; ++s) {
      cur.push_back(s);
      extend(s);
      cur.pop_back();
    }
  };
  extend(1);
  return out;
}

/// Mean of sorted(scores)[first, last).
inline double SortedSliceMean(std::vector<int> scores, std::size_t first,
                              std::size_t last) {
  std::sort(scores.begin(), scores.end());
  long double sum = 0;
  for (std::size_t i = first; i < last; ++i) sum += scores[i];
  return static_cast<double>(sum / static_cast<long double>(last - first));
}

inline double Median(std::vector<int> scores) {
  std::sort(scores.begin(), scores.end());
  const std::size_t n = scores.size();
  if (n % 2 == 1) return scores[n / 2];
  return 0.5 * (scores[n / 2 - 1] + scores[n / 2]);
}

/// g1 from mean-centred population moments, straight from the definition.
inline std::optional<double> MomentSkewness(const std::vector<int> &scores) {
  const long double n = static_cast<long double>(scores.size());
  long double mean = 0;
  for (int s : scores) mean += s;
  mean /= n;
  long double m2 = 0, m3 = 0;
  for (int s : scores) {
    const long double d = s - mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  m2 /= n;
  m3 /= n;
  if (m2 < 1e-15L) return std::nullopt;
  return static_cast<double>(m3 / std::pow(m2, 1.5L));
}

/// rank_i = 1 + #{x_j < x_i} + (#{x_j == x_i} - 1) / 2, by counting.
inline std::vector<double> CountingRanks(const std::vector<double> &x) {
  std::vector<double> ranks(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::size_t less = 0, equal = 0;
    for (double v : x) {
      if (v < x[i]) ++less;
      if (v == x[i]) ++equal;
    }
    ranks[i] = 1.0 + static_cast<double>(less) +
               0.5 * static_cast<double>(equal - 1);
  }
  return ranks;
}

inline double PearsonLongDouble(const std::vector<double> &x,
                                const std::vector<double> &y) {
  const long double n = static_cast<long double>(x.size());
  long double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  long double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

/// |X_k| for k = 0..n/2 by direct summation in long double.
inline std::vector<double> NaiveDftMagnitude(const std::vector<double> &x) {
  const std::size_t n = x.size();
  std::vector<double> mags(n / 2 + 1);
  for (std::size_t k = 0; k < mags.size(); ++k) {
    long double re = 0, im = 0;
    for (std::size_t t = 0; t < n; ++t) {
      const long double phase = -2.0L * std::numbers::pi_v<long double> *
                                static_cast<long double>((k * t) % n) /
                                static_cast<long double>(n);
      re += x[t] * std::cos(phase);
      im += x[t] * std::sin(phase);
    }
    mags[k] = static_cast<double>(std::sqrt(re * re + im * im));
  }
  return mags;
}

/// Frames counted by stepping a window along the signal.
inline std::size_t LoopFrameCount(std::size_t length, std::size_t window,
                                  std::size_t hop) {
  std::size_t frames = 0;
  for (std::size_t start = 0; start + window <= length; start += hop) ++frames;
  return frames;
}

/// Central finite-difference gradient of f at theta.
inline std::vector<double> FiniteDifferenceGradient(
    const std::function<double(const std::vector<double> &)> &f,
    std::vector<double> theta, double h) {
  std::vector<double> grad(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double saved = theta[i];
    theta[i] = saved + h;
    const double up = f(theta);
    theta[i] = saved - h;
    const double down = f(theta);
    theta[i] = saved;
    grad[i] = (up - down) / (2.0 * h);
  }
  return grad;
}

/// Solves A x = b (dense, small) by Gaussian elimination with partial
/// pivoting.
inline std::vector<double> SolveLinear(std::vector<std::vector<double>> a,
                                       std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x;
}

}  // namespace sqalab::oracle

#endif  // SQALAB_TESTS_ORACLES_H_
