// Copyright 2026 The spoofprint Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SPOOFPRINT_TESTS_TEST_UTIL_H_
#define SPOOFPRINT_TESTS_TEST_UTIL_H_

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

// Independent reference implementations used as test oracles.
namespace spoofprint::testing_util {

inline std::vector<std::complex<double>> DirectDft(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      const double ang = -2.0 * std::numbers::pi * static_cast<double>((k * t) % n) /
                         static_cast<double>(n);
      acc += x[t] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    out[k] = acc;
  }
  return out;
}

// Gaussian elimination with partial pivoting; a is row-major n x n.
inline std::vector<double> SolveLinear(std::vector<double> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(a[r * n + c]) > std::abs(a[p * n + c])) p = r;
    }
    if (a[p * n + c] == 0.0) throw std::runtime_error("singular system");
    for (std::size_t k = 0; k < n; ++k) std::swap(a[c * n + k], a[p * n + k]);
    std::swap(b[c], b[p]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r * n + c] / a[c * n + c];
      for (std::size_t k = c; k < n; ++k) a[r * n + k] -= f * a[c * n + k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[i * n + k] * x[k];
    x[i] = s / a[i * n + i];
  }
  return x;
}

// Predictor coefficients a_1..a_K from the Toeplitz normal equations
// sum_j r[|i-j|] a_j = r[i].
inline std::vector<double> NormalEquationLp(const std::vector<double>& r, std::size_t order) {
  std::vector<double> a(order * order), b(order);
  for (std::size_t i = 0; i < order; ++i) {
    for (std::size_t j = 0; j < order; ++j) {
      a[i * order + j] = r[i > j ? i - j : j - i];
    }
    b[i] = r[i + 1];
  }
  return SolveLinear(a, b);
}

// Predictor coefficients of a stable all-pole filter: conjugate pole pairs
// with radius in [0.2, max_radius] at stratified angles (one pair per slice of
// (0, pi), like formants) plus a real pole for odd orders, expanded into
// A(z) = prod (1 - p z^-1), returned as a_k with A(z) = 1 - sum a_k z^-k.
// Stratification keeps poles from clustering, which would otherwise push the
// spectral dynamic range far beyond what double-precision autocorrelation
// estimates can resolve.
inline std::vector<double> RandomStableAr(std::size_t order, std::mt19937_64& rng,
                                          double max_radius = 0.95) {
  std::uniform_real_distribution<double> radius(0.2, max_radius), unit(0.1, 0.9);
  std::vector<std::complex<double>> poly = {1.0};
  auto mul = [&](std::complex<double> p) {
    std::vector<std::complex<double>> next(poly.size() + 1, 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i] += poly[i];
      next[i + 1] -= p * poly[i];
    }
    poly = next;
  };
  const std::size_t pairs = order / 2;
  for (std::size_t i = 0; i < pairs; ++i) {
    const double angle = std::numbers::pi * (static_cast<double>(i) + unit(rng)) /
                         static_cast<double>(pairs);
    const auto p = std::polar(radius(rng), angle);
    mul(p);
    mul(std::conj(p));
  }
  if (order % 2 == 1) mul(radius(rng) * (unit(rng) < 0.5 ? 1.0 : -1.0));
  std::vector<double> a(order);
  for (std::size_t k = 1; k <= order; ++k) a[k - 1] = -poly[k].real();
  return a;
}

// s[n] = e[n] + sum_k a_k s[n-k] with zero initial state.
inline std::vector<double> AllPoleFilter(const std::vector<double>& a,
                                         const std::vector<double>& e) {
  std::vector<double> s(e.size());
  for (std::size_t n = 0; n < e.size(); ++n) {
    double v = e[n];
    for (std::size_t k = 1; k <= a.size() && k <= n; ++k) v += a[k - 1] * s[n - k];
    s[n] = v;
  }
  return s;
}

inline double NormalizedCrossCorrelation(const std::vector<double>& x,
                                         const std::vector<double>& y, std::size_t begin,
                                         std::size_t end) {
  double mx = 0.0, my = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(end - begin);
  my /= static_cast<double>(end - begin);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

// Mean over frames (length `frame`, step `hop`, nonzero energy only) and lags
// 1..max_lag of |r[k] / r[0]|, with r the frame's biased autocorrelation.
inline double MeanAbsNormalizedAutocorrelation(const std::vector<double>& x, std::size_t frame,
                                               std::size_t hop, std::size_t max_lag) {
  double total = 0.0;
  std::size_t count = 0;
  for (std::size_t start = 0; start + frame <= x.size(); start += hop) {
    double r0 = 0.0;
    for (std::size_t n = start; n < start + frame; ++n) r0 += x[n] * x[n];
    if (r0 <= 0.0) continue;
    for (std::size_t k = 1; k <= max_lag; ++k) {
      double rk = 0.0;
      for (std::size_t n = start; n + k < start + frame; ++n) rk += x[n] * x[n + k];
      total += std::abs(rk / r0);
      ++count;
    }
  }
  return count ? total / static_cast<double>(count) : 0.0;
}

// Segments of 128 samples with fresh phases per segment and tones on bins 12,
// 20 and 32. Coupled: the third phase is the sum of the first two.
inline std::vector<double> PhaseTriad(bool coupled, std::size_t segments, std::uint64_t seed) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, kTwoPi);
  const std::size_t L = 128;
  const double k1 = 12, k2 = 20;
  std::vector<double> x(L * segments);
  for (std::size_t s = 0; s < segments; ++s) {
    const double p1 = phase(rng), p2 = phase(rng);
    const double p3 = coupled ? p1 + p2 : phase(rng);
    for (std::size_t n = 0; n < L; ++n) {
      const double t = kTwoPi * static_cast<double>(n) / L;
      x[s * L + n] = std::cos(k1 * t + p1) + std::cos(k2 * t + p2) + std::cos((k1 + k2) * t + p3);
    }
  }
  return x;
}

}  // namespace spoofprint::testing_util

#endif  // SPOOFPRINT_TESTS_TEST_UTIL_H_
