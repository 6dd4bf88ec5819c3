#pragma once

// Independent reference computations. None of these go through the FFT or
// the adaptive refinement; they use direct sums, dense loops and brute force.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "kreisslab/fourier_series.hpp"

namespace oracle {

using cplx = std::complex<double>;

// Direct Horner evaluation at M points, then the discrete L^p mean.
inline double quadrature_lp(const kreisslab::FourierSeries& f, double p, int M) {
  long double acc = 0.0L;
  double peak = 0.0;
  for (int j = 0; j < M; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / M;
    const double v = std::abs(f.evaluate(std::polar(1.0, theta)));
    peak = std::max(peak, v);
    acc += std::pow(static_cast<long double>(v), static_cast<long double>(p));
  }
  if (std::isinf(p)) return peak;
  return static_cast<double>(std::pow(acc / M, 1.0L / static_cast<long double>(p)));
}

// sup_t t * |{theta : |2 cos theta| >= t}| / (2 pi) = sup_t t (2/pi) acos(t/2).
inline double weak_l1_two_cos(int steps) {
  double best = 0.0;
  for (int i = 1; i < steps; ++i) {
    const double t = 2.0 * i / steps;
    best = std::max(best, t * (2.0 / std::numbers::pi) * std::acos(t / 2.0));
  }
  return best;
}

// (z - a) * sum_{j < terms} (a z)^j, expanded by hand.
inline std::vector<cplx> mobius_product(double a, int terms) {
  std::vector<cplx> geo(terms);
  double ak = 1.0;
  for (int j = 0; j < terms; ++j, ak *= a) geo[j] = ak;
  std::vector<cplx> out(terms + 1, 0.0);
  for (int j = 0; j < terms; ++j) {
    out[j + 1] += geo[j];
    out[j] += -a * geo[j];
  }
  out.resize(terms);  // the last entry is incomplete
  return out;
}

inline std::vector<cplx> direct_convolution(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  std::vector<cplx> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// c^{*N}, truncated to the first `keep` entries after every product.
inline std::vector<cplx> direct_power(const std::vector<cplx>& c, int N, std::size_t keep) {
  std::vector<cplx> acc{1.0};
  for (int n = 0; n < N; ++n) {
    acc = direct_convolution(acc, c);
    if (acc.size() > keep) acc.resize(keep);
  }
  return acc;
}

// (lambda - S)^{-k} = sum_j binom(j+k-1, k-1) lambda^{-k-j} S^j.
inline cplx shift_resolvent_coefficient(cplx lambda, int k, int j) {
  double binom = 1.0;
  for (int i = 1; i < k; ++i) binom = binom * (j + i) / i;
  return binom * std::pow(lambda, -(k + j));
}

// e^{-N} sum_{lo <= k <= hi} N^k/k!, by the term recurrence in long double
// starting from the mode.
inline double poisson_mass(std::int64_t N, std::int64_t lo, std::int64_t hi) {
  lo = std::max<std::int64_t>(lo, 0);
  if (hi < lo) return 0.0;
  const long double n = static_cast<long double>(N);
  // log of the term at k = N
  const long double log_mode = n * std::log(n) - std::lgamma(n + 1.0L) - n;
  long double total = 0.0L;
  long double term = std::exp(log_mode);
  for (std::int64_t k = N; k >= lo; --k) {
    if (k <= hi) total += term;
    term *= static_cast<long double>(k) / n;
  }
  term = std::exp(log_mode);
  for (std::int64_t k = N + 1; k <= hi; ++k) {
    term *= n / static_cast<long double>(k);
    if (k >= lo) total += term;
  }
  return static_cast<double>(total);
}

inline double vec_norm(const std::vector<double>& x, double p) {
  double s = 0.0;
  for (double v : x) s += std::pow(std::abs(v), p);
  return std::pow(s, 1.0 / p);
}

inline std::vector<double> matvec(const std::vector<double>& A, int n, const std::vector<double>& x) {
  std::vector<double> y(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) y[i] += A[i * n + j] * x[j];
  return y;
}

// max ||Ax||_p/||x||_p over random real directions, then coordinate
// hill-climbing from the best few.
inline double brute_force_pnorm(const std::vector<double>& A, int n, double p, int samples,
                                std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  auto ratio = [&](const std::vector<double>& x) { return vec_norm(matvec(A, n, x), p) / vec_norm(x, p); };
  std::vector<std::pair<double, std::vector<double>>> top;
  std::vector<double> x(n);
  for (int s = 0; s < samples; ++s) {
    for (auto& v : x) v = g(rng);
    const double r = ratio(x);
    if (top.size() < 4 || r > top.back().first) {
      top.emplace_back(r, x);
      std::sort(top.begin(), top.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
      if (top.size() > 4) top.pop_back();
    }
  }
  double best = top.front().first;
  for (auto [r, y] : top) {
    double step = 0.1;
    while (step > 1e-10) {
      bool improved = false;
      for (int i = 0; i < n; ++i) {
        for (double sgn : {1.0, -1.0}) {
          auto z = y;
          z[i] += sgn * step;
          const double rz = ratio(z);
          if (rz > r) {
            r = rz;
            y = z;
            improved = true;
          }
        }
      }
      if (!improved) step /= 2.0;
    }
    best = std::max(best, r);
  }
  return best;
}

}  // namespace oracle
