#pragma once

// Seeded random inputs for property tests.

#include <cstdint>
#include <random>
#include <vector>

#include "kreisslab/fourier_series.hpp"
#include "kreisslab/torus.hpp"

namespace gen {

inline constexpr int kCases = 200;

struct Rng {
  std::mt19937_64 engine;
  explicit Rng(std::uint64_t seed) : engine(seed) {}

  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine);
  }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine); }
  double normal() { return std::normal_distribution<double>()(engine); }
  bool coin() { return integer(0, 1) == 1; }
};

// Trigonometric polynomial with k_min in [-max_k, max_k] and up to `max_len`
// Gaussian coefficients.
inline kreisslab::FourierSeries series(Rng& r, std::int64_t max_k = 20, std::int64_t max_len = 24) {
  const auto lo = r.integer(-max_k, max_k);
  const auto len = r.integer(1, max_len);
  std::vector<kreisslab::cplx> c(static_cast<std::size_t>(len));
  for (auto& v : c) v = {r.normal(), r.normal()};
  return kreisslab::FourierSeries(lo, std::move(c));
}

inline kreisslab::torus::Interval interval(Rng& r, std::int64_t R) {
  auto a = r.integer(-R, R);
  auto b = r.integer(-R, R);
  if (a > b) std::swap(a, b);
  return {a, b};
}

// Disjoint intervals inside [-R, R].
inline std::vector<kreisslab::torus::Interval> disjoint_family(Rng& r, std::int64_t R, int L) {
  std::vector<kreisslab::torus::Interval> out;
  std::int64_t cursor = -R;
  for (int l = 0; l < L && cursor <= R; ++l) {
    const auto lo = r.integer(cursor, std::min(R, cursor + 6));
    const auto hi = r.integer(lo, std::min(R, lo + 8));
    out.push_back({lo, hi});
    cursor = hi + 1 + r.integer(0, 3);
  }
  return out;
}

inline double exponent(Rng& r) { return r.coin() ? r.real(1.0, 2.0) : r.real(2.0, 8.0); }

}  // namespace gen
