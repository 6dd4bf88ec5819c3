#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "kreisslab/fourier_series.hpp"

namespace kreisslab::torus {

/// Values of a function at gamma_j = e^{2 pi i j/m}, j = 0..m-1.
struct GridSamples {
  std::size_t m = 0;
  std::vector<cplx> values;
};

/// Closed integer interval [lo, hi].
struct Interval {
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  bool contains(std::int64_t k) const noexcept { return lo <= k && k <= hi; }
  std::int64_t length() const noexcept { return hi - lo + 1; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite family of integer intervals; flags are derived at construction.
class IntervalSet {
 public:
  explicit IntervalSet(std::vector<Interval> intervals);

  const std::vector<Interval>& intervals() const noexcept { return intervals_; }
  std::size_t size() const noexcept { return intervals_.size(); }
  bool empty() const noexcept { return intervals_.empty(); }
  bool disjoint() const noexcept { return disjoint_; }
  /// Disjoint and, once sorted, each interval starts right after the previous one ends.
  bool consecutive() const noexcept { return consecutive_; }
  bool covers(std::int64_t k) const noexcept;

 private:
  std::vector<Interval> intervals_;
  bool disjoint_ = true;
  bool consecutive_ = true;
};

/// Smallest grid admitted by lp_norm / square_function: 2 * bandwidth + 1.
std::size_t nyquist_minimum(const FourierSeries& f);

/// 4 * bandwidth rounded up to a power of two (at least the Nyquist minimum).
std::size_t default_grid_size(const FourierSeries& f);

GridSamples sample(const FourierSeries& f, std::size_t m);

/// (m^{-1} sum_j |f(gamma_j)|^p)^{1/p}, or max_j |f(gamma_j)| for p = inf.
double lp_norm(const FourierSeries& f, double p, std::size_t m);
double lp_norm(const FourierSeries& f, double p);
double lp_norm(const GridSamples& g, double p);

/// sup_t t * |{j : |g_j| >= t}| / m, swept over the sample magnitudes.
double weak_l1_norm(const GridSamples& g);

/// Keeps the coefficients with frequency in I; tail bound unchanged.
FourierSeries band_project(const FourierSeries& f, const Interval& I);

/// Coefficientwise a_n c_n; `a` is aligned with f.coeffs() (a[j] multiplies
/// frequency f.k_min() + j).
FourierSeries apply_multiplier(const FourierSeries& f, std::span<const double> a);
FourierSeries apply_multiplier(const FourierSeries& f,
                               const std::function<double(std::int64_t)>& a);

/// Pointwise (sum_l |M_{I_l} f|^2)^{1/2}. Intervals may overlap or repeat.
GridSamples square_function(const FourierSeries& f, const IntervalSet& S, std::size_t m);

}  // namespace kreisslab::torus
