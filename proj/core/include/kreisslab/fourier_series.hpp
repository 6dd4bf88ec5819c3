#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace kreisslab {

using cplx = std::complex<double>;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/**
 * Finitely supported Laurent coefficients sum_j coeffs[j] gamma^{k_min + j}.
 *
 * Serves both as a function on the unit circle and as the symbol of a
 * convolution operator on l^p(Z). tail_bound is a bound on the l1 mass of
 * everything that was truncated away (0 for exact trigonometric polynomials).
 *
 * The constructor trims exact zeros at both ends; the zero series is stored
 * as a single zero coefficient at frequency 0.
 */
class FourierSeries {
 public:
  FourierSeries();
  FourierSeries(std::int64_t k_min, std::vector<cplx> coeffs, double tail_bound = 0.0);

  static FourierSeries monomial(std::int64_t k, cplx c = 1.0);
  static FourierSeries constant(cplx c) { return monomial(0, c); }

  std::int64_t k_min() const noexcept { return k_min_; }
  std::int64_t k_max() const noexcept {
    return k_min_ + static_cast<std::int64_t>(coeffs_.size()) - 1;
  }
  const std::vector<cplx>& coeffs() const noexcept { return coeffs_; }
  double tail_bound() const noexcept { return tail_bound_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  /// Coefficient at frequency k (zero outside the stored window).
  cplx operator[](std::int64_t k) const noexcept;

  /// max(|k_min|, |k_max|).
  std::int64_t bandwidth() const noexcept;
  /// k_max - k_min.
  std::int64_t span() const noexcept { return k_max() - k_min(); }
  bool is_zero() const noexcept;

  /// True iff no coefficient sits at a negative frequency.
  bool one_sided() const noexcept { return k_min_ >= 0 || is_zero(); }

  double l1_norm() const noexcept;
  double l2_norm() const noexcept;
  /// l^p norm of the coefficient sequence, p in [1, inf].
  double coefficient_lp_norm(double p) const;

  /// Direct evaluation of the stored (truncated) series at z.
  cplx evaluate(cplx z) const noexcept;

  FourierSeries with_tail(double tail_bound) const;

 private:
  std::int64_t k_min_ = 0;
  std::vector<cplx> coeffs_;
  double tail_bound_ = 0.0;
};

/// sup_k |a_k - b_k| over the union of supports.
double max_coefficient_difference(const FourierSeries& a, const FourierSeries& b);
/// sum_k |a_k - b_k|.
double l1_difference(const FourierSeries& a, const FourierSeries& b);

/// Samples f(e^{2 pi i j/m}), j = 0..m-1. Exact for any m >= 1: coefficients
/// are folded mod m before the transform.
std::vector<cplx> sample_on_grid(const FourierSeries& f, std::size_t m);

/// Coefficients recovered from m samples, assigned to frequencies
/// [k_lo, k_lo + m). Aliasing folds everything outside that window in.
FourierSeries coefficients_from_samples(std::vector<cplx> samples, std::int64_t k_lo,
                                        double tail_bound = 0.0);

/// Product of two series (Cauchy product of coefficients). Tail bounds
/// propagate as |a|t_b + |b|t_a + t_a t_b.
FourierSeries multiply(const FourierSeries& a, const FourierSeries& b);

/// Full linear convolution of two coefficient vectors; FFT above a size cutoff.
std::vector<cplx> convolve(std::span<const cplx> a, std::span<const cplx> b);

/// Drops coefficients from both ends while the dropped l1 mass stays within
/// budget; the dropped mass is added to the tail bound.
FourierSeries trim_to_budget(const FourierSeries& f, double budget);

/// l^p norm of a finite sequence, p in [1, inf].
double sequence_lp_norm(std::span<const cplx> x, double p);

}  // namespace kreisslab
