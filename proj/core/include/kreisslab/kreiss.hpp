#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kreisslab/fourier_series.hpp"
#include "kreisslab/norms.hpp"
#include "kreisslab/symbols.hpp"

namespace kreisslab::kreiss {

enum class KreissKind {
  kreiss,
  iterated_kreiss,
  strong_kreiss,
  absolute_strong_kreiss,
  window_power_sum,
};

std::string_view to_string(KreissKind kind);

struct KreissSample {
  double parameter = 0.0;
  double value = 0.0;
};

/**
 * Estimated constant of a Kreiss-type condition over a finite sampling grid.
 *
 * `constant` is the maximum sample. When `diverging` is set the grid only
 * shows that the condition fails (or that the constant exceeds what the grid
 * reaches), and the constant is a lower estimate.
 */
struct KreissReport {
  KreissKind kind = KreissKind::kreiss;
  double constant = 0.0;
  std::string grid;
  bool diverging = false;
  std::vector<KreissSample> samples;
  /// How operator norms were measured ("exact" or "upper bracket").
  std::string norm_method;
  /// Set when lambda hit the symbol's range during a resolvent estimate.
  std::optional<std::complex<double>> singular_at;

  bool constant_is_lower_estimate() const noexcept { return diverging; }
};

/// {1 + 2^{-j} : j = 0..12} U {2, 4, 8}, ascending.
std::vector<double> default_moduli();
/// 40 points, geometric from 1 to 100.
std::vector<double> default_radii();
inline constexpr int kDefaultPhases = 16;

/// Least-squares slope of log(value) against x over the samples whose
/// parameter lies in the top decade [max/10, max]; x is the parameter, or its
/// logarithm when `log_parameter` is set. Diverging iff slope > 0.02 or a
/// sample is infinite.
bool diverging_trend(const std::vector<KreissSample>& samples, bool log_parameter);
double trend_slope(const std::vector<KreissSample>& samples, bool log_parameter);

struct KreissOptions {
  int phases = kDefaultPhases;
  /// Relative accuracy requested from every adaptive symbol computation.
  double relative_tol = 1e-10;
  /// Propagate NearSingularityError instead of reporting a divergent sample.
  bool throw_on_singular = false;
  int threads = 1;
};

/// sup over sampled lambda (moduli x phases) and k <= k_max of
/// (|lambda| - 1)^k ||R(lambda, T)^k||_p.
KreissReport kreiss_constant(const symbols::ConvOperator& T, double p, int k_max,
                             const std::vector<double>& moduli, const KreissOptions& options = {});

/// max over r in radii and sampled phases of e^{-r} ||e^{r e^{i theta} T}||_p.
KreissReport strong_kreiss_constant(const symbols::ConvOperator& T, double p,
                                    const std::vector<double>& radii, int phases = kDefaultPhases,
                                    const KreissOptions& options = {});

/// Smallest n with P(Poisson(r) > n) < tail.
std::int64_t required_poisson_n_max(double r, double tail = 1e-12);

/// max over r of e^{-r} sum_{n <= n_max} r^n/n! ||T^n x||_p / ||x||_p.
KreissReport absolute_strong_kreiss_constant(const symbols::ConvOperator& T, double p,
                                             const FourierSeries& x,
                                             const std::vector<double>& radii,
                                             std::int64_t n_max);

/// ||T^n x||_p for each requested n (ascending, nonnegative), from exact
/// samples of q^n x on a grid wide enough to hold the largest orbit term.
std::vector<double> orbit_norms(const symbols::ConvOperator& T, const FourierSeries& x,
                                const std::vector<std::int64_t>& powers, double p);

/// (sum_{N - 2 sqrt N <= n <= N} ||T^n x||_p^p) / (N^{p/2} ||x||_p^p).
double window_power_sum_ratio(const symbols::ConvOperator& T, double p, const FourierSeries& x,
                              std::int64_t N);

/// window_power_sum_ratio over a list of N, as a report.
KreissReport window_power_sum_report(const symbols::ConvOperator& T, double p,
                                     const FourierSeries& x, const std::vector<std::int64_t>& Ns);

}  // namespace kreisslab::kreiss
