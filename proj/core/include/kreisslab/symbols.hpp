#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "kreisslab/fourier_series.hpp"

namespace kreisslab::symbols {

/// Exact evaluation of a symbol at a point of the unit circle.
using SymbolFunction = std::function<cplx(cplx)>;

/**
 * Convolution operator (T x)_n = sum_k c_k x_{n-k} on l^p(Z), identified with
 * its symbol q(gamma) = sum_k c_k gamma^k.
 *
 * `symbol` holds the (possibly truncated) coefficients with their tail bound.
 * When the symbol has a closed form (Mobius factors and anything derived from
 * them here), `closed_form` evaluates it exactly, and grid samples are taken
 * from it instead of from the truncated coefficients.
 */
struct ConvOperator {
  FourierSeries symbol;
  std::string descriptor;
  SymbolFunction closed_form;
  /// Relative rounding error of closed_form samples, in units of eps.
  double rounding_gain = 1.0;

  bool has_closed_form() const noexcept { return static_cast<bool>(closed_form); }
  /// q at an arbitrary point of the unit circle.
  cplx evaluate(cplx gamma) const;
  /// q(e^{2 pi i j/m}), j = 0..m-1.
  std::vector<cplx> samples(std::size_t m) const;
};

/// Largest grid the adaptive FFT refinement will try before giving up.
inline constexpr std::size_t kDefaultGridCeiling = std::size_t{1} << 23;

/// The operator with the given symbol coefficients (no closed form).
ConvOperator from_symbol(FourierSeries symbol, std::string descriptor);
/// c times the identity.
ConvOperator scalar(cplx c);
/// c S^k, S the right shift.
ConvOperator shift(std::int64_t k = 1, cplx c = 1.0);

/// q_a(S) with q_a(z) = (z - a)/(1 - a z): c_0 = -a, c_k = (1 - a^2) a^{k-1}.
/// The series is cut where the discarded l1 mass (1 + a) a^K drops below tol.
/// a = 0 gives the right shift.
ConvOperator mobius_symbol(double a, double tol);

/// T^N via samplewise N-th powers and grid doubling until the coefficient
/// vectors agree in l1 to within tol.
ConvOperator symbol_pow(const ConvOperator& T, std::int64_t N, double tol,
                        std::size_t grid_ceiling = kDefaultGridCeiling);

/// e^{-|z|} e^{z T}: symbol exp(z q - |z|), damping applied samplewise.
ConvOperator symbol_exp_scaled(const ConvOperator& T, cplx z, double tol,
                               std::size_t grid_ceiling = kDefaultGridCeiling);

struct ResolventOptions {
  /// Required gap |lambda| - 1 > margin.
  double margin = 1e-12;
  /// Smallest admissible min_j |lambda - q(gamma_j)|.
  double singularity_floor = 1e-10;
  std::size_t grid_ceiling = kDefaultGridCeiling;
};

/// (lambda - T)^{-k}: symbol (lambda - q)^{-k}.
ConvOperator resolvent_symbol(const ConvOperator& T, cplx lambda, int k, double tol,
                              const ResolventOptions& options = {});

}  // namespace kreisslab::symbols
