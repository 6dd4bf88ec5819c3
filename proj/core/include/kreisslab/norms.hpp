#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "kreisslab/fourier_series.hpp"
#include "kreisslab/symbols.hpp"

namespace kreisslab::norms {

/// Certified lower/upper bounds on ||T||_{l^p -> l^p}.
struct NormBracket {
  double lower = 0.0;
  double upper = kInfinity;
  std::string lower_method;
  std::string upper_method;
  double p = 2.0;

  double geometric_mean() const;
  bool exact() const noexcept { return lower_method == "exact" && upper_method == "exact"; }
};

/// Builds a bracket and enforces lower <= upper. A lower bound exceeding the
/// upper one by more than rounding is a logic error and throws.
NormBracket make_bracket(double lower, double upper, std::string lower_method,
                         std::string upper_method, double p);

/// Linear map C^cols -> C^rows given by its action and the action of its
/// adjoint. `real` marks maps with real entries (searches then stay real).
struct LinearMap {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::function<void(std::span<const cplx>, std::span<cplx>)> apply;
  std::function<void(std::span<const cplx>, std::span<cplx>)> apply_adjoint;
  bool real = false;
};

/// Row-major real matrix.
LinearMap dense_matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

/// x in C^window (coordinates [0, window)) -> full convolution c * x.
LinearMap truncated_convolution(const FourierSeries& symbol, std::size_t window);

struct HighamOptions {
  int restarts = 8;
  std::uint64_t seed = 0;
  int max_iterations = 200;
  double relative_gain = 1e-8;
  /// Extra deterministic starting vectors tried before the random ones.
  std::vector<std::vector<cplx>> warm_starts;
};

/// Best ||A x||_p / ||x||_p reached by the dual power iteration from seeded
/// random starts. Always a valid lower bound on ||A||_p.
double higham_lower(const LinearMap& A, double p, const HighamOptions& options = {});

/// Same, on the truncation of T to inputs supported in [0, window). The
/// symbol's tail bound is subtracted, so the value also bounds ||T|| from below.
double higham_lower(const symbols::ConvOperator& T, double p, std::size_t window, int restarts,
                    std::uint64_t seed);

/// Interpolation bound from the exact p = 1, 2, inf norms.
double riesz_thorin_upper(double n1, double n2, double ninf, double p);

/// ||T e_0||_p; for p > 2 also ||T^* e_0||_q with q = p/(p-1), which bounds
/// ||T^*||_q = ||T||_p. Tail bound subtracted.
double test_vector_lower(const symbols::ConvOperator& T, double p);

/// sup over the unit circle of |q|, from a grid search refined locally.
double symbol_sup(const symbols::ConvOperator& T);

struct BracketOptions {
  bool use_higham = true;
  int restarts = 8;
  std::uint64_t seed = 0;
  std::size_t window_padding = 16;
  /// Skip the power iteration when the truncation window would exceed this.
  std::size_t max_window = std::size_t{1} << 18;
};

/// p in {1, inf}: l1 norm of coefficients; p = 2: sup |q|; otherwise
/// test-vector / power-iteration lower bound and interpolation upper bound.
NormBracket conv_norm_bracket(const symbols::ConvOperator& T, double p,
                              const BracketOptions& options = {});

}  // namespace kreisslab::norms
