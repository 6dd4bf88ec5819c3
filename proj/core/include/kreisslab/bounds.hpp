#pragma once

#include <cstdint>
#include <vector>

namespace kreisslab::bounds {

/// Exponents attached to 1 < p < inf.
struct ExponentRecord {
  double p = 2.0;
  double p_prime = 2.0;   // min(2, p)
  double p_dprime = 2.0;  // max(2, p)
  double delta_p = 0.25;  // (2/p' - 1/p)/2
  double tau_p = 0.0;     // |1/2 - 1/p|
  double q = 2.0;         // p/(p-1)
  double p_bar = 2.0;     // max(p, q)
};

/// Throws DomainError unless 1 < p < inf. Verifies
/// delta_p + delta_q - 1/2 = tau_p to 1e-12.
ExponentRecord exponents(double p);

/// alpha/2 + delta_p: one round of the square-root bootstrap.
double bootstrap_step(double alpha, double p);

struct BootstrapState {
  std::vector<double> alphas;         // alpha_0 .. alpha_K
  std::vector<double> constants_log;  // log C + k log E_p, k = 0..K
  int K = 0;
  /// 2 delta_p + (alpha_0 - 2 delta_p) 2^{-K}
  double bound_exponent = 0.0;
  /// log E_p / log 2 + slack
  double kappa = 0.0;
};

/// K >= 0 with 2^K <= log N / log log N < 2^{K+1}; requires N >= 3.
int select_iterations(std::int64_t N);

/// Iterates bootstrap_step K times from alpha0, accumulating log E_p per step.
BootstrapState bootstrap_iterate(double alpha0, double p, double log_Ep, int K,
                                 double log_C = 0.0, double kappa_slack = 0.0);

/// Same, with K chosen from N by select_iterations.
BootstrapState bootstrap_trajectory(double alpha0, double p, double log_Ep, std::int64_t N,
                                    double log_C = 0.0, double kappa_slack = 0.0);

/// delta_p + delta_q - 1/2, checked against tau_p and 1/min(p,q) - 1/2.
double final_power_exponent(double p);

struct TechnicalReport {
  std::int64_t N = 0;
  std::int64_t K_min = 0;  // ceil(2 - 2 sqrt N)
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double ratio_at_zero = 0.0;
  double variation_sum_scaled = 0.0;
};

/// sqrt(N) N^{N+K} e^{-N} / (N+K)!, evaluated in log space.
double technical_ratio(std::int64_t N, std::int64_t K);

/// e^{-N} sum_{max(0, ceil(n - sqrt N)) <= k <= n} N^k / k!.
double poisson_window_weight(std::int64_t N, std::int64_t n);

/// Ratios over K in [2 - 2 sqrt N, 0] and the total variation of the inverse
/// window weights over n in [N + 2 - 2 sqrt N, N]. Requires N >= 16.
TechnicalReport technical_check(std::int64_t N);

}  // namespace kreisslab::bounds
