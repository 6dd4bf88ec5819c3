#include "kreisslab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "kreisslab/errors.hpp"

namespace kreisslab::bounds {
namespace {

constexpr double kIdentityTol = 1e-12;

double delta_of(double p) {
  const double p_prime = std::min(2.0, p);
  return 0.5 * (2.0 / p_prime - 1.0 / p);
}

void require_open_range(double p) {
  if (!(p > 1.0) || std::isinf(p)) throw DomainError(fmt::format("p = {} not in (1, inf)", p));
}

}  // namespace

ExponentRecord exponents(double p) {
  require_open_range(p);
  ExponentRecord e;
  e.p = p;
  e.p_prime = std::min(2.0, p);
  e.p_dprime = std::max(2.0, p);
  e.delta_p = delta_of(p);
  e.tau_p = std::abs(0.5 - 1.0 / p);
  e.q = p / (p - 1.0);
  e.p_bar = std::max(p, e.q);
  if (std::abs(e.delta_p + delta_of(e.q) - 0.5 - e.tau_p) > kIdentityTol)
    throw std::logic_error(fmt::format("delta/tau identity fails at p = {}", p));
  return e;
}

double bootstrap_step(double alpha, double p) {
  if (!(alpha >= 0.0)) throw DomainError(fmt::format("alpha = {} is negative", alpha));
  return alpha / 2.0 + exponents(p).delta_p;
}

int select_iterations(std::int64_t N) {
  if (N < 3) throw DomainError(fmt::format("N = {} below 3", N));
  const double ln = std::log(static_cast<double>(N));
  const double ratio = ln / std::log(ln);
  // log N / log log N >= e for N >= 3, so K >= 1 here.
  int K = 0;
  while (std::ldexp(1.0, K + 1) <= ratio) ++K;
  return K;
}

BootstrapState bootstrap_iterate(double alpha0, double p, double log_Ep, int K, double log_C,
                                 double kappa_slack) {
  if (K < 0) throw DomainError("K must be nonnegative");
  const auto e = exponents(p);
  BootstrapState s;
  s.K = K;
  s.alphas.push_back(alpha0);
  s.constants_log.push_back(log_C);
  for (int k = 0; k < K; ++k) {
    s.alphas.push_back(bootstrap_step(s.alphas.back(), p));
    s.constants_log.push_back(s.constants_log.back() + log_Ep);
  }
  s.bound_exponent = 2.0 * e.delta_p + (alpha0 - 2.0 * e.delta_p) * std::ldexp(1.0, -K);
  s.kappa = log_Ep / std::log(2.0) + kappa_slack;
  return s;
}

BootstrapState bootstrap_trajectory(double alpha0, double p, double log_Ep, std::int64_t N,
                                    double log_C, double kappa_slack) {
  return bootstrap_iterate(alpha0, p, log_Ep, select_iterations(N), log_C, kappa_slack);
}

double final_power_exponent(double p) {
  const auto e = exponents(p);
  const double value = e.delta_p + delta_of(e.q) - 0.5;
  const double dual_form = 1.0 / std::min(p, e.q) - 0.5;
  if (std::abs(value - e.tau_p) > kIdentityTol || std::abs(value - dual_form) > kIdentityTol)
    throw std::logic_error(fmt::format("final exponent identities fail at p = {}", p));
  return value;
}

double technical_ratio(std::int64_t N, std::int64_t K) {
  if (N < 1) throw DomainError("N must be positive");
  if (N + K < 0) throw DomainError("N + K must be nonnegative");
  const double n = static_cast<double>(N);
  const double m = static_cast<double>(N + K);
  return std::sqrt(n) * std::exp(m * std::log(n) - std::lgamma(m + 1.0) - n);
}

double poisson_window_weight(std::int64_t N, std::int64_t n) {
  if (N < 1) throw DomainError("N must be positive");
  if (n < 0) throw DomainError("n must be nonnegative");
  const double dN = static_cast<double>(N);
  const auto lo = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(static_cast<double>(n) - std::sqrt(dN))));
  double s = 0.0;
  for (auto k = lo; k <= n; ++k) {
    const double dk = static_cast<double>(k);
    s += std::exp(dk * std::log(dN) - std::lgamma(dk + 1.0) - dN);
  }
  return std::min(s, 1.0);
}

TechnicalReport technical_check(std::int64_t N) {
  if (N < 16) throw DomainError(fmt::format("N = {} below 16", N));
  const double root = std::sqrt(static_cast<double>(N));
  TechnicalReport r;
  r.N = N;
  r.K_min = static_cast<std::int64_t>(std::ceil(2.0 - 2.0 * root));
  r.min_ratio = std::numeric_limits<double>::infinity();
  r.max_ratio = 0.0;
  for (auto K = r.K_min; K <= 0; ++K) {
    const double v = technical_ratio(N, K);
    r.min_ratio = std::min(r.min_ratio, v);
    r.max_ratio = std::max(r.max_ratio, v);
  }
  r.ratio_at_zero = technical_ratio(N, 0);

  // e^N sum_n |S(n)^{-1} - S(n+1)^{-1}| with S(n) = sum_{window} N^k/k!,
  // i.e. the variation of 1/poisson_window_weight.
  const auto n_lo = static_cast<std::int64_t>(std::ceil(static_cast<double>(N) + 2.0 - 2.0 * root));
  double variation = 0.0;
  double prev = 1.0 / poisson_window_weight(N, n_lo);
  for (auto n = n_lo; n <= N; ++n) {
    const double next = 1.0 / poisson_window_weight(N, n + 1);
    variation += std::abs(prev - next);
    prev = next;
  }
  r.variation_sum_scaled = variation;
  return r;
}

}  // namespace kreisslab::bounds
