#include "kreisslab/fourier_series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <fmt/format.h>

#include "kreisslab/errors.hpp"
#include "kreisslab/fft.hpp"

namespace kreisslab {

GridTooSmallError::GridTooSmallError(std::size_t given, std::size_t required)
    : DomainError(fmt::format("grid size {} below required minimum {}", given, required)),
      given_(given),
      required_(required) {}

ConvergenceError::ConvergenceError(const std::string& what, double previous_discrepancy,
                                   double last_discrepancy, std::size_t last_grid)
    : std::runtime_error(fmt::format("{} (l1 discrepancies {:.3e}, {:.3e} at m = {})", what,
                                     previous_discrepancy, last_discrepancy, last_grid)),
      previous_(previous_discrepancy),
      last_(last_discrepancy),
      grid_(last_grid) {}

NearSingularityError::NearSingularityError(std::complex<double> lambda, double min_distance)
    : std::runtime_error(fmt::format("lambda = {}{:+}i is within {:.3e} of the symbol's range",
                                     lambda.real(), lambda.imag(), min_distance)),
      lambda_(lambda),
      min_distance_(min_distance) {}

TailCriterionError::TailCriterionError(std::size_t given, std::size_t required)
    : DomainError(fmt::format("n_max = {} leaves Poisson tail above 1e-12; need n_max >= {}",
                              given, required)),
      required_(required) {}

FourierSeries::FourierSeries() : coeffs_{cplx{0.0}} {}

FourierSeries::FourierSeries(std::int64_t k_min, std::vector<cplx> coeffs, double tail_bound)
    : k_min_(k_min), coeffs_(std::move(coeffs)), tail_bound_(tail_bound) {
  if (!(tail_bound_ >= 0.0)) throw DomainError("tail_bound must be nonnegative");
  auto first = std::find_if(coeffs_.begin(), coeffs_.end(), [](cplx c) { return c != 0.0; });
  if (first == coeffs_.end()) {
    k_min_ = 0;
    coeffs_.assign(1, cplx{0.0});
    return;
  }
  auto last = std::find_if(coeffs_.rbegin(), coeffs_.rend(), [](cplx c) { return c != 0.0; });
  const auto lead = first - coeffs_.begin();
  coeffs_.erase(last.base(), coeffs_.end());
  coeffs_.erase(coeffs_.begin(), coeffs_.begin() + lead);
  k_min_ += lead;
}

FourierSeries FourierSeries::monomial(std::int64_t k, cplx c) {
  return FourierSeries(k, std::vector<cplx>{c});
}

cplx FourierSeries::operator[](std::int64_t k) const noexcept {
  if (k < k_min_ || k > k_max()) return 0.0;
  return coeffs_[static_cast<std::size_t>(k - k_min_)];
}

std::int64_t FourierSeries::bandwidth() const noexcept {
  if (is_zero()) return 0;
  return std::max(std::abs(k_min_), std::abs(k_max()));
}

bool FourierSeries::is_zero() const noexcept {
  return coeffs_.size() == 1 && coeffs_[0] == 0.0;
}

double FourierSeries::l1_norm() const noexcept {
  double s = 0.0;
  for (auto c : coeffs_) s += std::abs(c);
  return s;
}

double FourierSeries::l2_norm() const noexcept { return sequence_lp_norm(coeffs_, 2.0); }

double FourierSeries::coefficient_lp_norm(double p) const { return sequence_lp_norm(coeffs_, p); }

cplx FourierSeries::evaluate(cplx z) const noexcept {
  cplx acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  if (k_min_ != 0) acc *= std::pow(z, static_cast<double>(k_min_));
  return acc;
}

FourierSeries FourierSeries::with_tail(double tail_bound) const {
  FourierSeries out = *this;
  if (!(tail_bound >= 0.0)) throw DomainError("tail_bound must be nonnegative");
  out.tail_bound_ = tail_bound;
  return out;
}

double max_coefficient_difference(const FourierSeries& a, const FourierSeries& b) {
  const auto lo = std::min(a.k_min(), b.k_min());
  const auto hi = std::max(a.k_max(), b.k_max());
  double worst = 0.0;
  for (auto k = lo; k <= hi; ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
  return worst;
}

double l1_difference(const FourierSeries& a, const FourierSeries& b) {
  const auto lo = std::min(a.k_min(), b.k_min());
  const auto hi = std::max(a.k_max(), b.k_max());
  double s = 0.0;
  for (auto k = lo; k <= hi; ++k) s += std::abs(a[k] - b[k]);
  return s;
}

namespace {

std::size_t mod_index(std::int64_t k, std::size_t m) {
  const auto mm = static_cast<std::int64_t>(m);
  auto r = k % mm;
  if (r < 0) r += mm;
  return static_cast<std::size_t>(r);
}

}  // namespace

std::vector<cplx> sample_on_grid(const FourierSeries& f, std::size_t m) {
  if (m == 0) throw DomainError("grid size must be positive");
  std::vector<cplx> data(m, cplx{0.0});
  const auto& c = f.coeffs();
  for (std::size_t j = 0; j < c.size(); ++j)
    data[mod_index(f.k_min() + static_cast<std::int64_t>(j), m)] += c[j];
  fft::to_samples(data);
  return data;
}

FourierSeries coefficients_from_samples(std::vector<cplx> samples, std::int64_t k_lo,
                                        double tail_bound) {
  const auto m = samples.size();
  if (m == 0) throw DomainError("no samples");
  fft::to_coefficients(samples);
  std::vector<cplx> window(m);
  for (std::size_t j = 0; j < m; ++j)
    window[j] = samples[mod_index(k_lo + static_cast<std::int64_t>(j), m)];
  return FourierSeries(k_lo, std::move(window), tail_bound);
}

std::vector<cplx> convolve(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.empty() || b.empty()) return {};
  const auto n = a.size() + b.size() - 1;
  std::vector<cplx> out(n, cplx{0.0});
  if (std::min(a.size(), b.size()) <= 64) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0.0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
  }
  const auto m = fft::next_pow2(n);
  std::vector<cplx> fa(m, cplx{0.0}), fb(m, cplx{0.0});
  std::copy(a.begin(), a.end(), fa.begin());
  std::copy(b.begin(), b.end(), fb.begin());
  fft::to_samples(fa);
  fft::to_samples(fb);
  for (std::size_t j = 0; j < m; ++j) fa[j] *= fb[j];
  fft::to_coefficients(fa);
  std::copy(fa.begin(), fa.begin() + static_cast<std::ptrdiff_t>(n), out.begin());
  return out;
}

FourierSeries multiply(const FourierSeries& a, const FourierSeries& b) {
  auto prod = convolve(a.coeffs(), b.coeffs());
  const double ta = a.tail_bound();
  const double tb = b.tail_bound();
  const double tail = a.l1_norm() * tb + b.l1_norm() * ta + ta * tb;
  return FourierSeries(a.k_min() + b.k_min(), std::move(prod), tail);
}

FourierSeries trim_to_budget(const FourierSeries& f, double budget) {
  const auto& c = f.coeffs();
  std::size_t lo = 0;
  std::size_t hi = c.size();
  double dropped = 0.0;
  // Peel the smaller of the two ends first so the budget goes to the thinner tail.
  while (hi - lo > 1) {
    const double left = std::abs(c[lo]);
    const double right = std::abs(c[hi - 1]);
    const double take = std::min(left, right);
    if (dropped + take > budget) break;
    dropped += take;
    if (left <= right)
      ++lo;
    else
      --hi;
  }
  std::vector<cplx> kept(c.begin() + static_cast<std::ptrdiff_t>(lo),
                         c.begin() + static_cast<std::ptrdiff_t>(hi));
  return FourierSeries(f.k_min() + static_cast<std::int64_t>(lo), std::move(kept),
                       f.tail_bound() + dropped);
}

double sequence_lp_norm(std::span<const cplx> x, double p) {
  if (!(p >= 1.0)) throw DomainError(fmt::format("p = {} is below 1", p));
  double peak = 0.0;
  for (auto v : x) peak = std::max(peak, std::abs(v));
  if (std::isinf(p) || peak == 0.0) return peak;
  if (p == 1.0) {
    double s = 0.0;
    for (auto v : x) s += std::abs(v);
    return s;
  }
  if (p == 2.0) {
    double s = 0.0;
    for (auto v : x) {
      const double r = std::abs(v) / peak;
      s += r * r;
    }
    return peak * std::sqrt(s);
  }
  double s = 0.0;
  for (auto v : x) {
    const double r = std::abs(v) / peak;
    if (r > 0.0) s += std::pow(r, p);
  }
  return peak * std::pow(s, 1.0 / p);
}

}  // namespace kreisslab
