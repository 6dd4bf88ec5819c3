#include "kreisslab/torus.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "kreisslab/errors.hpp"
#include "kreisslab/fft.hpp"

namespace kreisslab::torus {

IntervalSet::IntervalSet(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {
  for (const auto& I : intervals_)
    if (I.lo > I.hi) throw DomainError(fmt::format("interval [{}, {}] has lo > hi", I.lo, I.hi));
  auto sorted = intervals_;
  std::sort(sorted.begin(), sorted.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].lo <= sorted[i - 1].hi) disjoint_ = false;
    if (sorted[i].lo != sorted[i - 1].hi + 1) consecutive_ = false;
  }
  consecutive_ = consecutive_ && disjoint_;
}

bool IntervalSet::covers(std::int64_t k) const noexcept {
  return std::any_of(intervals_.begin(), intervals_.end(),
                     [k](const Interval& I) { return I.contains(k); });
}

std::size_t nyquist_minimum(const FourierSeries& f) {
  return 2 * static_cast<std::size_t>(f.bandwidth()) + 1;
}

std::size_t default_grid_size(const FourierSeries& f) {
  const auto bw = static_cast<std::size_t>(f.bandwidth());
  return std::max(fft::next_pow2(4 * bw), fft::next_pow2(nyquist_minimum(f)));
}

GridSamples sample(const FourierSeries& f, std::size_t m) {
  return GridSamples{m, sample_on_grid(f, m)};
}

namespace {

void require_grid(const FourierSeries& f, std::size_t m) {
  const auto need = nyquist_minimum(f);
  if (m < need) throw GridTooSmallError(m, need);
}

void require_exponent(double p) {
  if (!(p >= 1.0)) throw DomainError(fmt::format("p = {} is below 1", p));
}

}  // namespace

double lp_norm(const GridSamples& g, double p) {
  require_exponent(p);
  if (g.values.empty()) throw DomainError("empty samples");
  double peak = 0.0;
  for (auto v : g.values) peak = std::max(peak, std::abs(v));
  if (std::isinf(p) || peak == 0.0) return peak;
  double s = 0.0;
  for (auto v : g.values) {
    const double r = std::abs(v) / peak;
    s += (p == 2.0) ? r * r : std::pow(r, p);
  }
  return peak * std::pow(s / static_cast<double>(g.values.size()), 1.0 / p);
}

double lp_norm(const FourierSeries& f, double p, std::size_t m) {
  require_exponent(p);
  require_grid(f, m);
  return lp_norm(sample(f, m), p);
}

double lp_norm(const FourierSeries& f, double p) { return lp_norm(f, p, default_grid_size(f)); }

double weak_l1_norm(const GridSamples& g) {
  if (g.values.empty()) throw DomainError("empty samples");
  std::vector<double> mags(g.values.size());
  std::transform(g.values.begin(), g.values.end(), mags.begin(),
                 [](cplx v) { return std::abs(v); });
  std::sort(mags.begin(), mags.end(), std::greater<>());
  const double m = static_cast<double>(mags.size());
  double best = 0.0;
  // At t = mags[i], every sample with magnitude >= t counts; with ties that
  // is the last index holding the same value.
  for (std::size_t i = 0; i < mags.size(); ++i) {
    if (i + 1 < mags.size() && mags[i + 1] == mags[i]) continue;
    best = std::max(best, mags[i] * static_cast<double>(i + 1) / m);
  }
  return best;
}

FourierSeries band_project(const FourierSeries& f, const Interval& I) {
  const auto lo = std::max(f.k_min(), I.lo);
  const auto hi = std::min(f.k_max(), I.hi);
  if (lo > hi) return FourierSeries(0, {cplx{0.0}}, f.tail_bound());
  std::vector<cplx> kept(f.coeffs().begin() + (lo - f.k_min()),
                         f.coeffs().begin() + (hi - f.k_min() + 1));
  return FourierSeries(lo, std::move(kept), f.tail_bound());
}

FourierSeries apply_multiplier(const FourierSeries& f, std::span<const double> a) {
  if (a.size() != f.size())
    throw DomainError(fmt::format("multiplier has {} entries, series has {}", a.size(), f.size()));
  std::vector<cplx> out(f.coeffs());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] *= a[j];
  return FourierSeries(f.k_min(), std::move(out), f.tail_bound());
}

FourierSeries apply_multiplier(const FourierSeries& f,
                               const std::function<double(std::int64_t)>& a) {
  std::vector<double> aligned(f.size());
  for (std::size_t j = 0; j < aligned.size(); ++j)
    aligned[j] = a(f.k_min() + static_cast<std::int64_t>(j));
  return apply_multiplier(f, aligned);
}

GridSamples square_function(const FourierSeries& f, const IntervalSet& S, std::size_t m) {
  if (S.empty()) throw DomainError("square function needs at least one interval");
  require_grid(f, m);
  std::vector<double> acc(m, 0.0);
  for (const auto& I : S.intervals()) {
    const auto piece = sample_on_grid(band_project(f, I), m);
    for (std::size_t j = 0; j < m; ++j) acc[j] += std::norm(piece[j]);
  }
  GridSamples out{m, std::vector<cplx>(m)};
  for (std::size_t j = 0; j < m; ++j) out.values[j] = std::sqrt(acc[j]);
  return out;
}

}  // namespace kreisslab::torus
