#include "kreisslab/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "kreisslab/errors.hpp"
#include "kreisslab/fft.hpp"

namespace kreisslab::symbols {
namespace {

cplx ipow(cplx base, std::int64_t n) {
  cplx result = 1.0;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

cplx unit_root(std::size_t j, std::size_t m) {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m));
}

struct Transform {
  std::function<cplx(cplx)> map;
  std::function<std::int64_t(std::size_t)> window_lo;
  std::size_t m0 = 1;
  double tol = 1e-12;
  std::size_t ceiling = kDefaultGridCeiling;
  std::string what;
  // Rough factor by which the map amplifies relative rounding errors.
  double amplification = 1.0;
  // Called on the raw symbol samples of every grid (singularity screening).
  std::function<void(const std::vector<cplx>&)> screen;
};

struct GridCoefficients {
  FourierSeries series;
  // l1 size of the rounding noise expected in `series`.
  double noise = 0.0;
};

GridCoefficients coefficients_on_grid(const ConvOperator& T, const Transform& t, std::size_t m) {
  auto values = T.samples(m);
  if (t.screen) t.screen(values);
  double peak = 0.0;
  for (auto& v : values) {
    v = t.map(v);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw ConvergenceError(t.what + ": non-finite symbol samples", kInfinity, kInfinity, m);
    peak = std::max(peak, std::abs(v));
  }
  // Sample errors of relative size eps * amplification spread over m
  // coefficients after the transform, about sqrt(m) times that in l1.
  const double noise = 2.0 * std::numeric_limits<double>::epsilon() * std::sqrt(static_cast<double>(m)) *
                       (1.0 + t.amplification * T.rounding_gain) * peak;
  return {coefficients_from_samples(std::move(values), t.window_lo(m)), noise};
}

// Doubles the grid until two successive (trimmed) coefficient vectors agree
// in l1 to within tol. The returned tail bound is that discrepancy plus the
// trimmed mass plus `inherited_tail`.
FourierSeries adaptive_coefficients(const ConvOperator& T, const Transform& t,
                                    double inherited_tail) {
  if (!(t.tol > 0.0)) throw DomainError("tolerance must be positive");
  std::size_t m = std::max<std::size_t>(fft::next_pow2(t.m0), 2);
  double previous_disc = kInfinity;
  double last_disc = kInfinity;
  if (2 * m > t.ceiling)
    throw ConvergenceError(t.what + ": starting grid exceeds ceiling", previous_disc, last_disc, m);
  // Tolerances below the rounding noise of the grid are unattainable; the
  // effective tolerance is raised to that noise level.
  auto next = [&](std::size_t size) {
    auto g = coefficients_on_grid(T, t, size);
    const double eff = std::max(t.tol, g.noise);
    return std::pair{trim_to_budget(g.series, eff / 4.0), eff};
  };
  FourierSeries prev = next(m).first;
  while (2 * m <= t.ceiling) {
    m *= 2;
    auto [cur, eff] = next(m);
    // Compare the kept coefficients only; trimmed mass is already in the tails.
    const double disc = l1_difference(prev.with_tail(0.0), cur.with_tail(0.0));
    previous_disc = last_disc;
    last_disc = disc;
    if (disc < eff) return cur.with_tail(cur.tail_bound() + disc + inherited_tail);
    prev = std::move(cur);
  }
  throw ConvergenceError(t.what + ": grid ceiling reached", previous_disc, last_disc, m);
}

std::size_t grid_start(double effective_power, std::int64_t span) {
  const double n = 8.0 * (effective_power * static_cast<double>(std::max<std::int64_t>(span, 0)) + 64.0);
  return fft::next_pow2(static_cast<std::size_t>(std::ceil(n)));
}

std::string format_complex(cplx z) {
  if (z.imag() == 0.0) return fmt::format("{}", z.real());
  return fmt::format("{}{:+}i", z.real(), z.imag());
}

}  // namespace

cplx ConvOperator::evaluate(cplx gamma) const {
  return closed_form ? closed_form(gamma) : symbol.evaluate(gamma);
}

std::vector<cplx> ConvOperator::samples(std::size_t m) const {
  if (!closed_form) return sample_on_grid(symbol, m);
  std::vector<cplx> out(m);
  for (std::size_t j = 0; j < m; ++j) out[j] = closed_form(unit_root(j, m));
  return out;
}

ConvOperator from_symbol(FourierSeries symbol, std::string descriptor) {
  return ConvOperator{std::move(symbol), std::move(descriptor), {}};
}

ConvOperator scalar(cplx c) {
  return from_symbol(FourierSeries::constant(c), fmt::format("{} I", format_complex(c)));
}

ConvOperator shift(std::int64_t k, cplx c) {
  return from_symbol(FourierSeries::monomial(k, c), fmt::format("{} S^{}", format_complex(c), k));
}

ConvOperator mobius_symbol(double a, double tol) {
  if (!(a >= 0.0 && a < 1.0)) throw DomainError(fmt::format("mobius parameter a = {} not in [0, 1)", a));
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  std::vector<cplx> c{cplx{-a}};
  double tail = 0.0;
  if (a == 0.0) {
    c.emplace_back(1.0);
  } else {
    // Discarded mass after keeping c_0..c_K is sum_{k>K} (1-a^2) a^{k-1} = (1+a) a^K.
    double power = 1.0;  // a^{k-1}
    for (std::int64_t k = 1;; ++k) {
      c.emplace_back((1.0 - a * a) * power);
      power *= a;
      tail = (1.0 + a) * power;
      if (tail <= tol) break;
    }
  }
  ConvOperator T{FourierSeries(0, std::move(c), tail), fmt::format("q_a(S), a={}", a), {}};
  T.closed_form = [a](cplx z) { return (z - a) / (1.0 - a * z); };
  return T;
}

ConvOperator symbol_pow(const ConvOperator& T, std::int64_t N, double tol, std::size_t grid_ceiling) {
  if (N < 1) throw DomainError(fmt::format("power N = {} must be positive", N));
  const auto& q = T.symbol;
  double inherited = 0.0;
  if (!T.has_closed_form() && q.tail_bound() > 0.0) {
    // ||(q + e)^N - q^N||_1 <= (A + t)^N - A^N in the Wiener algebra.
    const double A = q.l1_norm();
    const double t = q.tail_bound();
    const double n = static_cast<double>(N);
    inherited = A > 0.0 ? std::exp(n * std::log(A)) * std::expm1(n * std::log1p(t / A))
                        : std::pow(t, n);
  }
  Transform tr;
  tr.map = [N](cplx v) { return ipow(v, N); };
  const auto lo = N * q.k_min();
  tr.window_lo = [lo](std::size_t) { return lo; };
  // A closed form's coefficients are not tied to the truncation length, so
  // start small and let the doubling find the support.
  tr.m0 = grid_start(static_cast<double>(N), T.has_closed_form() ? 1 : q.span());
  tr.tol = tol;
  tr.ceiling = grid_ceiling;
  tr.what = "symbol_pow";
  tr.amplification = static_cast<double>(N);
  ConvOperator out{adaptive_coefficients(T, tr, inherited),
                   fmt::format("({})^{}", T.descriptor, N), {}};
  if (T.has_closed_form()) {
    out.closed_form = [f = T.closed_form, N](cplx z) { return ipow(f(z), N); };
    out.rounding_gain = T.rounding_gain * tr.amplification;
  }
  return out;
}

ConvOperator symbol_exp_scaled(const ConvOperator& T, cplx z, double tol, std::size_t grid_ceiling) {
  const auto& q = T.symbol;
  const double r = std::abs(z);
  double inherited = 0.0;
  if (!T.has_closed_form() && q.tail_bound() > 0.0) {
    // e^{-r} (e^{r(A+t)} - e^{rA})
    inherited = std::exp(r * (q.l1_norm() - 1.0)) * std::expm1(r * q.tail_bound());
  }
  Transform tr;
  tr.map = [z, r](cplx v) { return std::exp(z * v - r); };
  const auto kmin = q.k_min();
  const auto kmax = q.k_max();
  tr.window_lo = [kmin, kmax](std::size_t m) -> std::int64_t {
    const auto mm = static_cast<std::int64_t>(m);
    if (kmin >= 0) return 0;
    if (kmax <= 0) return -(mm - 1);
    return -mm / 2;
  };
  tr.m0 = grid_start(std::ceil(r), q.span());
  tr.tol = tol;
  tr.ceiling = grid_ceiling;
  tr.what = "symbol_exp_scaled";
  tr.amplification = 1.0 + r * std::max(1.0, q.l1_norm());
  ConvOperator out{adaptive_coefficients(T, tr, inherited),
                   fmt::format("exp({} ({}) - |z|)", format_complex(z), T.descriptor), {}};
  if (T.has_closed_form()) {
    out.closed_form = [f = T.closed_form, z, r](cplx w) { return std::exp(z * f(w) - r); };
    out.rounding_gain = T.rounding_gain * tr.amplification;
  }
  return out;
}

ConvOperator resolvent_symbol(const ConvOperator& T, cplx lambda, int k, double tol,
                              const ResolventOptions& options) {
  if (k < 1) throw DomainError(fmt::format("resolvent power k = {} must be positive", k));
  if (!(std::abs(lambda) > 1.0 + options.margin))
    throw DomainError(fmt::format("|lambda| = {} not above 1 + margin", std::abs(lambda)));
  const auto& q = T.symbol;

  Transform tr;
  tr.map = [lambda, k](cplx v) { return ipow(1.0 / (lambda - v), k); };
  const auto kmin = q.k_min();
  tr.window_lo = [kmin](std::size_t m) -> std::int64_t {
    return kmin >= 0 ? 0 : -static_cast<std::int64_t>(m) / 2;
  };
  // Coefficients decay like |lambda|^{-j} for the shift; size the first grid
  // from the decay length needed to push the tail below tol.
  const double gap = std::abs(lambda) - 1.0;
  const double decay_len = (std::log(1.0 / tol) + k * std::log1p(1.0 / gap)) / std::log1p(gap);
  tr.m0 = std::max(grid_start(1.0, q.span()),
                   fft::next_pow2(static_cast<std::size_t>(std::clamp(decay_len, 0.0, 1e9))));
  tr.tol = tol;
  tr.ceiling = options.grid_ceiling;
  tr.what = "resolvent_symbol";
  tr.amplification = k * (1.0 + 1.0 / gap);
  const double floor = options.singularity_floor;
  tr.screen = [lambda, floor](const std::vector<cplx>& values) {
    double closest = kInfinity;
    for (auto v : values) closest = std::min(closest, std::abs(lambda - v));
    if (closest < floor) throw NearSingularityError(lambda, closest);
  };

  double inherited = 0.0;
  if (!T.has_closed_form() && q.tail_bound() > 0.0) {
    // With R = ||(lambda - q)^{-1}||_1 and tail t: ||(lambda - q - e)^{-1}|| <= R/(1 - R t) =: R',
    // and the k-th powers differ by at most k R'^k R t.
    Transform first = tr;
    first.map = [lambda](cplx v) { return 1.0 / (lambda - v); };
    const double R = adaptive_coefficients(T, first, 0.0).l1_norm();
    const double t = q.tail_bound();
    const double Rp = (R * t < 1.0) ? R / (1.0 - R * t) : kInfinity;
    inherited = k * std::pow(Rp, k) * R * t;
  }
  ConvOperator out{adaptive_coefficients(T, tr, inherited),
                   fmt::format("({} - {})^-{}", format_complex(lambda), T.descriptor, k), {}};
  if (T.has_closed_form()) {
    out.closed_form = [f = T.closed_form, lambda, k](cplx w) { return ipow(1.0 / (lambda - f(w)), k); };
    out.rounding_gain = T.rounding_gain * tr.amplification;
  }
  return out;
}

}  // namespace kreisslab::symbols
