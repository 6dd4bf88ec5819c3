#include "kreisslab/kreiss.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "kreisslab/errors.hpp"
#include "kreisslab/fft.hpp"
#include "kreisslab/parallel.hpp"

namespace kreisslab::kreiss {

using symbols::ConvOperator;

std::string_view to_string(KreissKind kind) {
  switch (kind) {
    case KreissKind::kreiss: return "kreiss";
    case KreissKind::iterated_kreiss: return "iterated_kreiss";
    case KreissKind::strong_kreiss: return "strong_kreiss";
    case KreissKind::absolute_strong_kreiss: return "absolute_strong_kreiss";
    case KreissKind::window_power_sum: return "window_power_sum";
  }
  return "unknown";
}

std::vector<double> default_moduli() {
  std::vector<double> out;
  for (int j = 12; j >= 0; --j) out.push_back(1.0 + std::ldexp(1.0, -j));
  out.insert(out.end(), {4.0, 8.0});
  // 1 + 2^0 = 2 is already present.
  return out;
}

std::vector<double> default_radii() {
  std::vector<double> out(40);
  for (int i = 0; i < 40; ++i) out[i] = std::pow(100.0, static_cast<double>(i) / 39.0);
  out.back() = 100.0;
  return out;
}

namespace {
constexpr double kSlopeThreshold = 0.02;
}  // namespace

double trend_slope(const std::vector<KreissSample>& samples, bool log_parameter) {
  double top = 0.0;
  for (const auto& s : samples) top = std::max(top, s.parameter);
  std::vector<std::pair<double, double>> pts;
  for (const auto& s : samples) {
    if (s.parameter < top / 10.0 || !(s.value > 0.0) || std::isinf(s.value)) continue;
    pts.emplace_back(log_parameter ? std::log(s.parameter) : s.parameter, std::log(s.value));
  }
  if (pts.size() < 2) return 0.0;
  double mx = 0.0, my = 0.0;
  for (auto [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxy = 0.0, sxx = 0.0;
  for (auto [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

bool diverging_trend(const std::vector<KreissSample>& samples, bool log_parameter) {
  for (const auto& s : samples)
    if (std::isinf(s.value)) return true;
  return trend_slope(samples, log_parameter) > kSlopeThreshold;
}

namespace {

void require_exponent(double p) {
  if (!(p >= 1.0)) throw DomainError(fmt::format("p = {} is below 1", p));
}

double operator_norm(const ConvOperator& R, double p) {
  const auto& c = R.symbol;
  if (p == 1.0 || std::isinf(p)) return c.l1_norm() + c.tail_bound();
  if (p == 2.0) return norms::symbol_sup(R) + (R.has_closed_form() ? 0.0 : c.tail_bound());
  norms::BracketOptions opt;
  opt.use_higham = false;
  return norms::conv_norm_bracket(R, p, opt).upper;
}

std::string norm_method(double p) {
  return (p == 1.0 || p == 2.0 || std::isinf(p)) ? "exact" : "upper bracket";
}

double coarse_sup(const ConvOperator& T, const std::function<cplx(cplx)>& g) {
  double s = 0.0;
  for (auto v : T.samples(1024)) s = std::max(s, std::abs(g(v)));
  return s;
}

KreissReport finish(KreissReport report, bool log_parameter) {
  report.constant = 0.0;
  for (const auto& s : report.samples) report.constant = std::max(report.constant, s.value);
  report.diverging = diverging_trend(report.samples, log_parameter);
  return report;
}

}  // namespace

KreissReport kreiss_constant(const ConvOperator& T, double p, int k_max,
                             const std::vector<double>& moduli, const KreissOptions& options) {
  require_exponent(p);
  if (k_max < 1) throw DomainError("k_max must be positive");
  if (moduli.empty()) throw DomainError("empty moduli grid");
  for (double rho : moduli)
    if (!(rho > 1.0)) throw DomainError(fmt::format("modulus {} is not above 1", rho));
  const int phases = std::max(options.phases, 1);

  struct Cell {
    double value = 0.0;
    std::optional<cplx> singular;
  };
  std::vector<Cell> cells(moduli.size() * static_cast<std::size_t>(phases));
  parallel_for(cells.size(), options.threads, [&](std::size_t idx) {
    const double rho = moduli[idx / static_cast<std::size_t>(phases)];
    const double phi = 2.0 * std::numbers::pi * static_cast<double>(idx % phases) / phases;
    const cplx lambda = std::polar(rho, phi);
    const double gap = rho - 1.0;
    auto& cell = cells[idx];
    for (int k = 1; k <= k_max; ++k) {
      const double natural = std::pow(gap, -k);
      const double hint =
          coarse_sup(T, [lambda, k](cplx v) { return std::pow(1.0 / (lambda - v), k); });
      const double tol = options.relative_tol * std::max({1.0, natural, hint});
      try {
        const auto R = symbols::resolvent_symbol(T, lambda, k, tol);
        cell.value = std::max(cell.value, std::pow(gap, k) * operator_norm(R, p));
      } catch (const NearSingularityError&) {
        if (options.throw_on_singular) throw;
        cell.value = kInfinity;
        cell.singular = lambda;
        return;
      }
    }
  });

  KreissReport report;
  report.kind = k_max == 1 ? KreissKind::kreiss : KreissKind::iterated_kreiss;
  report.norm_method = norm_method(p);
  const auto [lo, hi] = std::minmax_element(moduli.begin(), moduli.end());
  report.grid = fmt::format("moduli: {} values in [{}, {}]; phases: {}; k <= {}", moduli.size(),
                            *lo, *hi, phases, k_max);
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    double v = 0.0;
    for (int j = 0; j < phases; ++j) {
      const auto& cell = cells[i * static_cast<std::size_t>(phases) + j];
      v = std::max(v, cell.value);
      if (cell.singular && !report.singular_at) report.singular_at = cell.singular;
    }
    // Parameter 1/(|lambda| - 1): the approach to the unit circle.
    report.samples.push_back({1.0 / (moduli[i] - 1.0), v});
  }
  return finish(std::move(report), /*log_parameter=*/true);
}

KreissReport strong_kreiss_constant(const ConvOperator& T, double p,
                                    const std::vector<double>& radii, int phases,
                                    const KreissOptions& options) {
  require_exponent(p);
  if (radii.empty()) throw DomainError("empty radius grid");
  if (!std::is_sorted(radii.begin(), radii.end())) throw DomainError("radii must be sorted ascending");
  for (double r : radii)
    if (!(r > 0.0)) throw DomainError(fmt::format("radius {} is not positive", r));
  phases = std::max(phases, 1);

  std::vector<double> cells(radii.size() * static_cast<std::size_t>(phases), 0.0);
  parallel_for(cells.size(), options.threads, [&](std::size_t idx) {
    const double r = radii[idx / static_cast<std::size_t>(phases)];
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(idx % phases) / phases;
    const cplx z = std::polar(r, theta);
    const double hint = coarse_sup(T, [z, r](cplx v) { return std::exp(z * v - r); });
    const double tol = options.relative_tol * std::max(1.0, hint);
    cells[idx] = operator_norm(symbols::symbol_exp_scaled(T, z, tol), p);
  });

  KreissReport report;
  report.kind = KreissKind::strong_kreiss;
  report.norm_method = norm_method(p);
  report.grid = fmt::format("radii: {} values in [{}, {}]; phases: {}", radii.size(), radii.front(),
                            radii.back(), phases);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    double v = 0.0;
    for (int j = 0; j < phases; ++j) v = std::max(v, cells[i * static_cast<std::size_t>(phases) + j]);
    report.samples.push_back({radii[i], v});
  }
  return finish(std::move(report), /*log_parameter=*/false);
}

std::int64_t required_poisson_n_max(double r, double tail) {
  if (!(r > 0.0)) return 0;
  // Walk up from the mode until the remaining upper tail, bounded by a
  // geometric series with ratio r/(n+2), drops below `tail`.
  const double log_tail = std::log(tail);
  for (auto n = static_cast<std::int64_t>(std::floor(r));; ++n) {
    const double next = static_cast<double>(n + 1);
    const double log_term = next * std::log(r) - std::lgamma(next + 1.0) - r;
    const double ratio = r / (next + 1.0);
    if (ratio < 1.0 && log_term - std::log1p(-ratio) < log_tail) return n;
  }
}

std::vector<double> orbit_norms(const ConvOperator& T, const FourierSeries& x,
                                const std::vector<std::int64_t>& powers, double p) {
  require_exponent(p);
  if (powers.empty()) return {};
  if (!std::is_sorted(powers.begin(), powers.end()) || powers.front() < 0)
    throw DomainError("powers must be nonnegative and ascending");
  const auto n_max = powers.back();
  const double support = static_cast<double>(n_max) * static_cast<double>(T.symbol.span()) +
                         static_cast<double>(x.span()) + 64.0;
  const auto M = fft::next_pow2(static_cast<std::size_t>(8.0 * support));
  if (M > (std::size_t{1} << 24)) throw DomainError(fmt::format("orbit grid {} too large", M));

  const auto q = T.samples(M);
  const auto xs = sample_on_grid(x, M);
  std::vector<cplx> power(M, cplx{1.0});
  std::int64_t current = 0;
  std::vector<double> out;
  out.reserve(powers.size());
  std::vector<cplx> work(M);
  for (auto n : powers) {
    const auto step = n - current;
    if (step > 0) {
      for (std::size_t j = 0; j < M; ++j) {
        cplx b = q[j], acc = 1.0;
        for (auto e = step; e > 0; e >>= 1) {
          if (e & 1) acc *= b;
          b *= b;
        }
        power[j] *= acc;
      }
      current = n;
    }
    for (std::size_t j = 0; j < M; ++j) work[j] = power[j] * xs[j];
    fft::to_coefficients(work);
    // l^p norms are invariant under the cyclic relabelling of the window.
    out.push_back(sequence_lp_norm(work, p));
  }
  return out;
}

KreissReport absolute_strong_kreiss_constant(const ConvOperator& T, double p, const FourierSeries& x,
                                             const std::vector<double>& radii, std::int64_t n_max) {
  require_exponent(p);
  if (x.is_zero()) throw DomainError("x must be nonzero");
  if (radii.empty()) throw DomainError("empty radius grid");
  if (!std::is_sorted(radii.begin(), radii.end())) throw DomainError("radii must be sorted ascending");
  for (double r : radii)
    if (!(r > 0.0)) throw DomainError(fmt::format("radius {} is not positive", r));
  const auto need = required_poisson_n_max(radii.back());
  if (n_max < need) throw TailCriterionError(static_cast<std::size_t>(std::max<std::int64_t>(n_max, 0)),
                                             static_cast<std::size_t>(need));

  std::vector<std::int64_t> powers(static_cast<std::size_t>(n_max) + 1);
  for (std::size_t n = 0; n < powers.size(); ++n) powers[n] = static_cast<std::int64_t>(n);
  const auto norms = orbit_norms(T, x, powers, p);
  const double log_x = std::log(x.coefficient_lp_norm(p));

  KreissReport report;
  report.kind = KreissKind::absolute_strong_kreiss;
  report.norm_method = "exact";
  report.grid = fmt::format("radii: {} values in [{}, {}]; n <= {}", radii.size(), radii.front(),
                            radii.back(), n_max);
  for (double r : radii) {
    // log-sum-exp of n log r - log n! - r + log ||T^n x|| - log ||x||
    std::vector<double> logs;
    logs.reserve(norms.size());
    for (std::size_t n = 0; n < norms.size(); ++n) {
      if (norms[n] <= 0.0) continue;
      const double dn = static_cast<double>(n);
      logs.push_back(dn * std::log(r) - std::lgamma(dn + 1.0) - r + std::log(norms[n]) - log_x);
    }
    double value = 0.0;
    if (!logs.empty()) {
      const double top = *std::max_element(logs.begin(), logs.end());
      double s = 0.0;
      for (double l : logs) s += std::exp(l - top);
      value = std::exp(top) * s;
    }
    report.samples.push_back({r, value});
  }
  return finish(std::move(report), /*log_parameter=*/false);
}

double window_power_sum_ratio(const ConvOperator& T, double p, const FourierSeries& x, std::int64_t N) {
  require_exponent(p);
  if (std::isinf(p)) throw DomainError("window power sum needs finite p");
  if (N < 4) throw DomainError(fmt::format("N = {} below 4", N));
  if (x.is_zero()) throw DomainError("x must be nonzero");
  const double dN = static_cast<double>(N);
  const auto lo = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(dN - 2.0 * std::sqrt(dN))));
  std::vector<std::int64_t> powers;
  for (auto n = lo; n <= N; ++n) powers.push_back(n);
  const auto norms = orbit_norms(T, x, powers, p);
  double sum = 0.0;
  for (double v : norms) sum += std::pow(v, p);
  return sum / (std::pow(dN, p / 2.0) * std::pow(x.coefficient_lp_norm(p), p));
}

KreissReport window_power_sum_report(const ConvOperator& T, double p, const FourierSeries& x,
                                     const std::vector<std::int64_t>& Ns) {
  if (Ns.empty()) throw DomainError("empty N grid");
  KreissReport report;
  report.kind = KreissKind::window_power_sum;
  report.norm_method = "exact";
  report.grid = fmt::format("N: {} values in [{}, {}]", Ns.size(), Ns.front(), Ns.back());
  for (auto N : Ns)
    report.samples.push_back({static_cast<double>(N), window_power_sum_ratio(T, p, x, N)});
  return finish(std::move(report), /*log_parameter=*/true);
}

}  // namespace kreisslab::kreiss
