#include "kreisslab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <numeric>
#include <random>

#include <fmt/format.h>

#include "kreisslab/errors.hpp"
#include "kreisslab/fft.hpp"
#include "kreisslab/random.hpp"

namespace kreisslab::norms {

double NormBracket::geometric_mean() const {
  if (std::isinf(upper)) return kInfinity;
  return std::sqrt(lower * upper);
}

NormBracket make_bracket(double lower, double upper, std::string lower_method,
                         std::string upper_method, double p) {
  if (std::isnan(lower) || std::isnan(upper)) throw std::logic_error("NaN in norm bracket");
  lower = std::max(lower, 0.0);
  const double slack = 1e-12 * std::max(1.0, std::isinf(upper) ? 0.0 : upper);
  if (lower > upper + slack)
    throw std::logic_error(fmt::format("unsound norm bracket: lower {} > upper {} (p = {})",
                                       lower, upper, p));
  lower = std::min(lower, upper);
  return NormBracket{lower, upper, std::move(lower_method), std::move(upper_method), p};
}

LinearMap dense_matrix(std::size_t rows, std::size_t cols, std::vector<double> entries) {
  if (entries.size() != rows * cols)
    throw DomainError(fmt::format("{} entries for a {}x{} matrix", entries.size(), rows, cols));
  auto a = std::make_shared<const std::vector<double>>(std::move(entries));
  LinearMap A;
  A.rows = rows;
  A.cols = cols;
  A.real = true;
  A.apply = [a, rows, cols](std::span<const cplx> x, std::span<cplx> y) {
    for (std::size_t i = 0; i < rows; ++i) {
      cplx s = 0.0;
      for (std::size_t j = 0; j < cols; ++j) s += (*a)[i * cols + j] * x[j];
      y[i] = s;
    }
  };
  A.apply_adjoint = [a, rows, cols](std::span<const cplx> y, std::span<cplx> x) {
    for (std::size_t j = 0; j < cols; ++j) {
      cplx s = 0.0;
      for (std::size_t i = 0; i < rows; ++i) s += (*a)[i * cols + j] * y[i];
      x[j] = s;
    }
  };
  return A;
}

LinearMap truncated_convolution(const FourierSeries& symbol, std::size_t window) {
  if (window == 0) throw DomainError("window must be positive");
  auto c = std::make_shared<const std::vector<cplx>>(symbol.coeffs());
  std::vector<cplx> reversed_conj(c->rbegin(), c->rend());
  for (auto& v : reversed_conj) v = std::conj(v);
  auto cr = std::make_shared<const std::vector<cplx>>(std::move(reversed_conj));
  const auto len = c->size();
  LinearMap A;
  A.rows = window + len - 1;
  A.cols = window;
  A.real = std::all_of(c->begin(), c->end(), [](cplx v) { return v.imag() == 0.0; });
  A.apply = [c](std::span<const cplx> x, std::span<cplx> y) {
    auto full = convolve(*c, x);
    std::copy(full.begin(), full.end(), y.begin());
  };
  // (A^* y)_j = sum_k conj(c_k) y_{j+k}: correlate, keep the window part.
  A.apply_adjoint = [cr, len, window](std::span<const cplx> y, std::span<cplx> x) {
    auto full = convolve(*cr, y);
    std::copy(full.begin() + static_cast<std::ptrdiff_t>(len - 1),
              full.begin() + static_cast<std::ptrdiff_t>(len - 1 + window), x.begin());
  };
  return A;
}

namespace {

cplx phase(cplx v) {
  const double r = std::abs(v);
  return r == 0.0 ? cplx{0.0} : v / r;
}

// Dual vector of y in l^p, normalised so that it has unit l^q norm and pairs
// with y to ||y||_p.
std::vector<cplx> dual_vector(std::span<const cplx> y, double p) {
  const double norm = sequence_lp_norm(y, p);
  std::vector<cplx> out(y.size(), cplx{0.0});
  if (norm == 0.0) return out;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double r = std::abs(y[i]) / norm;
    out[i] = phase(y[i]) * std::pow(r, p - 1.0);
  }
  return out;
}

double one_run(const LinearMap& A, double p, std::vector<cplx> x, const HighamOptions& opt) {
  const double q = p / (p - 1.0);
  const double nx = sequence_lp_norm(x, p);
  if (nx == 0.0) return 0.0;
  for (auto& v : x) v /= nx;
  std::vector<cplx> y(A.rows), z(A.cols);
  double best = 0.0;
  for (int it = 0; it < opt.max_iterations; ++it) {
    A.apply(x, y);
    const double est = sequence_lp_norm(y, p);
    const bool stalled = it > 0 && est <= best * (1.0 + opt.relative_gain);
    best = std::max(best, est);
    if (stalled || est == 0.0) break;
    A.apply_adjoint(dual_vector(y, p), z);
    const double zq = sequence_lp_norm(z, q);
    double pairing = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) pairing += (std::conj(z[i]) * x[i]).real();
    if (zq <= pairing * (1.0 + 1e-15)) break;
    x = dual_vector(z, q);
  }
  return best;
}

}  // namespace

double higham_lower(const LinearMap& A, double p, const HighamOptions& options) {
  if (!(p > 1.0) || std::isinf(p))
    throw DomainError(fmt::format("power iteration needs 1 < p < inf, got {}", p));
  if (A.cols == 0 || A.rows == 0) return 0.0;
  double best = 0.0;
  for (const auto& start : options.warm_starts) {
    if (start.size() != A.cols) throw DomainError("warm start has wrong dimension");
    best = std::max(best, one_run(A, p, start, options));
  }
  for (int r = 0; r < options.restarts; ++r) {
    auto gen = make_stream(options.seed, static_cast<std::uint64_t>(r));
    std::normal_distribution<double> normal;
    std::vector<cplx> x(A.cols);
    for (auto& v : x) {
      const double re = normal(gen);
      v = A.real ? cplx{re} : cplx{re, normal(gen)};
    }
    best = std::max(best, one_run(A, p, std::move(x), options));
  }
  return best;
}

double higham_lower(const symbols::ConvOperator& T, double p, std::size_t window, int restarts,
                    std::uint64_t seed) {
  const auto& c = T.symbol;
  if (window < static_cast<std::size_t>(c.span()) + 1)
    throw DomainError(fmt::format("window {} smaller than symbol bandwidth {}", window, c.span() + 1));
  auto A = truncated_convolution(c, window);
  HighamOptions opt;
  opt.restarts = restarts;
  opt.seed = seed;
  // Delta and matched-filter starts: the latter focuses dispersive symbols.
  std::vector<cplx> delta(window, cplx{0.0});
  delta[0] = 1.0;
  std::vector<cplx> matched(window, cplx{0.0});
  const auto& cc = c.coeffs();
  for (std::size_t j = 0; j < cc.size() && j < window; ++j) matched[j] = std::conj(cc[cc.size() - 1 - j]);
  opt.warm_starts = {std::move(delta), std::move(matched)};
  const double raw = higham_lower(A, p, opt);
  return std::max(0.0, raw - c.tail_bound());
}

double riesz_thorin_upper(double n1, double n2, double ninf, double p) {
  if (!(p >= 1.0)) throw DomainError(fmt::format("p = {} outside [1, inf]", p));
  if (n1 < 0.0 || n2 < 0.0 || ninf < 0.0) throw DomainError("endpoint norms must be nonnegative");
  if (p == 2.0) return n2;
  if (std::isinf(p)) return ninf;
  if (p < 2.0) {
    const double theta = 2.0 * (1.0 - 1.0 / p);
    return std::pow(n1, 1.0 - theta) * std::pow(n2, theta);
  }
  const double theta = 1.0 - 2.0 / p;
  return std::pow(n2, 1.0 - theta) * std::pow(ninf, theta);
}

double test_vector_lower(const symbols::ConvOperator& T, double p) {
  const auto& c = T.symbol;
  double value = c.coefficient_lp_norm(p);
  if (p > 2.0) {
    // Reversal and conjugation preserve l^q norms, so the adjoint column is
    // the same sequence measured in the dual exponent.
    const double q = std::isinf(p) ? 1.0 : p / (p - 1.0);
    value = std::max(value, c.coefficient_lp_norm(q));
  }
  return std::max(0.0, value - c.tail_bound());
}

double symbol_sup(const symbols::ConvOperator& T) {
  const auto span = static_cast<std::size_t>(std::max<std::int64_t>(T.symbol.span(), 0));
  const std::size_t m = std::clamp<std::size_t>(fft::next_pow2(8 * (span + 1)), 4096,
                                                std::size_t{1} << 22);
  const auto values = T.samples(m);
  std::vector<double> mags(m);
  for (std::size_t j = 0; j < m; ++j) mags[j] = std::abs(values[j]);

  // Local maxima on the periodic grid, largest first.
  std::vector<std::size_t> peaks;
  for (std::size_t j = 0; j < m; ++j) {
    const double left = mags[(j + m - 1) % m];
    const double right = mags[(j + 1) % m];
    if (mags[j] >= left && mags[j] >= right) peaks.push_back(j);
  }
  std::sort(peaks.begin(), peaks.end(), [&](std::size_t a, std::size_t b) {
    return mags[a] != mags[b] ? mags[a] > mags[b] : a < b;
  });
  if (peaks.size() > 4) peaks.resize(4);

  double best = *std::max_element(mags.begin(), mags.end());
  const double h = 2.0 * std::numbers::pi / static_cast<double>(m);
  auto f = [&](double theta) { return std::abs(T.evaluate(std::polar(1.0, theta))); };
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (auto j : peaks) {
    double a = h * (static_cast<double>(j) - 1.0);
    double b = h * (static_cast<double>(j) + 1.0);
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 60 && (b - a) > 1e-15; ++it) {
      if (fc > fd) {
        b = d; d = c; fd = fc;
        c = b - g * (b - a); fc = f(c);
      } else {
        a = c; c = d; fc = fd;
        d = a + g * (b - a); fd = f(d);
      }
    }
    best = std::max({best, fc, fd});
  }
  return best;
}

NormBracket conv_norm_bracket(const symbols::ConvOperator& T, double p,
                              const BracketOptions& options) {
  if (!(p >= 1.0)) throw DomainError(fmt::format("p = {} is below 1", p));
  const auto& c = T.symbol;
  const double tail = c.tail_bound();
  const double n1 = c.l1_norm();
  if (p == 1.0 || std::isinf(p)) return make_bracket(n1 - tail, n1 + tail, "exact", "exact", p);

  const double sup = symbol_sup(T);
  // The closed form evaluates the untruncated symbol, so no tail applies.
  const double sup_err = T.has_closed_form() ? 0.0 : tail;
  if (p == 2.0) return make_bracket(sup - sup_err, sup + sup_err, "exact", "exact", p);

  const double upper = riesz_thorin_upper(n1 + tail, sup + sup_err, n1 + tail, p);
  double lower = test_vector_lower(T, p);
  std::string lower_method = "test_vector";
  const auto window = static_cast<std::size_t>(c.span()) + 1 + options.window_padding;
  if (options.use_higham && window <= options.max_window && !std::isinf(p)) {
    const double h = higham_lower(T, p, window, options.restarts, options.seed);
    if (h > lower) {
      lower = h;
      lower_method = "higham";
    }
  }
  return make_bracket(lower, upper, lower_method, "riesz_thorin", p);
}

}  // namespace kreisslab::norms
