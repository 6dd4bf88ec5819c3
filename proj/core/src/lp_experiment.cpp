#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <fmt/format.h>

#include "kreisslab/errors.hpp"
#include "kreisslab/experiments.hpp"
#include "kreisslab/fft.hpp"
#include "kreisslab/parallel.hpp"
#include "kreisslab/random.hpp"

namespace kreisslab::experiments {
namespace {

using torus::Interval;
using torus::IntervalSet;

constexpr double kFindingSlack = 4.0;
constexpr double kSecondFormTol = 1e-10;

struct Trial {
  double ratio = 0.0;
  std::vector<Interval> intervals;
  bool second_form_violated = false;
};

// k distinct values from `pool`, in increasing order.
std::vector<std::int64_t> pick(std::vector<std::int64_t> pool, std::size_t k, std::mt19937_64& rng) {
  k = std::min(k, pool.size());
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> d(i, pool.size() - 1);
    std::swap(pool[i], pool[d(rng)]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::vector<std::int64_t> range(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> v;
  for (auto k = lo; k <= hi; ++k) v.push_back(k);
  return v;
}

// Complex standard normal coefficients on the given frequencies.
FourierSeries random_series(const std::vector<std::int64_t>& support, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, std::sqrt(0.5));
  const auto lo = support.front();
  std::vector<cplx> c(static_cast<std::size_t>(support.back() - lo + 1));
  for (auto k : support) {
    const double re = g(rng);
    const double im = g(rng);
    c[static_cast<std::size_t>(k - lo)] = {re, im};
  }
  return FourierSeries(lo, std::move(c));
}

// 2L distinct endpoints in [-R, R], paired consecutively.
std::vector<Interval> disjoint_intervals(int L, std::int64_t R, std::mt19937_64& rng) {
  const auto e = pick(range(-R, R), static_cast<std::size_t>(2 * L), rng);
  std::vector<Interval> out;
  for (std::size_t i = 0; i + 1 < e.size(); i += 2) out.push_back({e[i], e[i + 1]});
  return out;
}

// L + 1 distinct cut points in [-R, R + 1]; interval l is [c_l, c_{l+1} - 1].
std::vector<Interval> consecutive_intervals(int L, std::int64_t R, std::mt19937_64& rng) {
  const auto c = pick(range(-R, R + 1), static_cast<std::size_t>(L + 1), rng);
  std::vector<Interval> out;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) out.push_back({c[i], c[i + 1] - 1});
  return out;
}

Interval random_interval(std::int64_t R, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> d(-R, R);
  const auto a = d(rng);
  const auto b = d(rng);
  return {std::min(a, b), std::max(a, b)};
}

std::vector<std::int64_t> covered(const std::vector<Interval>& intervals) {
  std::vector<std::int64_t> v;
  for (const auto& I : intervals)
    for (auto k = I.lo; k <= I.hi; ++k) v.push_back(k);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

double p_prime(double p) { return std::min(2.0, p); }
double p_dprime(double p) { return std::max(2.0, p); }

std::size_t grid_for(const ExperimentConfig& cfg, std::int64_t bandwidth) {
  if (cfg.m != 0) return cfg.m;
  return std::max<std::size_t>(64, fft::next_pow2(static_cast<std::size_t>(8 * bandwidth)));
}

std::int64_t bandwidth_for(LpKind kind, const ExperimentConfig& cfg, int L) {
  if (kind == LpKind::blocks) return static_cast<std::int64_t>(L) * L;
  return cfg.freq_range;
}

Trial run_trial(LpKind kind, const ExperimentConfig& cfg, int L, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto R = cfg.freq_range;
  const auto support_size = static_cast<std::size_t>(cfg.support_size);
  const std::size_t m = grid_for(cfg, bandwidth_for(kind, cfg, L));
  const double p = cfg.p;
  Trial t;

  switch (kind) {
    case LpKind::forward: {
      t.intervals = disjoint_intervals(L, R, rng);
      const auto f = random_series(pick(covered(t.intervals), support_size, rng), rng);
      const IntervalSet S(t.intervals);
      const double lhs = torus::lp_norm(torus::square_function(f, S, m), p);
      const double rhs = std::pow(static_cast<double>(L), 1.0 / p_prime(p) - 0.5) * torus::lp_norm(f, p, m);
      t.ratio = lhs / rhs;
      break;
    }
    case LpKind::weak_l1: {
      if (cfg.repeat_single_interval) {
        t.intervals.assign(static_cast<std::size_t>(L), random_interval(R, rng));
      } else {
        for (int l = 0; l < L; ++l) t.intervals.push_back(random_interval(R, rng));
      }
      const auto f = random_series(pick(range(-R, R), support_size, rng), rng);
      const IntervalSet S(t.intervals);
      const double lhs = torus::weak_l1_norm(torus::square_function(f, S, m));
      const double rhs = std::sqrt(static_cast<double>(L)) * torus::lp_norm(f, 1.0, m);
      t.ratio = lhs / rhs;
      break;
    }
    case LpKind::reverse: {
      t.intervals = consecutive_intervals(L, R, rng);
      const auto f = random_series(pick(covered(t.intervals), support_size, rng), rng);
      const IntervalSet S(t.intervals);
      const Interval hull{t.intervals.front().lo, t.intervals.back().hi};
      const double lhs = torus::lp_norm(torus::band_project(f, hull), p, m);
      const double sq = torus::lp_norm(torus::square_function(f, S, m), p);
      t.ratio = lhs / (std::pow(static_cast<double>(L), 0.5 - 1.0 / p_dprime(p)) * sq);
      double sum = 0.0;
      for (const auto& I : t.intervals) sum += std::pow(torus::lp_norm(torus::band_project(f, I), p, m), p_prime(p));
      const double second = std::pow(sum, 1.0 / p_prime(p));
      t.second_form_violated = sq > second * (1.0 + kSecondFormTol);
      break;
    }
    case LpKind::blocks: {
      // I_n = [n^2 + 1, (n + 1)^2], n = 0..L-1, tiling [1, L^2].
      for (int n = 0; n < L; ++n) t.intervals.push_back({std::int64_t{n} * n + 1, std::int64_t{n + 1} * (n + 1)});
      const auto f = random_series(pick(range(1, std::int64_t{L} * L), support_size, rng), rng);
      const double lhs = torus::lp_norm(f, p, m);
      double sum = 0.0;
      for (const auto& I : t.intervals) sum += std::pow(torus::lp_norm(torus::band_project(f, I), p, m), p_prime(p));
      const double rhs = std::pow(static_cast<double>(L), 0.5 - 1.0 / p_dprime(p)) * std::pow(sum, 1.0 / p_prime(p));
      t.ratio = lhs / rhs;
      break;
    }
    case LpKind::stechkin: {
      const auto f = random_series(pick(range(-R, R), support_size, rng), rng);
      std::uniform_real_distribution<double> u(0.0, 1.0);
      std::vector<double> a(f.size());
      for (auto& x : a) x = u(rng);
      std::sort(a.begin(), a.end());
      t.intervals.push_back({f.k_min(), f.k_max()});
      t.ratio = torus::lp_norm(torus::apply_multiplier(f, a), p, m) / torus::lp_norm(f, p, m);
      break;
    }
  }
  return t;
}

void validate(LpKind kind, const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw DomainError("trials must be positive");
  if (cfg.support_size < 1) throw DomainError("support size must be positive");
  if (cfg.freq_range < 1) throw DomainError("frequency range must be positive");
  if (cfg.Ls.empty()) throw DomainError("empty list of L values");
  for (int L : cfg.Ls)
    if (L < 1) throw DomainError(fmt::format("L = {} must be positive", L));
  if (kind != LpKind::weak_l1 && (!(cfg.p > 1.0) || std::isinf(cfg.p)))
    throw DomainError(fmt::format("{} needs 1 < p < inf, got {}", to_string(kind), cfg.p));
  const std::int64_t points = 2 * cfg.freq_range + 1;
  for (int L : cfg.Ls) {
    if (kind == LpKind::forward && 2 * std::int64_t{L} > points)
      throw DomainError(fmt::format("L = {} needs {} endpoints in a range of {}", L, 2 * L, points));
    if (kind == LpKind::reverse && std::int64_t{L} + 1 > points + 1)
      throw DomainError(fmt::format("L = {} consecutive intervals do not fit in the range", L));
  }
  if (kind == LpKind::stechkin && (cfg.Ls.size() != 1 || cfg.Ls.front() != 1))
    throw DomainError("stechkin takes no interval family; use L = 1");
  if (kind != LpKind::weak_l1 && cfg.repeat_single_interval)
    throw DomainError("repeated intervals are only meaningful for weak-l1");
}

}  // namespace

std::string_view to_string(LpKind kind) {
  switch (kind) {
    case LpKind::forward: return "forward";
    case LpKind::weak_l1: return "weak-l1";
    case LpKind::reverse: return "reverse";
    case LpKind::blocks: return "blocks";
    case LpKind::stechkin: return "stechkin";
  }
  return "unknown";
}

LpKind parse_lp_kind(std::string_view name) {
  for (auto k : {LpKind::forward, LpKind::weak_l1, LpKind::reverse, LpKind::blocks, LpKind::stechkin})
    if (to_string(k) == name) return k;
  if (name == "weak_l1") return LpKind::weak_l1;
  throw DomainError(fmt::format("unknown experiment kind '{}'", name));
}

std::string_view lp_statement(LpKind kind) {
  switch (kind) {
    case LpKind::forward:
      return "||(sum_l |M_{I_l} f|^2)^{1/2}||_p <= D_p L^{1/p'-1/2} ||f||_p, disjoint I_l, p' = min(2,p)";
    case LpKind::weak_l1:
      return "||(sum_l |M_{I_l} f|^2)^{1/2}||_{1,inf} <= D_{1,inf} L^{1/2} ||f||_1, arbitrary I_l";
    case LpKind::reverse:
      return "||M_I f||_p <= C_p L^{1/2-1/p''} ||(sum_l |M_{I_l} f|^2)^{1/2}||_p "
             "<= C_p L^{1/2-1/p''} (sum_l ||M_{I_l} f||_p^{p'})^{1/p'}, consecutive I_l, p'' = max(2,p)";
    case LpKind::blocks:
      return "||sum_{k=1}^{N^2} a_k g^k||_p <= C_p N^{1/2-1/p''} "
             "(sum_n ||sum_{k=n^2+1}^{(n+1)^2} a_k g^k||_p^{p'})^{1/p'}";
    case LpKind::stechkin:
      return "||sum_n a_n c_n g^n||_p <= D_p ||sum_n c_n g^n||_p, a bounded monotone";
  }
  return "";
}

LpReport lp_inequality_experiment(LpKind kind, const ExperimentConfig& config) {
  validate(kind, config);
  const auto nL = config.Ls.size();
  const auto nT = static_cast<std::size_t>(config.trials);
  std::vector<Trial> trials(nL * nT);
  parallel_for(trials.size(), config.threads, [&](std::size_t idx) {
    const std::size_t li = idx / nT;
    const std::size_t ti = idx % nT;
    trials[idx] = run_trial(kind, config, config.Ls[li], derive_seed(config.seed, ti));
  });

  LpReport report;
  report.kind = kind;
  report.config = config;
  report.worst_ratio = -std::numeric_limits<double>::infinity();
  for (std::size_t li = 0; li < nL; ++li) {
    LpRow row;
    row.L = config.Ls[li];
    row.worst_ratio = -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (std::size_t ti = 0; ti < nT; ++ti) {
      const auto& t = trials[li * nT + ti];
      sum += t.ratio;
      if (t.second_form_violated) ++report.second_form_violations;
      if (t.ratio > row.worst_ratio) {
        row.worst_ratio = t.ratio;
        row.witness_seed = derive_seed(config.seed, ti);
      }
      if (t.ratio > report.worst_ratio) {
        report.worst_ratio = t.ratio;
        report.witness = Witness{row.L, static_cast<int>(ti), derive_seed(config.seed, ti), t.intervals, t.ratio};
      }
    }
    row.mean_ratio = sum / static_cast<double>(nT);
    report.per_L.push_back(row);
  }

  if (kind == LpKind::forward) {
    // Reference constant from the smallest L (L = 1 in the default sweep).
    const auto ref = std::min_element(report.per_L.begin(), report.per_L.end(),
                                      [](const LpRow& a, const LpRow& b) { return a.L < b.L; });
    for (const auto& row : report.per_L)
      if (row.worst_ratio > kFindingSlack * ref->worst_ratio) report.findings.push_back(row.L);
  }
  return report;
}

}  // namespace kreisslab::experiments
