#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kreisslab/norms.hpp"
#include "kreisslab/torus.hpp"

namespace kreisslab::experiments {

struct GrowthEntry {
  std::int64_t N = 0;
  norms::NormBracket bracket;
};

/// ||T^N||_p brackets for increasing N.
struct GrowthSeries {
  std::string descriptor;
  double p = 2.0;
  std::vector<GrowthEntry> entries;
};

struct GrowthOptions {
  norms::BracketOptions bracket;
  int threads = 1;
};

/// Powers of q_a(S), each with conv_norm_bracket at p.
GrowthSeries growth_experiment(double a, double p, const std::vector<std::int64_t>& Ns, double tol,
                               const GrowthOptions& options = {});

/// Least-squares fit log y = intercept + slope log N [+ log_exponent log log N].
struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  double log_exponent = 0.0;
  double max_residual = 0.0;
};

enum class FitTarget { geometric_mean, lower, upper };

ExponentFit fit_power_law(std::span<const double> Ns, std::span<const double> values,
                          bool use_log_correction);
ExponentFit fit_exponent(const GrowthSeries& series, bool use_log_correction,
                         FitTarget target = FitTarget::geometric_mean);

enum class LpKind { forward, weak_l1, reverse, blocks, stechkin };

std::string_view to_string(LpKind kind);
/// Accepts the CLI spellings: forward, weak-l1, reverse, blocks, stechkin.
LpKind parse_lp_kind(std::string_view name);

struct ExperimentConfig {
  std::uint64_t seed = 1;
  int trials = 100;
  double p = 2.0;
  std::vector<int> Ls{1, 2, 4, 8};
  /// Intervals and supports are drawn inside [-freq_range, freq_range].
  std::int64_t freq_range = 64;
  int support_size = 16;
  /// Quadrature grid; 0 picks the default for the bandwidth.
  std::size_t m = 0;
  /// weak_l1 only: L copies of a single random interval.
  bool repeat_single_interval = false;
  int threads = 1;
};

struct LpRow {
  int L = 0;
  double worst_ratio = 0.0;
  double mean_ratio = 0.0;
  std::uint64_t witness_seed = 0;
};

/// Everything needed to regenerate the worst trial.
struct Witness {
  int L = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  std::vector<torus::Interval> intervals;
  double ratio = 0.0;
};

struct LpReport {
  LpKind kind = LpKind::forward;
  ExperimentConfig config;
  double worst_ratio = 0.0;
  std::vector<LpRow> per_L;
  Witness witness;
  /// reverse only: trials where ||S f||_p exceeded (sum_l ||M_l f||_p^{p'})^{1/p'}.
  int second_form_violations = 0;
  /// forward only: L values whose worst ratio exceeds 4x the L = 1 worst ratio.
  std::vector<int> findings;
};

/// Random search for the worst ratio of the left side over the right side of
/// a square-function inequality, with the right side normalised by its
/// power of L only. Ratios are empirical lower bounds on the best constants.
LpReport lp_inequality_experiment(LpKind kind, const ExperimentConfig& config);

/// The statement exercised by an experiment kind, for reports.
std::string_view lp_statement(LpKind kind);

}  // namespace kreisslab::experiments
