#include <algorithm>

#include <fmt/format.h>

#include "kreisslab/errors.hpp"
#include "kreisslab/experiments.hpp"
#include "kreisslab/parallel.hpp"
#include "kreisslab/symbols.hpp"

namespace kreisslab::experiments {

GrowthSeries growth_experiment(double a, double p, const std::vector<std::int64_t>& Ns, double tol,
                               const GrowthOptions& options) {
  if (!(p >= 1.0)) throw DomainError(fmt::format("p = {} is below 1", p));
  if (Ns.empty()) throw DomainError("empty list of powers");
  for (std::size_t i = 0; i < Ns.size(); ++i) {
    if (Ns[i] < 1) throw DomainError("powers must be positive");
    if (i > 0 && Ns[i] <= Ns[i - 1]) throw DomainError("powers must be strictly increasing");
  }
  const auto T = symbols::mobius_symbol(a, tol);

  GrowthSeries series;
  series.descriptor = T.descriptor;
  series.p = p;
  series.entries.resize(Ns.size());
  parallel_for(Ns.size(), options.threads, [&](std::size_t i) {
    const auto TN = symbols::symbol_pow(T, Ns[i], tol);
    series.entries[i] = GrowthEntry{Ns[i], norms::conv_norm_bracket(TN, p, options.bracket)};
  });
  return series;
}

}  // namespace kreisslab::experiments
