#include <cmath>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "kreisslab/errors.hpp"
#include "kreisslab/experiments.hpp"

namespace kreisslab::experiments {

ExponentFit fit_power_law(std::span<const double> Ns, std::span<const double> values,
                          bool use_log_correction) {
  if (Ns.size() != values.size()) throw DomainError("N and value lists differ in length");
  if (Ns.size() < 3) throw DomainError("exponent fit needs at least 3 points");
  const auto n = static_cast<Eigen::Index>(Ns.size());
  const Eigen::Index cols = use_log_correction ? 3 : 2;
  Eigen::MatrixXd X(n, cols);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double N = Ns[static_cast<std::size_t>(i)];
    const double v = values[static_cast<std::size_t>(i)];
    if (!(v > 0.0) || std::isinf(v)) throw DomainError(fmt::format("value {} at N = {} not fit-able", v, N));
    if (!(N > 0.0) || (use_log_correction && !(N > 1.0)))
      throw DomainError(fmt::format("N = {} outside the fit domain", N));
    X(i, 0) = 1.0;
    X(i, 1) = std::log(N);
    if (use_log_correction) X(i, 2) = std::log(std::log(N));
    y(i) = std::log(v);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  qr.setThreshold(1e-10);
  if (qr.rank() < cols) throw DomainError("degenerate design matrix in exponent fit");
  const Eigen::VectorXd beta = qr.solve(y);
  ExponentFit fit;
  fit.intercept = beta(0);
  fit.slope = beta(1);
  fit.log_exponent = use_log_correction ? beta(2) : 0.0;
  fit.max_residual = (X * beta - y).cwiseAbs().maxCoeff();
  return fit;
}

ExponentFit fit_exponent(const GrowthSeries& series, bool use_log_correction, FitTarget target) {
  std::vector<double> Ns, values;
  for (const auto& e : series.entries) {
    Ns.push_back(static_cast<double>(e.N));
    switch (target) {
      case FitTarget::geometric_mean:
        if (!(e.bracket.lower > 0.0)) throw DomainError("bracket lower bound is zero");
        values.push_back(e.bracket.geometric_mean());
        break;
      case FitTarget::lower: values.push_back(e.bracket.lower); break;
      case FitTarget::upper: values.push_back(e.bracket.upper); break;
    }
  }
  return fit_power_law(Ns, values, use_log_correction);
}

}  // namespace kreisslab::experiments
