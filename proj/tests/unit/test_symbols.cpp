#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "kreisslab/errors.hpp"
#include "kreisslab/symbols.hpp"
#include "support/oracles.hpp"

using namespace kreisslab;
using namespace kreisslab::symbols;

TEST(MobiusTest, HalfCoefficients) {
  const auto T = mobius_symbol(0.5, 1e-14);
  const auto& c = T.symbol;
  EXPECT_EQ(c.k_min(), 0);
  EXPECT_DOUBLE_EQ(c[0].real(), -0.5);
  EXPECT_DOUBLE_EQ(c[1].real(), 0.75);
  EXPECT_DOUBLE_EQ(c[2].real(), 0.375);
  EXPECT_DOUBLE_EQ(c[3].real(), 0.1875);
  const auto ref = oracle::mobius_product(0.5, 30);
  for (int k = 0; k < 30; ++k) EXPECT_NEAR(std::abs(c[k] - ref[k]), 0.0, 1e-15);
  EXPECT_LE(T.symbol.tail_bound(), 1e-14);
  EXPECT_NEAR(c.l1_norm() + c.tail_bound(), 2.0, 1e-13);  // 1/2 + (1 - 1/4)/(1 - 1/2)
}

TEST(MobiusTest, ZeroIsShift) {
  const auto T = mobius_symbol(0.0, 1e-12);
  EXPECT_EQ(T.symbol.k_min(), 1);
  EXPECT_EQ(T.symbol.size(), 1u);
  EXPECT_EQ(T.symbol.tail_bound(), 0.0);
}

TEST(MobiusTest, UnimodularOnCircle) {
  const auto T = mobius_symbol(0.7, 1e-12);
  for (double th : {0.0, 0.3, 1.9, 3.1}) EXPECT_NEAR(std::abs(T.evaluate(std::polar(1.0, th))), 1.0, 1e-15);
}

TEST(MobiusTest, Validation) {
  EXPECT_THROW(mobius_symbol(1.0, 1e-12), DomainError);
  EXPECT_THROW(mobius_symbol(-0.1, 1e-12), DomainError);
  EXPECT_THROW(mobius_symbol(0.5, 0.0), DomainError);
}

TEST(SymbolPowTest, MatchesDirectConvolutionForSmallN) {
  const auto T = mobius_symbol(0.5, 1e-16);
  for (int N = 1; N <= 8; ++N) {
    const auto TN = symbol_pow(T, N, 1e-14);
    // Truncation of the factor only affects frequencies >= its length.
    const auto ref = oracle::direct_power(T.symbol.coeffs(), N, T.symbol.size());
    for (std::size_t k = 0; k < ref.size(); ++k)
      EXPECT_NEAR(std::abs(TN.symbol[static_cast<std::int64_t>(k)] - ref[k]), 0.0, 1e-12) << "N=" << N << " k=" << k;
  }
}

TEST(SymbolPowTest, ShiftPowerIsShift) {
  const auto T = symbol_pow(shift(1), 5, 1e-12);
  EXPECT_NEAR(std::abs(T.symbol[5] - 1.0), 0.0, 1e-13);
  EXPECT_NEAR(T.symbol.l1_norm(), 1.0, 1e-12);
}

TEST(SymbolPowTest, PolynomialWithoutClosedForm) {
  const auto T = from_symbol(FourierSeries(-1, {0.5, 0.0, 0.5}), "cos");
  const auto T3 = symbol_pow(T, 3, 1e-13);
  // (z^{-1} + z)^3 / 8 = (z^{-3} + 3 z^{-1} + 3 z + z^3)/8
  EXPECT_NEAR(std::abs(T3.symbol[-3] - 0.125), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(T3.symbol[-1] - 0.375), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(T3.symbol[0]), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(T3.symbol[3] - 0.125), 0.0, 1e-13);
}

TEST(SymbolPowTest, TailInheritedWithoutClosedForm) {
  const auto T = from_symbol(FourierSeries(0, {0.5, 0.5}, 1e-6), "noisy");
  const auto T4 = symbol_pow(T, 4, 1e-12);
  EXPECT_GE(T4.symbol.tail_bound(), 4e-6 * 0.99);
}

TEST(SymbolPowTest, ConvergenceFailureReportsDiscrepancies) {
  const auto T = mobius_symbol(0.9, 1e-14);
  try {
    symbol_pow(T, 400, 1e-14, 1 << 12);
    FAIL();
  } catch (const ConvergenceError& e) {
    EXPECT_GT(e.last_discrepancy(), 1e-14);
    EXPECT_LE(e.last_grid(), std::size_t{1} << 12);
  }
}

TEST(SymbolPowTest, RejectsNonPositivePower) { EXPECT_THROW(symbol_pow(shift(1), 0, 1e-12), DomainError); }

TEST(SymbolExpTest, ShiftGivesPoissonWeights) {
  const double r = 3.0;
  const auto E = symbol_exp_scaled(shift(1), cplx(r, 0.0), 1e-14);
  double term = std::exp(-r);
  for (int n = 0; n < 30; ++n) {
    EXPECT_NEAR(std::abs(E.symbol[n] - term), 0.0, 1e-13) << n;
    term *= r / (n + 1);
  }
  EXPECT_NEAR(E.symbol.l1_norm(), 1.0, 1e-12);
}

TEST(SymbolExpTest, ScalarSymbol) {
  const auto E = symbol_exp_scaled(scalar(2.0), cplx(0.0, 1.5), 1e-13);
  EXPECT_NEAR(std::abs(E.symbol[0] - std::exp(cplx(0.0, 3.0) - 1.5)), 0.0, 1e-13);
}

TEST(SymbolExpTest, TwoSidedSymbol) {
  // exp(r(z + 1/z)/2 - r) = e^{-r} sum_n I_n(r) z^n
  const double r = 2.0;
  const auto E = symbol_exp_scaled(from_symbol(FourierSeries(-1, {0.5, 0.0, 0.5}), "cos"), cplx(r, 0.0), 1e-14);
  EXPECT_NEAR(E.symbol[0].real(), std::exp(-r) * std::cyl_bessel_i(0.0, r), 1e-13);
  EXPECT_NEAR(E.symbol[-3].real(), std::exp(-r) * std::cyl_bessel_i(3.0, r), 1e-13);
  EXPECT_NEAR(E.symbol[2].real(), std::exp(-r) * std::cyl_bessel_i(2.0, r), 1e-13);
}

TEST(ResolventTest, ShiftMatchesGeometricSeries) {
  for (cplx lambda : {cplx(1.5, 0.0), cplx(0.0, 2.0), std::polar(1.1, 2.0)}) {
    for (int k = 1; k <= 3; ++k) {
      const auto R = resolvent_symbol(shift(1), lambda, k, 1e-13);
      EXPECT_EQ(R.symbol.k_min(), 0);
      for (int j = 0; j < 60; ++j)
        EXPECT_NEAR(std::abs(R.symbol[j] - oracle::shift_resolvent_coefficient(lambda, k, j)), 0.0, 1e-10)
            << "k=" << k << " j=" << j;
    }
  }
}

TEST(ResolventTest, ScalarIsReciprocal) {
  const auto R = resolvent_symbol(scalar(0.5), cplx(2.0, 0.0), 2, 1e-13);
  EXPECT_NEAR(std::abs(R.symbol[0] - 1.0 / 2.25), 0.0, 1e-14);
}

TEST(ResolventTest, NearSingularityCarriesLambda) {
  try {
    resolvent_symbol(scalar(2.0), cplx(2.0, 0.0), 1, 1e-12);
    FAIL();
  } catch (const NearSingularityError& e) {
    EXPECT_EQ(e.lambda(), cplx(2.0, 0.0));
    EXPECT_LT(e.min_distance(), 1e-10);
  }
}

TEST(ResolventTest, Validation) {
  EXPECT_THROW(resolvent_symbol(shift(1), cplx(0.5, 0.0), 1, 1e-12), DomainError);
  EXPECT_THROW(resolvent_symbol(shift(1), cplx(2.0, 0.0), 0, 1e-12), DomainError);
}

TEST(ClosedFormTest, PropagatesThroughOperations) {
  const auto T = mobius_symbol(0.5, 1e-14);
  const auto P = symbol_pow(T, 3, 1e-13);
  const auto E = symbol_exp_scaled(T, cplx(1.0, 1.0), 1e-13);
  const auto R = resolvent_symbol(T, cplx(2.0, 0.0), 2, 1e-13);
  ASSERT_TRUE(P.has_closed_form() && E.has_closed_form() && R.has_closed_form());
  const cplx z = std::polar(1.0, 0.4);
  const cplx q = (z - 0.5) / (1.0 - 0.5 * z);
  EXPECT_NEAR(std::abs(P.evaluate(z) - q * q * q), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(E.evaluate(z) - std::exp(cplx(1.0, 1.0) * q - std::sqrt(2.0))), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(R.evaluate(z) - 1.0 / ((2.0 - q) * (2.0 - q))), 0.0, 1e-14);
  // the truncated coefficients agree with the closed form
  EXPECT_NEAR(std::abs(P.symbol.evaluate(z) - P.evaluate(z)), 0.0, 1e-12);
}
