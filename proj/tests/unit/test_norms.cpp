#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "kreisslab/errors.hpp"
#include "kreisslab/norms.hpp"
#include "kreisslab/symbols.hpp"
#include "support/oracles.hpp"

using namespace kreisslab;
using namespace kreisslab::norms;

TEST(RieszThorinTest, Endpoints) {
  EXPECT_DOUBLE_EQ(riesz_thorin_upper(3.0, 2.0, 5.0, 2.0), 2.0);
  EXPECT_DOUBLE_EQ(riesz_thorin_upper(3.0, 2.0, 5.0, 1.0), 3.0);
  EXPECT_DOUBLE_EQ(riesz_thorin_upper(3.0, 2.0, 5.0, kInfinity), 5.0);
  EXPECT_NEAR(riesz_thorin_upper(1.0, 2.0, 4.0, 4.0), std::sqrt(8.0), 1e-14);
  EXPECT_THROW(riesz_thorin_upper(1.0, 1.0, 1.0, 0.5), DomainError);
}

TEST(BracketTest, OrderEnforced) {
  EXPECT_THROW(make_bracket(2.0, 1.0, "a", "b", 3.0), std::logic_error);
  const auto b = make_bracket(1.0 + 1e-14, 1.0, "a", "b", 3.0);
  EXPECT_LE(b.lower, b.upper);
  EXPECT_EQ(make_bracket(-1e-3, 1.0, "a", "b", 3.0).lower, 0.0);
}

TEST(ConvBracketTest, MobiusEndpoints) {
  const auto T = symbols::mobius_symbol(0.5, 1e-14);
  const auto b1 = conv_norm_bracket(T, 1.0);
  EXPECT_TRUE(b1.exact());
  EXPECT_NEAR(b1.lower, 2.0, 1e-12);
  EXPECT_NEAR(b1.upper, 2.0, 1e-12);
  const auto b2 = conv_norm_bracket(T, 2.0);
  EXPECT_TRUE(b2.exact());
  EXPECT_NEAR(b2.lower, 1.0, 1e-12);
  EXPECT_NEAR(b2.upper, 1.0, 1e-12);
  const auto binf = conv_norm_bracket(T, kInfinity);
  EXPECT_NEAR(binf.upper, 2.0, 1e-12);
}

TEST(ConvBracketTest, MobiusAtFour) {
  const auto b = conv_norm_bracket(symbols::mobius_symbol(0.5, 1e-14), 4.0);
  EXPECT_GE(b.lower, 1.0 - 1e-12);
  EXPECT_LE(b.upper, std::sqrt(2.0) + 1e-12);
  EXPECT_LE(b.lower, b.upper);
  EXPECT_EQ(b.upper_method, "riesz_thorin");
}

TEST(ConvBracketTest, ShiftIsIsometry) {
  for (double p : {1.0, 1.5, 2.0, 3.0, kInfinity}) {
    const auto b = conv_norm_bracket(symbols::shift(3), p);
    EXPECT_NEAR(b.lower, 1.0, 1e-12) << p;
    EXPECT_NEAR(b.upper, 1.0, 1e-12) << p;
  }
}

TEST(ConvBracketTest, NearOneMatchesEndpoint) {
  const auto T = symbols::symbol_pow(symbols::mobius_symbol(0.5, 1e-14), 8, 1e-13);
  const auto b1 = conv_norm_bracket(T, 1.0);
  const auto b = conv_norm_bracket(T, 1.0 + 1e-9);
  EXPECT_NEAR(b.upper, b1.upper, 1e-6);
  EXPECT_NEAR(b.lower, b1.lower, 1e-6);
}

TEST(TestVectorTest, Examples) {
  EXPECT_NEAR(test_vector_lower(symbols::shift(7), 3.0), 1.0, 1e-14);
  EXPECT_NEAR(test_vector_lower(symbols::mobius_symbol(0.5, 1e-15), 1.0), 2.0, 1e-13);
  const auto TN = symbols::symbol_pow(symbols::mobius_symbol(0.5, 1e-15), 50, 1e-13);
  EXPECT_NEAR(test_vector_lower(TN, 2.0), 1.0, 1e-10);
  // 1 + z at p = 4: max(2^{1/4}, 2^{3/4})
  const auto T = symbols::from_symbol(FourierSeries(0, {1.0, 1.0}), "1+S");
  EXPECT_NEAR(test_vector_lower(T, 4.0), std::pow(2.0, 0.75), 1e-14);
}

TEST(SymbolSupTest, Examples) {
  EXPECT_NEAR(symbol_sup(symbols::from_symbol(FourierSeries(0, {0.5, 0.5}), "avg")), 1.0, 1e-12);
  EXPECT_NEAR(symbol_sup(symbols::mobius_symbol(0.3, 1e-14)), 1.0, 1e-12);
  // |1 + 0.5 z^3 e^{i phi}| peaks at 1.5 off the grid points
  const auto T = symbols::from_symbol(FourierSeries(0, {1.0, 0.0, 0.0, std::polar(0.5, 0.123)}), "x");
  EXPECT_NEAR(symbol_sup(T), 1.5, 1e-12);
}

TEST(HighamTest, ScalarAndIdentity) {
  EXPECT_NEAR(higham_lower(symbols::scalar(1.0), 3.0, 16, 4, 0), 1.0, 1e-12);
  EXPECT_NEAR(higham_lower(symbols::scalar(cplx(0.0, -2.5)), 1.7, 16, 4, 0), 2.5, 1e-12);
}

TEST(HighamTest, Validation) {
  EXPECT_THROW(higham_lower(symbols::shift(1), 1.0, 16, 4, 0), DomainError);
  EXPECT_THROW(higham_lower(symbols::shift(1), kInfinity, 16, 4, 0), DomainError);
  const auto T = symbols::from_symbol(FourierSeries(0, {1.0, 1.0, 1.0, 1.0}), "x");
  EXPECT_THROW(higham_lower(T, 3.0, 2, 4, 0), DomainError);
}

TEST(HighamTest, DenseMatrixAgainstRandomSearch) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  std::vector<double> A(9);
  for (auto& v : A) v = g(rng);
  for (double p : {1.5, 3.0}) {
    const double h = higham_lower(dense_matrix(3, 3, A), p, {.restarts = 8, .seed = 1});
    const double o = oracle::brute_force_pnorm(A, 3, p, 100000, 5);
    EXPECT_LE(h, o + 1e-8);
    EXPECT_GE(h, 0.95 * o);
  }
}

TEST(HighamTest, ConvolutionAgainstDenseSearch) {
  // random 5-coefficient symbol at p = 3 vs a dense random search on the
  // same truncation (window 64, output rows 68)
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  std::vector<cplx> c(5);
  for (auto& v : c) v = g(rng);
  const auto T = symbols::from_symbol(FourierSeries(0, c), "random");
  const double h = higham_lower(T, 3.0, 64, 8, 0);
  const auto ub = conv_norm_bracket(T, 3.0, {.use_higham = false});
  EXPECT_LE(h, ub.upper + 1e-8);

  const std::size_t W = 64;
  std::mt19937_64 rng2(9);
  double best = 0.0;
  const auto M = truncated_convolution(T.symbol, W);
  std::vector<cplx> x(W), y(M.rows);
  for (int s = 0; s < 20000; ++s) {
    // smooth random bumps reach the large-norm directions faster than white noise
    const double freq = std::uniform_real_distribution<double>(-3.2, 3.2)(rng2);
    const double width = std::uniform_real_distribution<double>(2.0, 30.0)(rng2);
    for (std::size_t i = 0; i < W; ++i) {
      const double t = (static_cast<double>(i) - 32.0) / width;
      x[i] = std::exp(-t * t) * std::polar(1.0, freq * static_cast<double>(i));
    }
    M.apply(x, y);
    best = std::max(best, sequence_lp_norm(y, 3.0) / sequence_lp_norm(x, 3.0));
  }
  EXPECT_GE(h, 0.95 * best);
}

TEST(TruncatedConvolutionTest, AdjointPairing) {
  const auto f = FourierSeries(0, {1.0, cplx(0.0, 2.0), -0.5});
  const auto M = truncated_convolution(f, 5);
  EXPECT_EQ(M.rows, 7u);
  std::vector<cplx> x{1.0, cplx(0, 1), 2.0, -1.0, 0.5};
  std::vector<cplx> y{0.3, -1.0, cplx(1, 1), 2.0, 0.0, 1.0, cplx(0, -2)};
  std::vector<cplx> Ax(7), Ay(5);
  M.apply(x, Ax);
  M.apply_adjoint(y, Ay);
  cplx lhs = 0.0, rhs = 0.0;
  for (std::size_t i = 0; i < 7; ++i) lhs += Ax[i] * std::conj(y[i]);
  for (std::size_t i = 0; i < 5; ++i) rhs += x[i] * std::conj(Ay[i]);
  EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-13);
}
