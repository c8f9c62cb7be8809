#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "htlab/errors.hpp"
#include "htlab/series.hpp"
#include "htlab/series_io.hpp"
#include "oracles.hpp"

using namespace htlab;

namespace {

PowerSeries random_series(std::mt19937_64& rng, int order, double radius = 1.0) {
  std::vector<cplx> c;
  for (int n = 0; n <= order; ++n) c.push_back(oracle::random_in_disc(rng, radius));
  return PowerSeries(std::move(c));
}

PowerSeries koebe(int order) {
  const cplx num[] = {0.0, 1.0};
  const cplx den[] = {1.0, -2.0, 1.0};
  return from_rational(num, den, order);
}

void expect_coeffs(const PowerSeries& s, std::initializer_list<cplx> expected, double tol = 1e-15) {
  ASSERT_EQ(s.order() + 1, static_cast<int>(expected.size()));
  int n = 0;
  for (const auto& e : expected) {
    EXPECT_NEAR(s[n].real(), e.real(), tol) << "n=" << n;
    EXPECT_NEAR(s[n].imag(), e.imag(), tol) << "n=" << n;
    ++n;
  }
}

}  // namespace

TEST(PowerSeries, RejectsBadOrdersAndNonFiniteCoefficients) {
  EXPECT_THROW(PowerSeries(0), OrderError);
  EXPECT_THROW(PowerSeries(PowerSeries::kMaxOrder + 1), OrderError);
  EXPECT_THROW(PowerSeries(std::vector<cplx>{1.0, {NAN, 0.0}}), DomainError);
  EXPECT_THROW(PowerSeries(std::vector<cplx>{1.0, {0.0, INFINITY}}), DomainError);
  EXPECT_TRUE(PowerSeries::identity(4).is_normalized());
  EXPECT_FALSE(PowerSeries::constant(1.0, 4).is_normalized());
}

TEST(FromRational, KoebeHasCoefficientsN) { expect_coeffs(koebe(4), {0, 1, 2, 3, 4}); }

TEST(FromRational, F1Expansion) {
  const cplx num[] = {0.0, 1.0};
  const cplx den[] = {1.0, -1.0, 1.0};
  expect_coeffs(from_rational(num, den, 4), {0, 1, 1, 0, -1});
}

TEST(FromRational, ConstantOne) {
  const cplx one[] = {1.0};
  expect_coeffs(from_rational(one, one, 2), {1, 0, 0});
}

TEST(FromRational, Errors) {
  const cplx num[] = {0.0, 1.0};
  const cplx pole[] = {0.0, 1.0};
  const cplx den[] = {1.0};
  EXPECT_THROW(from_rational(num, pole, 4), DomainError);
  EXPECT_THROW(from_rational(num, den, 0), OrderError);
}

TEST(Mul, SmallProducts) {
  const PowerSeries a(std::vector<cplx>{1.0, 1.0, 0.0});
  const PowerSeries b(std::vector<cplx>{1.0, -1.0, 0.0});
  expect_coeffs(mul(a, b), {1, 0, -1});
  const PowerSeries z = PowerSeries::identity(3);
  expect_coeffs(mul(z, z), {0, 0, 1, 0});
}

TEST(Mul, GeometricSquaredMatchesBinomialOracle) {
  const cplx one[] = {1.0};
  const cplx den[] = {1.0, -1.0};
  const PowerSeries g = from_rational(one, den, 3);
  const auto expected = oracle::inverse_power_of_one_minus_z(2, 3);
  const PowerSeries sq = mul(g, g);
  for (int n = 0; n <= 3; ++n) EXPECT_DOUBLE_EQ(sq[n].real(), expected[static_cast<std::size_t>(n)]);
}

TEST(Mul, MismatchedOrdersThrow) {
  EXPECT_THROW(mul(PowerSeries(3), PowerSeries(4)), OrderError);
  EXPECT_THROW(PowerSeries(3) + PowerSeries(4), OrderError);
}

TEST(Mul, CommutativeAndAssociative) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_series(rng, 24), b = random_series(rng, 24), c = random_series(rng, 24);
    const auto ab = mul(a, b), ba = mul(b, a);
    const auto l = mul(mul(a, b), c), r = mul(a, mul(b, c));
    for (int n = 0; n <= 24; ++n) {
      EXPECT_LE(std::abs(ab[n] - ba[n]), 1e-12 * std::max(1.0, std::abs(ab[n])));
      EXPECT_LE(std::abs(l[n] - r[n]), 1e-12 * std::max(1.0, std::abs(l[n])));
    }
  }
}

TEST(Reciprocal, KnownExpansions) {
  expect_coeffs(reciprocal(PowerSeries(std::vector<cplx>{1.0, -1.0, 0.0, 0.0})), {1, 1, 1, 1});
  expect_coeffs(reciprocal(PowerSeries::constant(1.0, 2)), {1, 0, 0});
  // (1 - z)^2 = 1 - 2z + z^2; checked by multiplying back
  const PowerSeries sq(std::vector<cplx>{1.0, -2.0, 1.0, 0.0});
  const PowerSeries r = reciprocal(sq);
  expect_coeffs(r, {1, 2, 3, 4});
  expect_coeffs(mul(sq, r), {1, 0, 0, 0});
  EXPECT_THROW(reciprocal(PowerSeries::identity(3)), DomainError);
}

TEST(Reciprocal, MultipliesBackToOne) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = random_series(rng, 32);
    // |a_0| >= 0.1 with moderate higher terms keeps the inverse well conditioned
    std::vector<cplx> c(a.coeffs().begin(), a.coeffs().end());
    c[0] = std::polar(0.1 + 0.9 * std::abs(c[0]), std::arg(c[0]) + 1.0);
    for (std::size_t n = 1; n < c.size(); ++n) c[n] *= std::abs(c[0]) * std::pow(0.5, static_cast<double>(n));
    a = PowerSeries(c);
    const auto p = mul(a, reciprocal(a));
    EXPECT_NEAR(std::abs(p[0] - 1.0), 0.0, 1e-12);
    for (int n = 1; n <= 32; ++n) EXPECT_LE(std::abs(p[n]), 1e-12) << "n=" << n;
  }
}

TEST(Calculus, DerivativeAndIntegral) {
  expect_coeffs(derivative(PowerSeries(std::vector<cplx>{0.0, 1.0, 1.0, 0.0})), {1, 2, 0, 0});
  expect_coeffs(integrate_from_zero(PowerSeries(std::vector<cplx>{1.0, 0.0, 0.0})), {0, 1, 0});
}

TEST(Calculus, DerivativeUndoesIntegrationBelowTheTopIndex) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_series(rng, 20);
    const auto back = derivative(integrate_from_zero(a));
    for (int n = 0; n < 20; ++n) EXPECT_LE(std::abs(back[n] - a[n]), 1e-14 * std::max(1.0, std::abs(a[n])));
    EXPECT_EQ(back[20], cplx{});  // c_N is dropped by the keep-order policy
  }
}

TEST(Exp, KnownExpansions) {
  expect_coeffs(exp(PowerSeries(3)), {1, 0, 0, 0});
  expect_coeffs(exp(PowerSeries::identity(3)), {1, 1, 0.5, 1.0 / 6.0}, 1e-16);
  EXPECT_THROW(exp(PowerSeries::constant(1.0, 3)), DomainError);
}

TEST(Exp, SumBecomesProduct) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    auto a = random_series(rng, 24, 0.5);
    auto b = random_series(rng, 24, 0.5);
    a -= PowerSeries::constant(a[0], 24);
    b -= PowerSeries::constant(b[0], 24);
    const auto lhs = exp(a + b);
    const auto rhs = mul(exp(a), exp(b));
    for (int n = 0; n <= 24; ++n) EXPECT_LE(std::abs(lhs[n] - rhs[n]), 1e-12 * std::max(1.0, std::abs(lhs[n])));
  }
}

TEST(Rotate, KoebeByPi) {
  const auto k = koebe(6);
  const auto r = rotate(k, std::numbers::pi);
  EXPECT_NEAR(r[2].real(), -2.0, 1e-15);
  EXPECT_NEAR(r[3].real(), 3.0, 1e-15);
  EXPECT_NEAR(r[2].imag(), 0.0, 1e-15);
  EXPECT_EQ(rotate(k, 0.0), k);
  EXPECT_THROW(rotate(PowerSeries::constant(1.0, 3), 0.3), DomainError);
}

TEST(Rotate, PreservesModuliNormalizationAndInverts) {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> angle(-10.0, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<cplx> c(17);
    c[1] = 1.0;
    for (int n = 2; n <= 16; ++n) c[static_cast<std::size_t>(n)] = oracle::random_in_disc(rng, n);
    const PowerSeries f(c);
    const double th = angle(rng);
    const auto g = rotate(f, th);
    EXPECT_TRUE(g.is_normalized());
    const auto back = rotate(g, -th);
    for (int n = 0; n <= 16; ++n) {
      EXPECT_NEAR(std::abs(g[n]), std::abs(f[n]), 1e-15 * std::max(1.0, std::abs(f[n])));
      EXPECT_LE(std::abs(back[n] - f[n]), 1e-13 * std::max(1.0, std::abs(f[n])));
    }
  }
}

TEST(Evaluate, KoebeClosedForm) {
  const auto k = koebe(64);
  EXPECT_EQ(evaluate(k, 0.0).value, cplx{});
  const auto e = evaluate(k, 0.5);
  const double closed = 0.5 / (0.5 * 0.5);
  EXPECT_NEAR(e.value.real(), closed, 1e-15 + e.tail_bound);
  EXPECT_LT(e.tail_bound, 1e-15);
  EXPECT_EQ(evaluate(PowerSeries::identity(8), cplx(0.0, 0.3)).value, cplx(0.0, 0.3));
}

TEST(Evaluate, TailBoundAndTrustRegion) {
  const auto k = koebe(32);
  const double r = 0.6;
  EXPECT_DOUBLE_EQ(evaluate(k, r).tail_bound, 32.0 * std::pow(r, 33) / (1.0 - r));
  EXPECT_THROW(evaluate(k, 0.995), TrustRegionError);
  EXPECT_NO_THROW(evaluate(k, 0.995, 0.999));
  const double rt = trusted_radius(k, 1e-7);
  EXPECT_LE(tail_bound(k, rt), 1e-7);
  EXPECT_GT(tail_bound(k, rt + 1e-6), 1e-7);
}

TEST(Resize, TruncatesAndPads) {
  const auto k = koebe(6);
  expect_coeffs(k.resized(3), {0, 1, 2, 3});
  expect_coeffs(k.resized(3).resized(5), {0, 1, 2, 3, 0, 0});
  EXPECT_THROW(shift_down(k, 2), DomainError);
  expect_coeffs(shift_down(k), {1, 2, 3, 4, 5, 6});
}

TEST(SeriesIo, CsvAndJsonRestoreEveryBit) {
  std::mt19937_64 rng(16);
  const auto s = random_series(rng, 12);
  EXPECT_EQ(series_from_csv(to_csv(s)), s);
  EXPECT_EQ(series_from_json(to_json(s)), s);
  EXPECT_EQ(to_csv(PowerSeries::identity(1)), "n,re,im\n0,0,0\n1,1,0\n");
  EXPECT_EQ(to_json(PowerSeries::identity(1)).dump(), "[[0.0,0.0],[1.0,0.0]]");
  EXPECT_THROW(series_from_csv("n,re,im\n0,1,0\n2,1,0\n"), DomainError);
  EXPECT_THROW(series_from_json(nlohmann::json::parse("[[1,2,3]]")), DomainError);
}
