#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "htlab/errors.hpp"
#include "htlab/toeplitz.hpp"
#include "oracles.hpp"

using namespace htlab;

namespace {

PowerSeries normalized(cplx a2, cplx a3, int order = 4) {
  std::vector<cplx> c(static_cast<std::size_t>(order + 1));
  c[1] = 1.0;
  c[2] = a2;
  c[3] = a3;
  return PowerSeries(c);
}

PowerSeries koebe(int order) {
  std::vector<cplx> c;
  for (int n = 0; n <= order; ++n) c.push_back(static_cast<double>(n));
  return PowerSeries(c);
}

}  // namespace

TEST(Build, KoebeQ2N2) {
  const auto m = build(koebe(4), 2, 2);
  EXPECT_EQ(m.size(), 2);
  EXPECT_EQ(m.start_index(), 2);
  EXPECT_EQ(m(0, 0), cplx(2.0));
  EXPECT_EQ(m(0, 1), cplx(3.0));
  EXPECT_EQ(m(1, 0), cplx(3.0));
  EXPECT_EQ(m(1, 1), cplx(2.0));
  EXPECT_DOUBLE_EQ(det(m), -5.0);
}

TEST(Build, LowerTriangleIsConjugated) {
  const auto f = normalized({0.3, 0.4}, {-0.1, 0.7});
  const auto m = build(f, 3, 1);
  EXPECT_TRUE(m.is_hermitian());
  EXPECT_EQ(m(0, 2), f[3]);
  EXPECT_EQ(m(2, 0), std::conj(f[3]));
  EXPECT_EQ(m(1, 0), std::conj(f[2]));
}

TEST(Build, Errors) {
  EXPECT_THROW(build(koebe(2), 3, 1), OrderError);
  EXPECT_THROW(build(koebe(4), 0, 1), DomainError);
  EXPECT_THROW(build(koebe(4), 2, 0), DomainError);
}

TEST(Det, RejectsNonHermitian) {
  const HermitianToeplitzMatrix m(2, 1, {1.0, cplx(0.0, 1.0), cplx(0.0, 1.0), 1.0});
  EXPECT_THROW(det(m), StructureError);
}

TEST(Det, AgreesWithLeibnizExpansion) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<cplx> c(9);
    c[1] = 1.0;
    for (int n = 2; n <= 8; ++n) c[static_cast<std::size_t>(n)] = oracle::random_in_disc(rng, 3.0);
    const PowerSeries f(c);
    for (int q = 1; q <= 4; ++q) {
      const auto m = build(f, q, 1);
      const cplx ref = oracle::leibniz_det(m.entries(), q);
      EXPECT_NEAR(det(m), ref.real(), 1e-10 * std::max(1.0, std::abs(ref)));
      EXPECT_NEAR(ref.imag(), 0.0, 1e-9 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST(ClosedForms, KnownValues) {
  EXPECT_DOUBLE_EQ(t2(koebe(4)), -3.0);
  EXPECT_DOUBLE_EQ(t3(koebe(4)), 8.0);
  EXPECT_DOUBLE_EQ(t2(PowerSeries::identity(4)), 1.0);
  EXPECT_DOUBLE_EQ(t3(PowerSeries::identity(4)), 1.0);
  // f1 = z + z^2: a2 = 1, a3 = 0
  EXPECT_DOUBLE_EQ(t3(1.0, 0.0), -1.0);
}

TEST(ClosedForms, MatchTheMatrixDeterminant) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 500; ++trial) {
    const auto f = normalized(oracle::random_in_disc(rng, 2.0), oracle::random_in_disc(rng, 3.0));
    EXPECT_NEAR(t2(f), det(build(f, 2, 1)), 1e-12 * std::max(1.0, std::abs(t2(f))));
    EXPECT_NEAR(t3(f), det(build(f, 3, 1)), 1e-12 * std::max(1.0, std::abs(t3(f))));
  }
}

TEST(ClosedForms, FactoredIdentity) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 2000; ++trial) {
    const cplx a2 = oracle::random_in_disc(rng, 2.0);
    const cplx a3 = oracle::random_in_disc(rng, 3.0);
    const double x = std::norm(a2);
    const double factored = (x - 1) * (x - 1) - std::norm(a3 - a2 * a2);
    const double direct = t3(a2, a3);
    EXPECT_LE(std::abs(direct - factored), 1e-12 * std::max(1.0, std::abs(factored)));
  }
}

TEST(ClosedForms, RotationInvariant) {
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  for (int trial = 0; trial < 500; ++trial) {
    const auto f = normalized(oracle::random_in_disc(rng, 2.0), oracle::random_in_disc(rng, 3.0), 6);
    const auto g = rotate(f, angle(rng));
    EXPECT_NEAR(t2(g), t2(f), 1e-12 * std::max(1.0, std::abs(t2(f))));
    EXPECT_NEAR(t3(g), t3(f), 1e-12 * std::max(1.0, std::abs(t3(f))));
  }
}

TEST(T3Bounds, ClassInstances) {
  const auto s = t3_bounds(problem_univalent());
  EXPECT_NEAR(s.lo, -1.0, 1e-12);
  EXPECT_NEAR(s.hi, 8.0, 1e-12);

  const auto u = t3_bounds(problem_usub(0.75));
  EXPECT_NEAR(u.hi, 945.0 / 256.0, 1e-12);
  EXPECT_NEAR(u.lo, -9.0 / 16.0, 1e-12);

  const auto g = t3_bounds(problem_g1());
  EXPECT_NEAR(g.lo, 0.5, 1e-12);
  EXPECT_NEAR(g.hi, 1.0, 1e-12);

  const auto c = t3_bounds(problem_convex());
  EXPECT_NEAR(c.lo, 0.0, 1e-12);
  EXPECT_NEAR(c.hi, 1.0, 1e-12);
}

TEST(T3Bounds, UsubUpperIsThePiecewiseMaximum) {
  for (double l = 0.05; l <= 1.0; l += 0.05) {
    const auto b = t3_bounds(problem_usub(l));
    EXPECT_NEAR(b.hi, usub_t3_upper(l), 1e-12) << l;
    EXPECT_NEAR(b.lo, -l * l, 1e-12) << l;
  }
}

TEST(T3Bounds, AgreeWithBruteForce) {
  std::mt19937_64 rng(25);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 15; ++trial) {
    CoeffBoundProblem p{2.0 * u(rng), 3.0 * u(rng), ErrorProfile::affine(2.0 * u(rng), u(rng) - 0.5)};
    const double X = p.a2_max * p.a2_max;
    if (p.e(X) < 0) p.e.e1 = 0.0;
    const auto b = t3_bounds(p);
    const auto ref = oracle::brute_t3_bounds(p.a2_max, p.a3_max, p.e.e0, p.e.e1);
    EXPECT_NEAR(b.lo, ref.lo, 1e-6);
    EXPECT_NEAR(b.hi, ref.hi, 1e-6);
  }
}

TEST(T3Bounds, DetailReportsTheBranch) {
  const auto d = t3_bounds_detail(problem_univalent());
  EXPECT_EQ(d.hi_branch, UpperBranch::Endpoint);
  EXPECT_DOUBLE_EQ(d.hi_at_x, 4.0);
  const auto g = t3_bounds_detail(problem_g1());
  EXPECT_DOUBLE_EQ(g.hi_at_x, 0.0);
}

TEST(T3Bounds, Validation) {
  EXPECT_THROW(t3_bounds({-1.0, 1.0, ErrorProfile::constant(1.0)}), DomainError);
  EXPECT_THROW(t3_bounds({1.0, NAN, ErrorProfile::constant(1.0)}), DomainError);
  EXPECT_THROW(t3_bounds({2.0, 1.0, ErrorProfile::affine(1.0, -1.0)}), DomainError);
  EXPECT_NO_THROW(t3_bounds({0.0, 0.0, ErrorProfile::constant(0.0)}));
}

TEST(T2Bounds, Range) {
  const auto b = t2_bounds(problem_univalent());
  EXPECT_DOUBLE_EQ(b.lo, -3.0);
  EXPECT_DOUBLE_EQ(b.hi, 1.0);
}

TEST(Lambda0, RootAndBracket) {
  const double l = lambda0();
  EXPECT_NEAR(l * l * (1 + l) * (3 + l), 1.0, 1e-11);
  EXPECT_GE(lambda0(1e-6), 0.447615);
  EXPECT_LE(lambda0(1e-6), 0.447625);
  EXPECT_THROW(lambda0(0.0), DomainError);
  EXPECT_THROW(lambda0(1e-2), DomainError);
}

TEST(BoundReport, Json) {
  const BoundReport r{problem_usub(0.75), t3_bounds(problem_usub(0.75)), true};
  const auto j = to_json(r);
  EXPECT_DOUBLE_EQ(j["problem"]["A2"].get<double>(), 1.75);
  EXPECT_DOUBLE_EQ(j["hi"].get<double>(), 945.0 / 256.0);
  EXPECT_TRUE(j["lambda0_used"].get<bool>());
}

TEST(Build, KoebeQ3AndIdentity) {
  const auto m = build(koebe(4), 3, 1);
  EXPECT_EQ(m(0, 0), cplx(1.0));
  EXPECT_EQ(m(0, 1), cplx(2.0));
  EXPECT_EQ(m(0, 2), cplx(3.0));
  EXPECT_EQ(m(2, 1), cplx(2.0));
  EXPECT_DOUBLE_EQ(det(m), 8.0);
  const auto id = build(PowerSeries::identity(3), 2, 1);
  EXPECT_EQ(id.entries(), (std::vector<cplx>{1.0, 0.0, 0.0, 1.0}));
  EXPECT_DOUBLE_EQ(det(build(PowerSeries::identity(4), 3, 1)), 1.0);
}

TEST(ClosedForms, F2AtOneHalf) { EXPECT_DOUBLE_EQ(t3(1.0, 0.5), -0.25); }

TEST(Lambda0, CoarseToleranceAndDeterminism) {
  const double l = lambda0(1e-5);
  EXPECT_NEAR(l, 0.44762, 1e-5);
  EXPECT_NEAR(l * l * (1 + l) * (3 + l) - 1.0, 0.0, 1e-4);
  EXPECT_EQ(lambda0(1e-12), lambda0(1e-12));
}
