#include <gtest/gtest.h>

#include "helpers.hpp"
#include "slipmhd/conormal.hpp"

using namespace slipmhd;
using slipmhd::test::cube;
using slipmhd::test::kPi;

TEST(Conormal, Z1MultipliesModeByI) {
  auto g = cube(8);
  Field f(g, Parity::Even);
  f.coeffs()[g->spec_index(0, 1, 0)] = 1.0;
  f.coeffs()[g->spec_index(0, 7, 0)] = 1.0;
  const Field z = conormal_Z(f, 1);
  EXPECT_NEAR(std::abs(z.coeffs()[g->spec_index(0, 1, 0)] - Complex(0, 1)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(z.coeffs()[g->spec_index(0, 7, 0)] - Complex(0, -1)), 0.0, 1e-15);
}

TEST(Conormal, Z3OfLinearProfileIsPhi) {
  const double L3 = 2 * kPi;
  auto g = make_grid(4, 4, 128, 2 * kPi, 2 * kPi, L3);
  const Field f = sample_function([](double, double, double z) { return z; }, Parity::Even, g);
  const RealArray z = to_physical(conormal_Z(f, 3));
  // The even extension of x3 has kinks at both walls, so the band-limited
  // derivative oscillates node to node; neighbour averages remove that.
  for (int j = g->n3() / 8; j <= 7 * g->n3() / 8; ++j) {
    const double a = z[g->phys_index(j, 1, 2)], b = z[g->phys_index(j + 1, 1, 2)];
    const double want = 0.5 * (default_phi(g->x3(j), L3) + default_phi(g->x3(j + 1), L3));
    EXPECT_NEAR(a, default_phi(g->x3(j), L3), 3e-2) << j;
    EXPECT_NEAR(0.5 * (a + b), want, 2e-3) << j;
  }
  // Near the bottom wall the taper is negligible and phi ~ x3 / (1 + x3).
  const double x = g->x3(8);
  EXPECT_NEAR(default_phi(x, L3), x / (1 + x), 2e-2 * x);
}

TEST(Conormal, Z3VanishesAtWall) {
  auto g = cube(16);
  for (Parity p : {Parity::Even, Parity::Odd}) {
    const Field f = slipmhd::test::noise(g, p, 3);
    const Field z = conormal_Z(f, 3);
    EXPECT_EQ(z.parity(), p);
    const double xs1[] = {0.1, 2.0, 4.4}, xs2[] = {0.7, 5.9}, wall[] = {0.0};
    for (double v : evaluate(z.coeffs(), p, *g, xs1, xs2, wall)) EXPECT_LT(std::abs(v), 1e-10);
  }
}

TEST(Conormal, PhiShape) {
  EXPECT_EQ(default_phi(0.0, 3.0), 0.0);
  EXPECT_NEAR(default_phi(3.0, 3.0), 0.0, 1e-15);
  // phi'(0) = 1
  EXPECT_NEAR(default_phi(1e-7, 3.0) / 1e-7, 1.0, 1e-6);
  for (double x = 0.1; x < 3.0; x += 0.1) EXPECT_GT(default_phi(x, 3.0), 0.0);
}

TEST(Conormal, RejectsBadIndex) {
  auto g = cube(8);
  EXPECT_THROW(conormal_Z(Field(g, Parity::Even), 0), std::invalid_argument);
}

TEST(ConormalNorm, ZeroField) {
  auto g = cube(8);
  EXPECT_EQ(norm_co(Field(g, Parity::Odd), 3), 0.0);
  EXPECT_EQ(norm_tan(Field(g, Parity::Odd), 3), 0.0);
}

TEST(ConormalNorm, TangentialSingleMode) {
  auto g = cube(8);
  const double A = 0.8;
  const Field f = sample_function([A](double x, double, double) { return A * std::cos(x); },
                                  Parity::Even, g);
  const double vol = std::pow(2 * kPi, 3);
  EXPECT_NEAR(norm_tan(f, 1), (1.0 + 1.0) * A * A * vol / 2, 1e-12);
  // x3-independent: Z3 contributes nothing.
  EXPECT_NEAR(norm_co(f, 1), norm_tan(f, 1), 1e-12);
}

TEST(ConormalNorm, TableRouteAgrees) {
  auto g = make_grid(12, 10, 16, 2 * kPi, 2 * kPi, 4.0);
  const Z3Table table(*g);
  for (Parity p : {Parity::Even, Parity::Odd}) {
    const Field f = slipmhd::test::noise(g, p, 17);
    for (int m = 0; m <= 3; ++m) {
      const double a = norm_co(f, m), b = norm_co_table(f, m, table);
      EXPECT_NEAR(a, b, 1e-10 * a) << to_string(p) << " m=" << m;
    }
    for (int j = 1; j <= 3; ++j) {
      Field z = f;
      for (int r = 0; r < j; ++r) z = conormal_Z(z, 3);
      EXPECT_LT(l2(z - table.apply(f, j)), 1e-11 * l2(z));
    }
  }
}

TEST(ConormalNorm, HorizontalIndicesAtOrderThree) {
  // With d1 = d2 = identity on |k1| = |k2| = 1 modes and Z3 absent, every
  // multi-index without a Z3 factor contributes ||f||^2.
  auto g = cube(8);
  const Field f = sample_function(
      [](double x, double y, double) { return std::cos(x) * std::cos(y); }, Parity::Even, g);
  EXPECT_NEAR(norm_co(f, 3), 10.0 * l2_sq(f), 1e-10 * l2_sq(f));
  EXPECT_NEAR(norm_tan(f, 3), 10.0 * l2_sq(f), 1e-10 * l2_sq(f));
}

TEST(ConormalNorm, ChainAndMonotonicity) {
  auto g = cube(12);
  const VectorField v = slipmhd::test::solenoidal(g, 5);
  double prev_tan = 0.0, prev_co = 0.0;
  for (int m = 0; m <= 4; ++m) {
    const double t = norm_tan(v, m), c = norm_co(v, m);
    EXPECT_LE(t, c * (1 + 1e-14));
    EXPECT_GE(t, prev_tan);
    EXPECT_GE(c, prev_co);
    prev_tan = t;
    prev_co = c;
  }
}

TEST(ConormalNorm, ZStackMatchesExplicitDerivatives) {
  auto g = cube(12);
  const Field f = slipmhd::test::noise(g, Parity::Odd, 2);
  const ZStack z(f, 2);
  EXPECT_NEAR(z.co(2, 1, 0), norm_co(derivative(f, 1), 2), 1e-10 * z.co(2, 1, 0));
  EXPECT_NEAR(z.tan(3, 0, 1), norm_tan(derivative(f, 2), 3), 1e-10 * z.tan(3, 0, 1));
  EXPECT_THROW(z.co(3), std::invalid_argument);
}

TEST(Lambda, UnitWavenumberMultiplierIsOne) {
  auto g = cube(8);
  Field f(g, Parity::Even);
  f.coeffs()[g->spec_index(2, 1, 0)] = Complex(0.3, 0.1);
  f.coeffs()[g->spec_index(2, 7, 0)] = Complex(0.3, -0.1);
  for (double s : {-0.95, 0.5, 2.0})
    EXPECT_LT(l2(lambda_h(f, s) - f), 1e-15);
}

TEST(Lambda, IndexTwoMultiplier) {
  auto g = cube(8);
  Field f(g, Parity::Odd);
  const std::size_t idx = g->spec_index(1, 2, 0);
  f.coeffs()[idx] = 1.0;
  f.coeffs()[g->spec_index(1, 6, 0)] = 1.0;
  EXPECT_NEAR(lambda_h(f, -0.95).coeffs()[idx].real(), std::pow(2.0, -0.95), 1e-15);
}

TEST(Lambda, InverseOnZeroMean) {
  auto g = make_grid(12, 12, 8, 3.0, 5.0, 2.0);
  const Field f = slipmhd::test::noise(g, Parity::Even, 9, true);
  EXPECT_LT(l2(lambda_h(lambda_h(f, 0.95), -0.95) - f), 1e-12 * l2(f));
  EXPECT_NEAR(lambda_sq(f, -0.7), l2_sq(lambda_h(f, -0.7)), 1e-12 * l2_sq(f));
}

TEST(Lambda, NegativeExponentNeedsZeroMean) {
  auto g = cube(8);
  const Field f = slipmhd::test::noise(g, Parity::Even, 9, false);
  EXPECT_THROW(lambda_h(f, -0.5), std::invalid_argument);
  EXPECT_NO_THROW(lambda_h(f, 0.5));
}

TEST(Lambda, MultiplierIsRealAndRadial) {
  auto g = cube(8);
  const Field f = slipmhd::test::noise(g, Parity::Even, 4, true);
  const Field h = lambda_h(f, -0.95);
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    if (std::abs(f.coeffs()[i]) == 0.0) continue;
    const Complex r = h.coeffs()[i] / f.coeffs()[i];
    EXPECT_LT(std::abs(r.imag()), 1e-15);
    EXPECT_GT(r.real(), 0.0);
  }
}

TEST(Sigma, Examples) {
  EXPECT_DOUBLE_EQ(sigma_index(13.0 / 14.0), 13.0 / 14.0);
  EXPECT_NEAR(sigma_index(0.95), 0.95 - 0.3 / 6.3, 1e-15);
}
