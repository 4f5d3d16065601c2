#include <gtest/gtest.h>

#include "helpers.hpp"
#include "slipmhd/diagnostics.hpp"

using namespace slipmhd;
using slipmhd::test::kPi;

TEST(EnergyReport, ZeroTrajectory) {
  auto g = slipmhd::test::cube(8);
  const MhdState z = zero_state(g, ModelVariant::mhd(0.1));
  std::vector<Sample> s{measure(z, 3, 0.95)};
  MhdState z1 = z;
  z1.t = 0.5;
  s.push_back(measure(z1, 3, 0.95));
  for (const EnergyReport& r : energy_report(s)) {
    EXPECT_EQ(r.E1, 0.0);
    EXPECT_EQ(r.E2, 0.0);
    EXPECT_EQ(r.G, 0.0);
    EXPECT_EQ(r.X, 0.0);
  }
  EXPECT_EQ(weighted_dissipation(s, 0.9).horizontal, 0.0);
}

TEST(EnergyReport, SingleSampleHasNoIntegrals) {
  auto g = slipmhd::test::cube(8);
  MhdState st{slipmhd::test::solenoidal(g, 1), slipmhd::test::solenoidal(g, 2), 0.0,
              ModelVariant::mhd(0.1)};
  const Sample s = measure(st, 3, 0.95);
  const auto r = energy_report({s});
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].E1, s.e1_state);
  EXPECT_EQ(r[0].E2, s.e2_state);
  EXPECT_EQ(r[0].E, s.e1_state + s.e2_state);
  EXPECT_EQ(r[0].G, 0.0);
  EXPECT_EQ(r[0].X, s.x_state);
}

TEST(EnergyReport, RejectsNonMonotoneTimes) {
  Sample a, b;
  a.t = 1.0;
  b.t = 1.0;
  EXPECT_THROW(energy_report({a, b}), std::invalid_argument);
  EXPECT_THROW(weighted_dissipation({b, a}, 0.5), std::invalid_argument);
}

TEST(EnergyReport, PureDissipationClosedForm) {
  // u = A e^{-eps t} cos x3 solves the viscous systems with B = 0.
  auto g = slipmhd::test::cube(8);
  const double A = 0.2, eps = 0.3, T = 2.0;
  const int n = 400;
  std::vector<Sample> samples;
  for (int k = 0; k <= n; ++k) {
    const double t = T * k / n;
    MhdState st = zero_state(g, ModelVariant::mhd(eps));
    st.t = t;
    const double a = A * std::exp(-eps * t);
    st.u[0] = sample_function([a](double, double, double z) { return a * std::cos(z); },
                              Parity::Even, g);
    samples.push_back(measure(st, 3, 0.95));
  }
  const double v = std::pow(2 * kPi, 3) / 2;
  const double want = A * A * v * (1.0 + (1.0 - std::exp(-2 * eps * T)));
  const double got = energy_report(samples).back().E1;
  EXPECT_NEAR(got, want, 1e-5 * want);
}

TEST(WeightedDissipation, ConstantIntegrand) {
  std::vector<Sample> s(101);
  for (int k = 0; k <= 100; ++k) {
    s[k].t = 0.1 * k;
    s[k].ns_dh = 2.0;
    s[k].ns_d3 = 3.0;
    s[k].eps = 0.5;
  }
  const double sigma = sigma_index(0.95);
  const double exact = (std::pow(11.0, 1 + sigma) - 1.0) / (1 + sigma);
  const auto w = weighted_dissipation(s, sigma);
  EXPECT_NEAR(w.horizontal, 2.0 * exact, 1e-3 * exact);
  EXPECT_NEAR(w.vertical, 1.5 * exact, 1e-3 * exact);
}

TEST(Measure, MagneticEntriesVanishForNavierStokes) {
  auto g = slipmhd::test::cube(8);
  MhdState st{slipmhd::test::solenoidal(g, 4), std::nullopt, 0.0, ModelVariant::ns(0.1)};
  const Sample s = measure(st, 3, 0.95);
  EXPECT_EQ(s.l2_B, 0.0);
  EXPECT_EQ(s.g_rate, 0.0);
  EXPECT_NEAR(s.l2_u, l2_sq(st.u), 1e-13 * s.l2_u);
  EXPECT_NEAR(s.co_u, norm_co(st.u, 3), 1e-12 * s.co_u);
  EXPECT_NEAR(s.tan_u, norm_tan(st.u, 3), 1e-12 * s.tan_u);
  EXPECT_LE(s.tan_u, s.co_u);
}
