#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"
#include "slipmhd/fd_solver.hpp"
#include "slipmhd/solver.hpp"

namespace slipmhd {
namespace {

using test::kPi;

GridPtr slab(int n) { return make_grid(n, n, n / 2, 2 * kPi, 2 * kPi, kPi); }
FdMesh mesh(int n) { return make_fd_mesh(n, n, n / 2, 2 * kPi, 2 * kPi, kPi); }

MhdState single(const GridPtr& g, ModelVariant v,
                const std::function<double(double, double, double)>& u1) {
  MhdState s = zero_state(g, v);
  s.u[0] = sample_function(u1, Parity::Even, g);
  return s;
}

double decay_error(int n, ModelVariant v, const std::function<double(double, double, double)>& f,
                   double rate, double T) {
  const GridPtr g = slab(16);
  const MhdState s0 = single(g, v, f);
  FdState fd = fd_sample(s0, mesh(n));
  fd_run(fd, T, 0.5 * fd_stable_dt(fd.mesh, v));
  MhdState exact = s0;
  exact.u *= std::exp(-rate * T);
  return fd_difference(fd, exact) / l2(exact.u);
}

TEST(FdSolver, MeshValidation) {
  EXPECT_THROW(make_fd_mesh(2, 8, 4, 1, 1, 1), std::invalid_argument);
  EXPECT_THROW(make_fd_mesh(8, 8, 4, 1, -1, 1), std::invalid_argument);
  const FdMesh m = mesh(8);
  EXPECT_EQ(m.size(3), 5u * 64u);
  EXPECT_DOUBLE_EQ(m.xs3(3).back(), kPi);
  EXPECT_DOUBLE_EQ(m.xs1(2)[0], 0.5 * m.h1());
}

TEST(FdSolver, ShearDecaySecondOrder) {
  auto f = [](double, double b, double) { return std::sin(b); };
  const double e1 = decay_error(8, ModelVariant::ns(0.1), f, 1.0, 0.5);
  const double e2 = decay_error(16, ModelVariant::ns(0.1), f, 1.0, 0.5);
  EXPECT_LT(e2, 1e-2);
  EXPECT_GT(std::log2(e1 / e2), 1.8);
}

TEST(FdSolver, VerticalModeDecaysAtEpsilon) {
  auto f = [](double, double, double c) { return std::cos(c); };
  const double eps = 0.1;
  const double e1 = decay_error(8, ModelVariant::ns(eps), f, eps, 0.5);
  const double e2 = decay_error(16, ModelVariant::ns(eps), f, eps, 0.5);
  EXPECT_LT(e2, 1e-3);
  EXPECT_GT(std::log2(e1 / e2), 1.8);
}

TEST(FdSolver, ProjectionIsDivergenceFree) {
  const GridPtr g = slab(16);
  MhdState s = zero_state(g, ModelVariant::mhd(0.1));
  s.u = test::solenoidal(g, 1, true);
  s.B = test::solenoidal(g, 2, true);
  const FdState fd = fd_sample(s, mesh(12));
  for (const FdVector* v : {&fd.u, &*fd.B}) {
    double m = 0.0;
    for (double d : fd_divergence(fd.mesh, *v)) m = std::max(m, std::abs(d));
    EXPECT_LT(m, 1e-9);
  }
  FdVector copy = fd.u;
  fd_project(fd.mesh, copy);
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < copy.c[c].size(); ++i)
      EXPECT_NEAR(copy.c[c][i], fd.u.c[c][i], 1e-12);
}

TEST(FdSolver, TracksSpectralSolver) {
  const GridPtr g = slab(16);
  std::mt19937_64 rng(7);
  RandomSpec spec;
  spec.band_h = 2;
  spec.band_z = 2;
  MhdState s = zero_state(g, ModelVariant::mhd(0.1));
  s.u = random_solenoidal(g, rng, spec);
  s.B = random_solenoidal(g, rng, spec);
  const double a = 0.2 / std::sqrt(l2_sq(s.u) + l2_sq(*s.B));
  s.u *= a;
  *s.B *= a;
  const double T = 0.1;
  const Trajectory tr = run(s, T, 1e-3, 1000);
  double e[2];
  for (int level = 0; level < 2; ++level) {
    FdState fd = fd_sample(s, mesh(8 << level));
    fd_run(fd, T, 0.5 * fd_stable_dt(fd.mesh, s.variant));
    e[level] = fd_difference(fd, tr.final_state);
  }
  EXPECT_GT(std::log2(e[0] / e[1]), 1.7);
}

}  // namespace
}  // namespace slipmhd
