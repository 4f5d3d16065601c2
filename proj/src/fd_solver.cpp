#include "slipmhd/fd_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace slipmhd {

std::vector<double> FdMesh::xs1(int c) const {
  std::vector<double> x(n1);
  for (int i = 0; i < n1; ++i) x[i] = (i + (c == 1 ? 0.0 : 0.5)) * h1();
  return x;
}

std::vector<double> FdMesh::xs2(int c) const {
  std::vector<double> x(n2);
  for (int j = 0; j < n2; ++j) x[j] = (j + (c == 2 ? 0.0 : 0.5)) * h2();
  return x;
}

std::vector<double> FdMesh::xs3(int c) const {
  std::vector<double> x(levels(c));
  for (int k = 0; k < levels(c); ++k) x[k] = (k + (c == 3 ? 0.0 : 0.5)) * h3();
  return x;
}

FdMesh make_fd_mesh(int n1, int n2, int n3, double L1, double L2, double L3) {
  if (n1 < 4 || n2 < 4 || n3 < 2)
    throw std::invalid_argument("make_fd_mesh: need at least 4 x 4 x 2 cells");
  if (!(L1 > 0 && L2 > 0 && L3 > 0))
    throw std::invalid_argument("make_fd_mesh: lengths must be positive");
  return FdMesh{n1, n2, n3, L1, L2, L3};
}

namespace {

FdVector zeros(const FdMesh& m) {
  FdVector v;
  for (int c = 0; c < 3; ++c) v.c[c].assign(m.size(c + 1), 0.0);
  return v;
}

// Read access with periodic wrap horizontally and the slip reflections
// vertically: horizontal components are mirrored about the walls, the
// vertical one is odd about them.
struct View {
  const FdMesh& m;
  const std::vector<double>& a;
  int comp;

  double operator()(int k, int i, int j) const {
    i = (i % m.n1 + m.n1) % m.n1;
    j = (j % m.n2 + m.n2) % m.n2;
    if (comp == 3) {
      if (k < 0) return -a[m.index(-k, i, j)];
      if (k > m.n3) return -a[m.index(2 * m.n3 - k, i, j)];
      return a[m.index(k, i, j)];
    }
    if (k < 0) k = -k - 1;
    if (k >= m.n3) k = 2 * m.n3 - 1 - k;
    return a[m.index(k, i, j)];
  }
};

// Offsets (in half cells) from component c's points to component d's
// neighbours: component d sits at +-1/2 along every axis where the two
// staggerings differ.
double interp(const FdMesh& m, const FdVector& v, int c, int d, int k, int i, int j) {
  if (c == d) return View{m, v.c[d - 1], d}(k, i, j);
  // Shift of component d's index relative to component c's along each axis:
  // along the axis of c, d's points are at +1/2 (index i and i-1 straddle);
  // along the axis of d, d's points are at -1/2 from c's (index j and j+1).
  int di[2] = {0, 0}, dj[2] = {0, 0}, dk[2] = {0, 0};
  auto set = [&](int axis, int lo, int hi) {
    int* p = axis == 1 ? di : axis == 2 ? dj : dk;
    p[0] = lo;
    p[1] = hi;
  };
  set(c, -1, 0);
  set(d, 0, 1);
  const View w{m, v.c[d - 1], d};
  double s = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const int ka = (c == 3 ? dk[a] : 0) + (d == 3 ? dk[b] : 0);
      const int ia = (c == 1 ? di[a] : 0) + (d == 1 ? di[b] : 0);
      const int ja = (c == 2 ? dj[a] : 0) + (d == 2 ? dj[b] : 0);
      s += w(k + ka, i + ia, j + ja);
    }
  return 0.25 * s;
}

// (a . grad) f for component c of f, evaluated at component c's points.
double advect_at(const FdMesh& m, const FdVector& a, const FdVector& f, int c, int k, int i,
                 int j) {
  const View g{m, f.c[c - 1], c};
  const double d1 = (g(k, i + 1, j) - g(k, i - 1, j)) / (2 * m.h1());
  const double d2 = (g(k, i, j + 1) - g(k, i, j - 1)) / (2 * m.h2());
  const double d3 = (g(k + 1, i, j) - g(k - 1, i, j)) / (2 * m.h3());
  return interp(m, a, c, 1, k, i, j) * d1 + interp(m, a, c, 2, k, i, j) * d2 +
         interp(m, a, c, 3, k, i, j) * d3;
}

struct Rates {
  double h, v;  // coefficients of Lap_h and d3^2
};

FdVector tendency(const FdMesh& m, const FdVector& x, const FdVector* other, Rates r,
                  bool magnetic_eq, const FdVector* u_for_b) {
  FdVector out = zeros(m);
  const double i11 = 1 / (m.h1() * m.h1()), i22 = 1 / (m.h2() * m.h2()),
               i33 = 1 / (m.h3() * m.h3());
  for (int c = 1; c <= 3; ++c) {
    const View g{m, x.c[c - 1], c};
    const int k0 = c == 3 ? 1 : 0, k1 = m.n3 - 1;
    for (int k = k0; k <= k1; ++k)
      for (int i = 0; i < m.n1; ++i)
        for (int j = 0; j < m.n2; ++j) {
          const double f0 = g(k, i, j);
          double t = r.h * ((g(k, i + 1, j) - 2 * f0 + g(k, i - 1, j)) * i11 +
                            (g(k, i, j + 1) - 2 * f0 + g(k, i, j - 1)) * i22) +
                     r.v * (g(k + 1, i, j) - 2 * f0 + g(k - 1, i, j)) * i33;
          if (other) {
            const View o{m, other->c[c - 1], c};
            t += (o(k, i + 1, j) - o(k, i - 1, j)) / (2 * m.h1());
          }
          if (!magnetic_eq) {
            t -= advect_at(m, x, x, c, k, i, j);
            if (other) t += advect_at(m, *other, *other, c, k, i, j);
          } else {
            t += advect_at(m, x, *u_for_b, c, k, i, j) - advect_at(m, *u_for_b, x, c, k, i, j);
          }
          out.c[c - 1][m.index(k, i, j)] = t;
        }
  }
  return out;
}

void apply_laplacian(const FdMesh& m, const std::vector<double>& p, std::vector<double>& out) {
  const double i11 = 1 / (m.h1() * m.h1()), i22 = 1 / (m.h2() * m.h2()),
               i33 = 1 / (m.h3() * m.h3());
  for (int k = 0; k < m.n3; ++k)
    for (int i = 0; i < m.n1; ++i) {
      const int ip = (i + 1) % m.n1, im = (i + m.n1 - 1) % m.n1;
      for (int j = 0; j < m.n2; ++j) {
        const int jp = (j + 1) % m.n2, jm = (j + m.n2 - 1) % m.n2;
        const double p0 = p[m.index(k, i, j)];
        double s = (p[m.index(k, ip, j)] - 2 * p0 + p[m.index(k, im, j)]) * i11 +
                   (p[m.index(k, i, jp)] - 2 * p0 + p[m.index(k, i, jm)]) * i22;
        // Neumann walls: the missing neighbour carries no flux.
        if (k > 0) s += (p[m.index(k - 1, i, j)] - p0) * i33;
        if (k < m.n3 - 1) s += (p[m.index(k + 1, i, j)] - p0) * i33;
        out[m.index(k, i, j)] = s;
      }
    }
}

void remove_mean(std::vector<double>& v) {
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  for (double& x : v) x -= mean;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

std::vector<double> fd_divergence(const FdMesh& m, const FdVector& v) {
  std::vector<double> d(static_cast<std::size_t>(m.n3) * m.n1 * m.n2);
  for (int k = 0; k < m.n3; ++k)
    for (int i = 0; i < m.n1; ++i)
      for (int j = 0; j < m.n2; ++j)
        d[m.index(k, i, j)] =
            (v.c[0][m.index(k, (i + 1) % m.n1, j)] - v.c[0][m.index(k, i, j)]) / m.h1() +
            (v.c[1][m.index(k, i, (j + 1) % m.n2)] - v.c[1][m.index(k, i, j)]) / m.h2() +
            (v.c[2][m.index(k + 1, i, j)] - v.c[2][m.index(k, i, j)]) / m.h3();
  return d;
}

int fd_project(const FdMesh& m, FdVector& v) {
  std::vector<double> b = fd_divergence(m, v);
  remove_mean(b);
  const double bnorm = std::sqrt(dot(b, b));
  double vnorm = 0.0;
  for (const auto& c : v.c) vnorm += dot(c, c);
  const double hmin = std::min({m.h1(), m.h2(), m.h3()});
  const double floor = 1e-13 * std::sqrt(vnorm) / hmin;
  std::vector<double> p(b.size(), 0.0);
  int it = 0;
  if (bnorm > floor) {
    // CG on -Lap p = -b, which is positive semidefinite on mean-free data.
    std::vector<double> r(b.size()), d, q(b.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = -b[i];
    d = r;
    double rr = dot(r, r);
    const int max_it = 20 * static_cast<int>(std::cbrt(double(b.size()))) + 500;
    const double tol = std::max(1e-13 * bnorm, floor);
    while (std::sqrt(rr) > tol) {
      if (++it > max_it) throw std::runtime_error("fd_project: Poisson solve did not converge");
      apply_laplacian(m, d, q);
      for (double& x : q) x = -x;
      const double alpha = rr / dot(d, q);
      for (std::size_t i = 0; i < p.size(); ++i) {
        p[i] += alpha * d[i];
        r[i] -= alpha * q[i];
      }
      const double rr_new = dot(r, r);
      const double beta = rr_new / rr;
      rr = rr_new;
      for (std::size_t i = 0; i < d.size(); ++i) d[i] = r[i] + beta * d[i];
    }
  }
  for (int k = 0; k < m.n3; ++k)
    for (int i = 0; i < m.n1; ++i)
      for (int j = 0; j < m.n2; ++j) {
        const double p0 = p[m.index(k, i, j)];
        v.c[0][m.index(k, i, j)] -= (p0 - p[m.index(k, (i + m.n1 - 1) % m.n1, j)]) / m.h1();
        v.c[1][m.index(k, i, j)] -= (p0 - p[m.index(k, i, (j + m.n2 - 1) % m.n2)]) / m.h2();
        if (k > 0) v.c[2][m.index(k, i, j)] -= (p0 - p[m.index(k - 1, i, j)]) / m.h3();
      }
  return it;
}

FdState fd_sample(const MhdState& s, const FdMesh& mesh) {
  validate_state(s);
  const SpectralGrid& g = s.grid();
  if (std::abs(g.L1() - mesh.L1) > 1e-12 * g.L1() || std::abs(g.L2() - mesh.L2) > 1e-12 * g.L2() ||
      std::abs(g.L3() - mesh.L3) > 1e-12 * g.L3())
    throw std::invalid_argument("fd_sample: mesh and grid lengths differ");
  auto sample = [&](const VectorField& v) {
    FdVector out;
    for (int c = 1; c <= 3; ++c) {
      const auto x1 = mesh.xs1(c), x2 = mesh.xs2(c), x3 = mesh.xs3(c);
      out.c[c - 1] = evaluate(v[c - 1].coeffs(), v[c - 1].parity(), g, x1, x2, x3);
    }
    fd_project(mesh, out);
    return out;
  };
  FdState fd{mesh, sample(s.u), std::nullopt, s.t, s.variant};
  if (s.B) fd.B = sample(*s.B);
  return fd;
}

double fd_stable_dt(const FdMesh& m, const ModelVariant& variant) {
  const double eps = variant.epsilon();
  const double ih = 4 / (m.h1() * m.h1()) + 4 / (m.h2() * m.h2());
  const double iv = 4 / (m.h3() * m.h3());
  double lam = ih + eps * iv;
  if (variant.magnetic()) lam = std::max(lam, iv + eps * ih);
  // SSP-RK3 covers [-2.5, 0] on the real axis; keep a margin.
  return 2.0 / lam;
}

namespace {

void evaluate_rates(const FdState& s, FdVector& du, std::optional<FdVector>& dB) {
  const FdMesh& m = s.mesh;
  const double eps = s.variant.epsilon();
  const FdVector* B = s.B ? &*s.B : nullptr;
  du = tendency(m, s.u, B, {1.0, eps}, false, nullptr);
  if (B) dB = tendency(m, *B, &s.u, {eps, 1.0}, true, &s.u);
}

}  // namespace

void fd_step(FdState& s, double dt) {
  const FdMesh& m = s.mesh;
  const FdState s0 = s;
  FdVector du;
  std::optional<FdVector> dB;
  auto stage = [&](double a0, double a1) {
    evaluate_rates(s, du, dB);
    // s <- a0 * s0 + a1 * (s + dt * L(s))
    for (int c = 0; c < 3; ++c)
      for (std::size_t i = 0; i < s.u.c[c].size(); ++i) {
        s.u.c[c][i] = a0 * s0.u.c[c][i] + a1 * (s.u.c[c][i] + dt * du.c[c][i]);
        if (s.B)
          (*s.B).c[c][i] = a0 * (*s0.B).c[c][i] + a1 * ((*s.B).c[c][i] + dt * (*dB).c[c][i]);
      }
    fd_project(m, s.u);
    if (s.B) fd_project(m, *s.B);
  };
  stage(0.0, 1.0);
  stage(0.75, 0.25);
  stage(1.0 / 3.0, 2.0 / 3.0);
  for (int c = 0; c < 3; ++c)
    for (double x : s.u.c[c])
      if (!std::isfinite(x)) throw std::runtime_error("fd_step: non-finite state");
  s.t = s0.t + dt;
}

void fd_run(FdState& s, double T, double dt_max) {
  if (!(T >= 0) || !(dt_max > 0)) throw std::invalid_argument("fd_run: bad T or dt");
  const long n = static_cast<long>(std::ceil(T / dt_max - 1e-12));
  if (n == 0) return;
  const double dt = T / n, t0 = s.t;
  for (long i = 0; i < n; ++i) fd_step(s, dt);
  s.t = t0 + T;
}

double fd_difference(const FdState& fd, const MhdState& sp) {
  const FdMesh& m = fd.mesh;
  const SpectralGrid& g = sp.grid();
  const double vol = m.h1() * m.h2() * m.h3();
  auto diff = [&](const FdVector& a, const VectorField& b) {
    double s = 0.0;
    for (int c = 1; c <= 3; ++c) {
      const auto x1 = m.xs1(c), x2 = m.xs2(c), x3 = m.xs3(c);
      const auto ref = evaluate(b[c - 1].coeffs(), b[c - 1].parity(), g, x1, x2, x3);
      for (int k = 0; k < m.levels(c); ++k) {
        // wall faces of the vertical component carry half a cell
        const double w = (c == 3 && (k == 0 || k == m.n3)) ? 0.5 : 1.0;
        for (int i = 0; i < m.n1; ++i)
          for (int j = 0; j < m.n2; ++j) {
            const double e = a.c[c - 1][m.index(k, i, j)] - ref[m.index(k, i, j)];
            s += w * vol * e * e;
          }
      }
    }
    return s;
  };
  double total = diff(fd.u, sp.u);
  if (fd.B && sp.B) total += diff(*fd.B, *sp.B);
  else if (fd.B || sp.B) throw std::invalid_argument("fd_difference: variants differ");
  return std::sqrt(total);
}

}  // namespace slipmhd
