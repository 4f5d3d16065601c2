#include "slipmhd/solver.hpp"

#include <array>
#include <cmath>
#include <iostream>
#include <mutex>

namespace slipmhd {

namespace {

using Phys3 = std::array<RealArray, 3>;

Phys3 physical(const VectorField& v) {
  return {to_physical(v[0]), to_physical(v[1]), to_physical(v[2])};
}

std::array<Phys3, 3> physical_gradient(const VectorField& v) {
  std::array<Phys3, 3> g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g[i][j] = to_physical(derivative(v[i], j + 1));
  return g;
}

// acc += sign * sum_j a_j * grad_j
void add_transport(RealArray& acc, double sign, const Phys3& a, const Phys3& grad) {
  const std::size_t n = acc.size();
  const double* a0 = a[0].data();
  const double* a1 = a[1].data();
  const double* a2 = a[2].data();
  const double* g0 = grad[0].data();
  const double* g1 = grad[1].data();
  const double* g2 = grad[2].data();
  double* out = acc.data();
  for (std::size_t i = 0; i < n; ++i)
    out[i] += sign * (a0[i] * g0[i] + a1[i] * g1[i] + a2[i] * g2[i]);
}

Field to_field(RealArray& values, Parity p, const GridPtr& grid) {
  CoeffArray c;
  grid->forward_inplace(values, p, c);
  dealias_inplace(c, *grid);
  return Field(grid, p, std::move(c));
}

// Per-mode exp(rate * h) for u-type and B-type dissipation.
struct Factors {
  std::vector<double> u_half, u_full, b_half, b_full;
};

struct FactorKey {
  const SpectralGrid* grid;
  double eps, dt;
  bool operator==(const FactorKey&) const = default;
};

const Factors& factors(const SpectralGrid& g, double eps, double dt) {
  thread_local FactorKey key{nullptr, 0.0, 0.0};
  thread_local Factors f;
  const FactorKey want{&g, eps, dt};
  if (key == want) return f;
  const std::size_t n = g.spectral_size();
  f.u_half.resize(n);
  f.u_full.resize(n);
  f.b_half.resize(n);
  f.b_full.resize(n);
  for (int kz = 0; kz < g.planes(); ++kz) {
    const double k3 = (kz == g.n3()) ? 0.0 : g.kz()[kz];
    for (int i1 = 0; i1 < g.n1(); ++i1) {
      const double k1 = (2 * i1 == g.n1()) ? 0.0 : g.kx()[i1];
      for (int i2 = 0; i2 < g.n2h(); ++i2) {
        const double k2 = (2 * i2 == g.n2()) ? 0.0 : g.ky()[i2];
        const double kh = k1 * k1 + k2 * k2, kv = k3 * k3;
        const double ru = -(kh + eps * kv), rb = -(kv + eps * kh);
        const std::size_t idx = g.spec_index(kz, i1, i2);
        f.u_half[idx] = std::exp(0.5 * dt * ru);
        f.u_full[idx] = std::exp(dt * ru);
        f.b_half[idx] = std::exp(0.5 * dt * rb);
        f.b_full[idx] = std::exp(dt * rb);
      }
    }
  }
  key = want;
  return f;
}

void scale(VectorField& v, const std::vector<double>& f) {
  for (int i = 0; i < 3; ++i) {
    Complex* c = v[i].coeffs().data();
    for (std::size_t k = 0; k < f.size(); ++k) c[k] *= f[k];
  }
}

struct Pair {
  VectorField u;
  std::optional<VectorField> B;
};

Pair as_pair(const MhdState& s) { return {s.u, s.B}; }

void apply_factor(Pair& p, const Factors& f, bool half) {
  scale(p.u, half ? f.u_half : f.u_full);
  if (p.B) scale(*p.B, half ? f.b_half : f.b_full);
}

void axpy(Pair& p, double a, const Tendency& k) {
  p.u.axpy(a, k.du);
  if (p.B) p.B->axpy(a, *k.dB);
}

Pair scaled_tendency(const Tendency& k, const Factors& f, bool half) {
  Pair p{k.du, k.dB};
  apply_factor(p, f, half);
  return p;
}

MhdState with(const MhdState& base, Pair p, double t) {
  return MhdState{std::move(p.u), std::move(p.B), t, base.variant};
}

// ||(dh u, d3 B)||^2 and ||(d3 u, dh B)||^2 from coefficients.
std::pair<double, double> dissipation_rates(const MhdState& s) {
  const SpectralGrid& g = s.grid();
  double h = 0.0, v = 0.0;
  auto accumulate = [&](const VectorField& f, bool magnetic) {
    for (int c = 0; c < 3; ++c) {
      const Parity p = f[c].parity();
      for (int kz = 0; kz < g.planes(); ++kz) {
        const double k3 = (kz == g.n3()) ? 0.0 : g.kz()[kz];
        for (int i1 = 0; i1 < g.n1(); ++i1) {
          const double k1 = (2 * i1 == g.n1()) ? 0.0 : g.kx()[i1];
          for (int i2 = 0; i2 < g.n2h(); ++i2) {
            const double k2 = (2 * i2 == g.n2()) ? 0.0 : g.ky()[i2];
            const double a = std::norm(f[c].coeffs()[g.spec_index(kz, i1, i2)]) *
                             g.weight(kz, i2, p);
            if (a == 0.0) continue;
            const double kh = k1 * k1 + k2 * k2;
            // d3 flips the basis; the weight changes only at kz = 0 or n3,
            // where the derivative vanishes.
            const double kv = k3 * k3;
            if (!magnetic) {
              h += a * kh;
              v += a * kv;
            } else {
              h += a * kv;
              v += a * kh;
            }
          }
        }
      }
    }
  };
  accumulate(s.u, false);
  if (s.B) accumulate(*s.B, true);
  return {h, v};
}

double max_speed(const MhdState& s) {
  double m = 0.0;
  auto visit = [&](const VectorField& v) {
    Phys3 p = physical(v);
    for (std::size_t i = 0; i < p[0].size(); ++i)
      m = std::max(m, std::sqrt(p[0][i] * p[0][i] + p[1][i] * p[1][i] + p[2][i] * p[2][i]));
  };
  visit(s.u);
  if (s.B) visit(*s.B);
  return m;
}

double min_spacing(const SpectralGrid& g) {
  return std::min({g.L1() / g.n1(), g.L2() / g.n2(), g.L3() / g.n3()});
}

}  // namespace

Tendency nonlinear_rhs(const MhdState& s) {
  validate_state(s);
  const GridPtr& grid = s.grid_ptr();
  const Phys3 u = physical(s.u);
  const auto gu = physical_gradient(s.u);
  const std::size_t n = grid->physical_size();

  if (!s.B) {
    std::array<Field, 3> du{Field(grid, Parity::Even), Field(grid, Parity::Even),
                            Field(grid, Parity::Odd)};
    for (int i = 0; i < 3; ++i) {
      RealArray acc(n, 0.0);
      add_transport(acc, -1.0, u, gu[i]);
      du[i] = to_field(acc, s.u[i].parity(), grid);
    }
    return {leray_project(VectorField(du[0], du[1], du[2])), std::nullopt};
  }

  const Phys3 b = physical(*s.B);
  const auto gb = physical_gradient(*s.B);
  std::array<Field, 3> du{Field(grid, Parity::Even), Field(grid, Parity::Even),
                          Field(grid, Parity::Odd)};
  std::array<Field, 3> dB = du;
  for (int i = 0; i < 3; ++i) {
    RealArray acc(n, 0.0);
    add_transport(acc, -1.0, u, gu[i]);
    add_transport(acc, 1.0, b, gb[i]);
    du[i] = to_field(acc, s.u[i].parity(), grid);
    du[i] += derivative((*s.B)[i], 1);

    std::fill(acc.begin(), acc.end(), 0.0);
    add_transport(acc, -1.0, u, gb[i]);
    add_transport(acc, 1.0, b, gu[i]);
    dB[i] = to_field(acc, s.B->operator[](i).parity(), grid);
    dB[i] += derivative(s.u[i], 1);
  }
  return {leray_project(VectorField(du[0], du[1], du[2])),
          leray_project(VectorField(dB[0], dB[1], dB[2]))};
}

Tendency rhs(const MhdState& s) {
  Tendency t = nonlinear_rhs(s);
  const double eps = s.variant.epsilon();
  for (int i = 0; i < 3; ++i) {
    t.du[i] += laplacian_h(s.u[i]);
    t.du[i].axpy(eps, d3_squared(s.u[i]));
  }
  if (s.B)
    for (int i = 0; i < 3; ++i) {
      (*t.dB)[i] += d3_squared((*s.B)[i]);
      (*t.dB)[i].axpy(eps, laplacian_h((*s.B)[i]));
    }
  return t;
}

MhdState step(const MhdState& s, double dt, StepInfo* info) {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
  const SpectralGrid& g = s.grid();
  const Factors& F = factors(g, s.variant.epsilon(), dt);
  const double t0 = s.t;

  StepInfo local;
  local.courant = dt * max_speed(s) / min_spacing(g);
  local.cfl_exceeded = local.courant > kCflSafety;

  const Tendency k1 = nonlinear_rhs(s);

  Pair a = as_pair(s);
  axpy(a, 0.5 * dt, k1);
  apply_factor(a, F, true);
  const MhdState sa = with(s, a, t0 + 0.5 * dt);
  const Tendency k2 = nonlinear_rhs(sa);

  Pair b = as_pair(s);
  apply_factor(b, F, true);
  axpy(b, 0.5 * dt, k2);
  const MhdState sb = with(s, b, t0 + 0.5 * dt);
  const Tendency k3 = nonlinear_rhs(sb);

  Pair c = as_pair(s);
  apply_factor(c, F, false);
  {
    Pair e3 = scaled_tendency(k3, F, true);
    c.u.axpy(dt, e3.u);
    if (c.B) c.B->axpy(dt, *e3.B);
  }
  const MhdState sc = with(s, c, t0 + dt);
  const Tendency k4 = nonlinear_rhs(sc);

  Pair next = as_pair(s);
  apply_factor(next, F, false);
  {
    Pair e1 = scaled_tendency(k1, F, false);
    Tendency k23{k2.du + k3.du, k2.dB ? std::optional<VectorField>(*k2.dB + *k3.dB) : std::nullopt};
    Pair e23 = scaled_tendency(k23, F, true);
    next.u.axpy(dt / 6.0, e1.u).axpy(dt / 3.0, e23.u).axpy(dt / 6.0, k4.du);
    if (next.B) next.B->axpy(dt / 6.0, *e1.B).axpy(dt / 3.0, *e23.B).axpy(dt / 6.0, *k4.dB);
  }
  MhdState out = with(s, std::move(next), t0 + dt);
  if (!out.all_finite()) throw SolverFault("non-finite state after step", t0 + dt);

  if (info) {
    const auto d0 = dissipation_rates(s);
    const auto da = dissipation_rates(sa);
    const auto db = dissipation_rates(sb);
    const auto dc = dissipation_rates(sc);
    local.diss_h = dt / 6.0 * (d0.first + 2.0 * da.first + 2.0 * db.first + dc.first);
    local.diss_3 = dt / 6.0 * (d0.second + 2.0 * da.second + 2.0 * db.second + dc.second);
    *info = local;
  }
  return out;
}

Trajectory run(const MhdState& initial, double T, double dt, int diag_every,
               const RunOptions& opts) {
  if (!(T > 0.0) || !(dt > 0.0)) throw std::invalid_argument("run: T and dt must be positive");
  if (diag_every < 1) throw std::invalid_argument("run: diag_every must be at least 1");
  validate_state(initial);
  const auto nsteps = static_cast<std::size_t>(std::llround(T / dt));
  if (nsteps == 0) throw std::invalid_argument("run: T shorter than one step");

  Trajectory tr{{}, {}, {}, initial, 0, false};
  double cum_h = 0.0, cum_3 = 0.0;
  auto record = [&](const MhdState& st) {
    tr.samples.push_back(measure(st, opts.m, opts.s_exp));
    tr.cum_diss_h.push_back(cum_h);
    tr.cum_diss_3.push_back(cum_3);
    if (opts.on_sample) opts.on_sample(st);
  };
  record(initial);
  const double t0 = initial.t;
  MhdState cur = initial;
  for (std::size_t n = 1; n <= nsteps; ++n) {
    StepInfo info;
    cur = step(cur, dt, &info);
    cur.t = t0 + static_cast<double>(n) * dt;
    cum_h += info.diss_h;
    cum_3 += info.diss_3;
    if (info.cfl_exceeded && !tr.cfl_exceeded) {
      tr.cfl_exceeded = true;
      if (opts.warn_cfl) {
        static std::mutex mu;
        std::lock_guard lock(mu);
        std::cerr << "warning: Courant number " << info.courant << " exceeds "
                  << kCflSafety << " at t = " << cur.t << '\n';
      }
    }
    if (n % static_cast<std::size_t>(diag_every) == 0 || n == nsteps) record(cur);
  }
  tr.steps = nsteps;
  tr.final_state = std::move(cur);
  return tr;
}

double vorticity_residual(const MhdState& s) {
  const Tendency full = rhs(s);
  const double eps = s.variant.epsilon();
  const VectorField wu = curl(s.u);
  const auto lhs_u = vorticity_h(full.du);

  auto mismatch = [](const std::array<Field, 2>& lhs, const std::array<Field, 2>& rhs) {
    double diff = 0.0, scale = 0.0;
    for (int i = 0; i < 2; ++i) {
      diff += l2_sq(lhs[i] - rhs[i]);
      scale = std::max({scale, l2_sq(lhs[i]), l2_sq(rhs[i])});
    }
    return scale == 0.0 ? 0.0 : std::sqrt(diff / scale);
  };

  std::array<Field, 2> ru{wu[0], wu[1]};
  for (int i = 0; i < 2; ++i) {
    ru[i] = laplacian_h(wu[i]);
    ru[i].axpy(eps, d3_squared(wu[i]));
    ru[i] -= advect(s.u, wu[i]);
    ru[i] += advect(wu, s.u[i]);
  }
  if (!s.B) return mismatch(lhs_u, ru);

  const VectorField& B = *s.B;
  const VectorField wb = curl(B);
  for (int i = 0; i < 2; ++i) {
    ru[i] += advect(B, wb[i]);
    ru[i] -= advect(wb, B[i]);
    ru[i] += derivative(wb[i], 1);
  }
  auto dvec = [](const VectorField& v, int axis) {
    return VectorField(derivative(v[0], axis), derivative(v[1], axis), derivative(v[2], axis));
  };
  const VectorField d1B = dvec(B, 1), d2B = dvec(B, 2), d3B = dvec(B, 3);
  const VectorField d1u = dvec(s.u, 1), d2u = dvec(s.u, 2), d3u = dvec(s.u, 3);
  Field A1 = advect(d2B, s.u[2]);
  A1 -= advect(d3B, s.u[1]);
  A1 -= advect(d2u, B[2]);
  A1 += advect(d3u, B[1]);
  Field A2 = advect(d3B, s.u[0]);
  A2 -= advect(d1B, s.u[2]);
  A2 -= advect(d3u, B[0]);
  A2 += advect(d1u, B[2]);
  std::array<Field, 2> A{std::move(A1), std::move(A2)};

  std::array<Field, 2> rb{wb[0], wb[1]};
  for (int i = 0; i < 2; ++i) {
    rb[i] = d3_squared(wb[i]);
    rb[i].axpy(eps, laplacian_h(wb[i]));
    rb[i] -= advect(s.u, wb[i]);
    rb[i] += A[i];
    rb[i] += advect(B, wu[i]);
    rb[i] += derivative(wu[i], 1);
  }
  const auto lhs_b = vorticity_h(*full.dB);
  return std::max(mismatch(lhs_u, ru), mismatch(lhs_b, rb));
}

}  // namespace slipmhd
