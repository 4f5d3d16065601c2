#include "slipmhd/diagnostics.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

namespace slipmhd {

namespace {

struct Stacks {
  std::vector<ZStack> f, d3, d33;
};

Stacks stacks_for(const VectorField& v, int m, const PhiFn& phi) {
  Stacks s;
  for (int i = 0; i < 3; ++i) {
    const Field d = derivative(v[i], 3);
    s.f.emplace_back(v[i], m, phi);
    s.d3.emplace_back(d, m, phi);
    s.d33.emplace_back(derivative(d, 3), m - 1, phi);
  }
  return s;
}

}  // namespace

Sample measure(const MhdState& st, int m, double s_exp, const PhiFn& phi) {
  if (m < 1) throw std::invalid_argument("measure: m must be at least 1");
  Sample r;
  r.t = st.t;
  r.eps = st.variant.epsilon();
  const Stacks U = stacks_for(st.u, m, phi);
  const auto wu = vorticity_h(st.u);
  std::vector<ZStack> W, W3;
  for (const Field& w : wu) {
    W.emplace_back(w, m - 1, phi);
    W3.emplace_back(derivative(w, 3), m - 1, phi);
  }

  for (int i = 0; i < 3; ++i) {
    r.l2_u += U.f[i].tan(0);
    r.tan_u += U.f[i].tan(m);
    r.co_u += U.f[i].co(m);
    r.tan_d3u += U.d3[i].tan(m - 1);
    r.e1_dh += U.f[i].tan_dh(m);
    r.e1_d3 += U.d3[i].tan(m);
    r.x_state += U.f[i].co(m) + U.d3[i].co(m - 1);
    r.x_dh += U.f[i].co_dh(m) + U.d3[i].co_dh(m - 1);
    r.x_d3 += U.d3[i].co(m) + U.d33[i].co(m - 1);
    r.diss_h += U.f[i].tan_dh(0);
    r.diss_3 += U.d3[i].tan(0);
    r.ns_dh += U.f[i].tan_dh(m);
    r.ns_d3 += U.d3[i].tan(m);
  }
  for (int i = 0; i < 2; ++i) {
    r.co_w += W[i].co(m - 1);
    r.tan_w += W[i].tan(m - 1);
    r.e2_dh += W[i].co_dh(m - 1);
    r.e2_d3 += W3[i].co(m - 1);
    r.ns_dh += W[i].tan_dh(m - 1);
    r.ns_d3 += W3[i].tan(m - 1);
  }
  r.e1_state = r.tan_u;
  r.e2_state = r.co_w;
  r.lam_u = lambda_sq(st.u, -s_exp);
  r.lam_w = lambda_sq(wu[0], -s_exp) + lambda_sq(wu[1], -s_exp);

  if (st.B) {
    const Stacks B = stacks_for(*st.B, m, phi);
    const auto wb = vorticity_h(*st.B);
    for (int i = 0; i < 3; ++i) {
      r.l2_B += B.f[i].tan(0);
      r.e1_state += B.f[i].tan(m);
      r.e1_dh += B.d3[i].tan(m);
      r.e1_d3 += B.f[i].tan_dh(m);
      r.g_rate += B.f[i].co(m - 1, 1, 0);
      r.x_state += B.f[i].co(m) + B.d3[i].co(m - 1);
      r.x_dh += B.d3[i].co(m) + B.d33[i].co(m - 1);
      r.x_d3 += B.f[i].co_dh(m);
      if (i < 2) r.x_d3 += B.d3[i].co_dh(m - 1);
      r.diss_h += B.d3[i].tan(0);
      r.diss_3 += B.f[i].tan_dh(0);
    }
    for (const Field& w : wb) {
      const ZStack zw(w, m - 1, phi);
      const ZStack zw3(derivative(w, 3), m - 1, phi);
      r.e2_state += zw.co(m - 1);
      r.e2_dh += zw3.co(m - 1);
      r.e2_d3 += zw.co_dh(m - 1);
    }
  }
  return r;
}

std::vector<EnergyReport> energy_report(const std::vector<Sample>& samples) {
  std::vector<EnergyReport> out;
  out.reserve(samples.size());
  double sup1 = 0.0, sup2 = 0.0, i1 = 0.0, i2 = 0.0, g = 0.0, ix = 0.0;
  for (std::size_t n = 0; n < samples.size(); ++n) {
    const Sample& c = samples[n];
    if (n > 0) {
      const Sample& p = samples[n - 1];
      const double h = c.t - p.t;
      if (!(h > 0.0)) throw std::invalid_argument("energy_report: time stamps must increase");
      auto trap = [h](double a, double b) { return 0.5 * h * (a + b); };
      i1 += 2.0 * trap(p.e1_dh, c.e1_dh) + 2.0 * trap(p.eps * p.e1_d3, c.eps * c.e1_d3);
      i2 += 2.0 * trap(p.e2_dh, c.e2_dh) + 2.0 * trap(p.eps * p.e2_d3, c.eps * c.e2_d3);
      g += trap(p.g_rate, c.g_rate);
      ix += trap(p.x_dh, c.x_dh) + trap(p.eps * p.x_d3, c.eps * c.x_d3);
    }
    sup1 = std::max(sup1, c.e1_state);
    sup2 = std::max(sup2, c.e2_state);
    EnergyReport r;
    r.t = c.t;
    r.E1 = sup1 + i1;
    r.E2 = sup2 + i2;
    r.E = r.E1 + r.E2;
    r.G = g;
    r.X = c.x_state + ix;
    r.int_e1 = i1;
    r.int_e2 = i2;
    out.push_back(r);
  }
  return out;
}

WeightedDissipation weighted_dissipation(const std::vector<Sample>& samples, double sigma) {
  WeightedDissipation w;
  for (std::size_t n = 1; n < samples.size(); ++n) {
    const Sample& p = samples[n - 1];
    const Sample& c = samples[n];
    const double h = c.t - p.t;
    if (!(h > 0.0)) throw std::invalid_argument("weighted_dissipation: time stamps must increase");
    const double wp = std::pow(1.0 + p.t, sigma), wc = std::pow(1.0 + c.t, sigma);
    w.horizontal += 0.5 * h * (wp * p.ns_dh + wc * c.ns_dh);
    w.vertical += 0.5 * h * (wp * p.eps * p.ns_d3 + wc * c.eps * c.ns_d3);
  }
  return w;
}

}  // namespace slipmhd
