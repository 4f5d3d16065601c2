#include "slipmhd/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <stdexcept>

#include "slipmhd/initial_data.hpp"

namespace slipmhd {

namespace {

struct Sampled {
  GridPtr grid;
  RealArray values;
};

Sampled sampled(const Field& f, int q) {
  if (q < 1) throw std::invalid_argument("oversample must be at least 1");
  if (q == 1) return {f.grid_ptr(), to_physical(f)};
  const SpectralGrid& g = f.grid();
  GridPtr fine = make_grid(g.n1() * q, g.n2() * q, g.n3() * q, g.L1(), g.L2(), g.L3());
  const CoeffArray c = transfer(f.coeffs(), g, *fine);
  return {fine, inverse(c, f.parity(), *fine)};
}

double integrate(const RealArray& v, const SpectralGrid& g) {
  const std::size_t plane = static_cast<std::size_t>(g.n1()) * g.n2();
  double total = 0.0;
  for (int j = 0; j < g.planes(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < plane; ++i) s += v[j * plane + i];
    total += g.quad_weight(j) * s;
  }
  return total;
}

double norm(const Field& f) { return l2(f); }
Field d(const Field& f, int axis) { return derivative(f, axis); }

double triple_integral(const Field& f, const Field& g, const Field& h, int q) {
  const Sampled a = sampled(f, q), b = sampled(g, q), c = sampled(h, q);
  RealArray p(a.values.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    p[i] = std::abs(a.values[i] * b.values[i] * c.values[i]);
  return integrate(p, *a.grid);
}

double product_l2(const Field& f, const Field& g, int q) {
  const Sampled a = sampled(f, q), b = sampled(g, q);
  RealArray p(a.values.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = a.values[i] * a.values[i] * b.values[i] * b.values[i];
  return std::sqrt(integrate(p, *a.grid));
}

double quarter_core(const Field& f, int i, int j) {
  return std::pow(norm(f) * norm(d(f, i)) * norm(d(f, j)) * norm(d(d(f, i), j)), 0.25);
}

double hessian_h_norm(const Field& f) {
  const Field f11 = d(d(f, 1), 1), f12 = d(d(f, 1), 2), f22 = d(d(f, 2), 2);
  return std::sqrt(l2_sq(f11) + 2.0 * l2_sq(f12) + l2_sq(f22));
}

double grad_h_norm(const Field& f) { return std::sqrt(l2_sq(d(f, 1)) + l2_sq(d(f, 2))); }

constexpr int kTriples[3][3] = {{1, 2, 3}, {1, 3, 2}, {2, 3, 1}};

}  // namespace

InequalityCheck make_check(std::string name, double lhs, double rhs_core) {
  InequalityCheck c{std::move(name), lhs, rhs_core, 0.0, false};
  if (rhs_core > 0.0) {
    c.ratio = lhs / rhs_core;
  } else {
    c.degenerate = true;
    c.ratio = std::numeric_limits<double>::quiet_NaN();
  }
  return c;
}

InequalityCheck check_anisotropic(std::string_view name, const Field& f, const Field& g,
                                  const Field& h, const CheckOptions& opt) {
  const int q = opt.oversample;
  if (name == "a1") {
    const double lhs = triple_integral(f, g, h, q);
    const double rhs = std::sqrt(norm(f) * norm(d(f, 1)) * norm(g) * norm(d(g, 2)) *
                                 norm(h) * norm(d(h, 3)));
    return make_check("a1", lhs, rhs);
  }
  if (name == "a2" || name == "a3") {
    const double lhs = name == "a2" ? triple_integral(f, g, h, q) : product_l2(f, g, q);
    InequalityCheck worst = make_check(std::string(name), lhs, 0.0);
    for (const auto& t : kTriples) {
      double rhs = quarter_core(f, t[0], t[1]) * std::sqrt(norm(g) * norm(d(g, t[2])));
      if (name == "a2") rhs *= norm(h);
      const InequalityCheck c = make_check(std::string(name), lhs, rhs);
      if (worst.degenerate || (!c.degenerate && c.ratio > worst.ratio)) worst = c;
    }
    return worst;
  }
  if (name == "a4") {
    const Sampled a = sampled(f, q);
    double sup = 0.0;
    for (double v : a.values) sup = std::max(sup, std::abs(v));
    const Field f3 = d(f, 3);
    const double rhs = std::sqrt(norm(f) * norm(f3)) +
                       std::sqrt(grad_h_norm(f) * grad_h_norm(f3)) +
                       std::sqrt(hessian_h_norm(f) * hessian_h_norm(f3));
    return make_check("a4", sup, rhs);
  }
  if (name == "a5") {
    const Field z1 = conormal_Z(f, 3);
    const Field z3 = conormal_Z(conormal_Z(z1, 3), 3);
    const double nf = norm(f), nz3 = norm(z3);
    const double rhs = nf + std::pow(nf, 0.75) * std::pow(nz3, 0.25) +
                       std::pow(nf, 2.0 / 3.0) * std::pow(nz3, 1.0 / 3.0);
    return make_check("a5", norm(z1), rhs);
  }
  if (name == "a9") {
    const double s = opt.s;
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("a9: s must lie in (0,1)");
    const Sampled a = sampled(f, q);
    const SpectralGrid& gg = *a.grid;
    const std::size_t plane = static_cast<std::size_t>(gg.n1()) * gg.n2();
    std::vector<double> sup(plane, 0.0);
    for (int j = 0; j < gg.planes(); ++j)
      for (std::size_t i = 0; i < plane; ++i)
        sup[i] = std::max(sup[i], std::abs(a.values[j * plane + i]));
    const double area = gg.L1() * gg.L2() / static_cast<double>(plane);
    const double p = 2.0 / s;
    double acc = 0.0;
    for (double v : sup) acc += std::pow(v, p) * area;
    const double lhs = std::pow(acc, 1.0 / p);
    const double nf = norm(f);
    const double mix = nf * norm(d(f, 2)) + norm(d(f, 1)) * norm(d(d(f, 1), 2));
    const double rhs = std::pow(mix, 0.5 * (1.0 - s)) * std::pow(nf, 0.5 * (2.0 * s - 1.0)) *
                       std::sqrt(norm(d(f, 3)));
    return make_check("a9", lhs, rhs);
  }
  throw std::invalid_argument("check_anisotropic: unknown inequality '" + std::string(name) + "'");
}

InequalityCheck check_hls(const Field& f, double alpha, const CheckOptions& opt) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("check_hls: alpha must lie in (0,1)");
  const double lhs = l2(lambda_h(f, -alpha));
  const double p = 2.0 / (1.0 + alpha);
  const Sampled a = sampled(f, opt.oversample);
  const SpectralGrid& g = *a.grid;
  const std::size_t plane = static_cast<std::size_t>(g.n1()) * g.n2();
  const double area = g.L1() * g.L2() / static_cast<double>(plane);
  double total = 0.0;
  for (int j = 0; j < g.planes(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < plane; ++i) s += std::pow(std::abs(a.values[j * plane + i]), p);
    const double lp = std::pow(s * area, 1.0 / p);
    total += g.quad_weight(j) / area * lp * lp;
  }
  return make_check("a16", lhs, std::sqrt(total));
}

InequalityCheck check_pressure(const VectorField& u, const VectorField& B, int m) {
  if (m < 2) throw std::invalid_argument("check_pressure: m must be at least 2");
  VectorField F = advect(B, B);
  F -= advect(u, u);
  const Field divF = divergence(F);
  const SpectralGrid& g = u.grid();
  Field p(u.grid_ptr(), Parity::Even);
  for (int kz = 0; kz < g.planes(); ++kz)
    for (int i1 = 0; i1 < g.n1(); ++i1)
      for (int i2 = 0; i2 < g.n2h(); ++i2) {
        const double kk = g.kx()[i1] * g.kx()[i1] + g.ky()[i2] * g.ky()[i2] +
                          g.kz()[kz] * g.kz()[kz];
        const std::size_t idx = g.spec_index(kz, i1, i2);
        p.coeffs()[idx] = kk > 0.0 ? -divF.coeffs()[idx] / kk : Complex{};
      }
  const VectorField gp = gradient(p);
  const double lhs = std::sqrt(norm_co(gp, m - 1));
  const double rhs = std::sqrt(norm_co(F, m - 1)) + std::sqrt(norm_co(divF, m - 2));
  return make_check("a15", lhs, rhs);
}

namespace {

struct EquivParts {
  double x = 0.0, e = 0.0, rel = 0.0;
};

EquivParts equivalence_parts(const VectorField& v, int m) {
  EquivParts r;
  const auto w = vorticity_h(v);
  for (int i = 0; i < 3; ++i) {
    const ZStack z(v[i], m);
    r.x += z.co(m) + norm_co(derivative(v[i], 3), m - 1);
    r.e += z.tan(m);
  }
  r.e += norm_co(w[0], m - 1) + norm_co(w[1], m - 1);

  const double scale = std::max(1e-300, l2(gradient(v[0])) + l2(gradient(v[1])) + l2(gradient(v[2])));
  Field r1 = derivative(v[0], 3);
  r1 -= w[1];
  r1 -= derivative(v[2], 1);
  Field r2 = derivative(v[1], 3);
  r2 += w[0];
  r2 -= derivative(v[2], 2);
  Field r3 = derivative(v[2], 3);
  r3 += derivative(v[0], 1);
  r3 += derivative(v[1], 2);
  r.rel = (l2(r1) + l2(r2) + l2(r3)) / scale;
  return r;
}

}  // namespace

EquivalenceCheck check_equivalence(const MhdState& s, int m) {
  if (m < 1) throw std::invalid_argument("check_equivalence: m must be at least 1");
  EquivalenceCheck out;
  const EquivParts pu = equivalence_parts(s.u, m);
  out.u = make_check("b7_u", pu.x, pu.e);
  EquivParts pb;
  if (s.B) pb = equivalence_parts(*s.B, m);
  out.B = make_check("b7_B", pb.x, pb.e);
  out.state = make_check("b7", pu.x + pb.x, pu.e + pb.e);
  out.relation_residual = std::max(pu.rel, pb.rel);
  return out;
}

std::vector<double> check_differential_inequality(const std::vector<Sample>& s) {
  const std::size_t n = s.size();
  std::vector<double> out(n, 0.0);
  if (n < 2) return out;
  for (std::size_t i = 1; i < n; ++i)
    if (!(s[i].t > s[i - 1].t))
      throw std::invalid_argument("differential inequality: time stamps must increase");
  std::vector<double> en(n);
  for (std::size_t i = 0; i < n; ++i) en[i] = s[i].tan_u + s[i].tan_w;
  for (std::size_t i = 0; i < n; ++i) {
    double dE;
    if (n == 2) {
      dE = (en[1] - en[0]) / (s[1].t - s[0].t);
    } else {
      // derivative of the quadratic through three neighbouring samples
      const std::size_t a = i == 0 ? 0 : (i + 1 == n ? n - 3 : i - 1);
      const double x[3] = {s[a].t, s[a + 1].t, s[a + 2].t};
      const double t = s[i].t;
      dE = 0.0;
      for (int k = 0; k < 3; ++k) {
        double num = 0.0, den = 1.0;
        for (int l = 0; l < 3; ++l) {
          if (l == k) continue;
          den *= x[k] - x[l];
          num += t - x[3 - k - l];
        }
        dE += en[a + k] * num / den;
      }
    }
    const double r = dE + s[i].ns_dh + s[i].eps * s[i].ns_d3;
    out[i] = en[i] > 0.0 ? r / en[i] : 0.0;
  }
  return out;
}

const std::vector<std::string>& ensemble_names() {
  static const std::vector<std::string> names{"a1", "a2", "a3", "a4", "a5",
                                              "a9", "a15", "a16", "b7"};
  return names;
}

std::vector<CheckRow> run_ensemble(const EnsembleSpec& spec) {
  const auto& names = ensemble_names();
  if (std::find(names.begin(), names.end(), spec.name) == names.end())
    throw std::invalid_argument("run_ensemble: unknown check '" + spec.name + "'");
  if (spec.samples < 1) throw std::invalid_argument("run_ensemble: need at least one sample");
  const GridPtr grid = make_grid(spec.n, spec.n, spec.n, spec.L, spec.L, spec.L);
  RandomSpec rs;
  rs.band_h = spec.band;
  rs.band_z = spec.band;
  rs.zero_mean_h = true;
  std::mt19937_64 rng(spec.seed);
  std::bernoulli_distribution coin(0.5);
  auto parity = [&] { return coin(rng) ? Parity::Odd : Parity::Even; };
  const std::string res = std::to_string(spec.n) + "^3";

  std::vector<CheckRow> rows;
  rows.reserve(spec.samples);
  for (int k = 0; k < spec.samples; ++k) {
    InequalityCheck c;
    if (spec.name == "a15" || spec.name == "b7") {
      const VectorField u = random_solenoidal(grid, rng, rs);
      const VectorField B = random_solenoidal(grid, rng, rs);
      if (spec.name == "a15") {
        c = check_pressure(u, B, spec.options.m);
      } else {
        const MhdState st{u, B, 0.0, ModelVariant::mhd_limit()};
        c = check_equivalence(st, spec.options.m).state;
      }
    } else if (spec.name == "a16") {
      const Parity p = parity();
      c = check_hls(random_field(grid, p, rng, rs), spec.alpha, spec.options);
    } else {
      const Parity pf = parity(), pg = parity(), ph = parity();
      const Field f = random_field(grid, pf, rng, rs);
      const Field g = random_field(grid, pg, rng, rs);
      const Field h = random_field(grid, ph, rng, rs);
      c = check_anisotropic(spec.name, f, g, h, spec.options);
    }
    rows.push_back({c, spec.seed, res});
  }
  return rows;
}

double max_ratio(const std::vector<CheckRow>& rows) {
  double m = std::numeric_limits<double>::quiet_NaN();
  for (const auto& r : rows)
    if (!r.check.degenerate && std::isfinite(r.check.ratio) && !(r.check.ratio <= m))
      m = r.check.ratio;
  return m;
}

double min_ratio(const std::vector<CheckRow>& rows) {
  double m = std::numeric_limits<double>::quiet_NaN();
  for (const auto& r : rows)
    if (!r.check.degenerate && std::isfinite(r.check.ratio) && !(r.check.ratio >= m))
      m = r.check.ratio;
  return m;
}

void append_checks_csv(const std::filesystem::path& path, const std::vector<CheckRow>& rows) {
  const bool fresh = !std::filesystem::exists(path);
  std::ofstream os(path, std::ios::app);
  if (!os) throw std::runtime_error("cannot open " + path.string());
  os.precision(17);
  if (fresh) os << "name,seed,resolution,ratio,lhs,rhs_core\n";
  for (const auto& r : rows)
    os << r.check.name << ',' << r.seed << ',' << r.resolution << ',' << r.check.ratio << ','
       << r.check.lhs << ',' << r.check.rhs_core << '\n';
}

}  // namespace slipmhd
