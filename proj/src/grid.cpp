#include "slipmhd/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace slipmhd {

namespace {

// The FFTW planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

std::string_view to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

Parity parse_parity(std::string_view name) {
  if (name == "even") return Parity::Even;
  if (name == "odd") return Parity::Odd;
  throw std::invalid_argument("unknown parity: " + std::string(name));
}

struct SpectralGrid::Plans {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
  fftw_plan dct = nullptr;  // REDFT00 along x3, all planes
  fftw_plan dst = nullptr;  // RODFT00 along x3, interior planes
  ~Plans() {
    std::lock_guard lock(planner_mutex());
    for (fftw_plan p : {r2c, c2r, dct, dst})
      if (p) fftw_destroy_plan(p);
  }
};

SpectralGrid::SpectralGrid(int n1, int n2, int n3, double L1, double L2,
                           double L3)
    : n1_(n1), n2_(n2), n3_(n3), L1_(L1), L2_(L2), L3_(L3) {
  // Quadratic products of modes up to K alias onto 2K - n (horizontal,
  // period n) and 2 n3 - 2K (vertical, even/odd extension of period 2 n3).
  cut1_ = (n1 - 1) / 3;
  cut2_ = (n2 - 1) / 3;
  cutz_ = (2 * n3 - 1) / 3;

  const double two_pi = 2.0 * std::numbers::pi;
  kx_.resize(n1);
  for (int i = 0; i < n1; ++i) kx_[i] = two_pi / L1 * k1_index(i);
  ky_.resize(n2h());
  for (int i = 0; i < n2h(); ++i) ky_[i] = two_pi / L2 * i;
  kz_.resize(planes());
  for (int k = 0; k < planes(); ++k) kz_[k] = std::numbers::pi / L3 * k;

  mask_.resize(spectral_size());
  for (int kz = 0; kz < planes(); ++kz)
    for (int i1 = 0; i1 < n1; ++i1)
      for (int i2 = 0; i2 < n2h(); ++i2)
        mask_[spec_index(kz, i1, i2)] = kept(kz, i1, i2) ? 1 : 0;

  plans_ = std::make_unique<Plans>();
  RealArray real(physical_size());
  CoeffArray cplx(spectral_size());
  const int plane = n1 * n2;
  const int plane_h = n1 * n2h();
  const int dims[2] = {n1, n2};
  std::lock_guard lock(planner_mutex());
  const unsigned flags = FFTW_ESTIMATE;
  plans_->r2c = fftw_plan_many_dft_r2c(2, dims, planes(), real.data(), nullptr,
                                       1, plane, as_fftw(cplx.data()), nullptr,
                                       1, plane_h, flags);
  plans_->c2r = fftw_plan_many_dft_c2r(2, dims, planes(), as_fftw(cplx.data()),
                                       nullptr, 1, plane_h, real.data(),
                                       nullptr, 1, plane, flags);
  const int nz_even[1] = {n3 + 1};
  const int nz_odd[1] = {n3 - 1};
  const fftw_r2r_kind redft[1] = {FFTW_REDFT00};
  const fftw_r2r_kind rodft[1] = {FFTW_RODFT00};
  plans_->dct = fftw_plan_many_r2r(1, nz_even, plane, real.data(), nullptr,
                                   plane, 1, real.data(), nullptr, plane, 1,
                                   redft, flags);
  plans_->dst = fftw_plan_many_r2r(1, nz_odd, plane, real.data() + plane,
                                   nullptr, plane, 1, real.data() + plane,
                                   nullptr, plane, 1, rodft, flags);
  if (!plans_->r2c || !plans_->c2r || !plans_->dct || !plans_->dst)
    throw std::runtime_error("FFTW planning failed");
}

SpectralGrid::~SpectralGrid() = default;

GridPtr make_grid(int n1, int n2, int n3, double L1, double L2, double L3) {
  for (int n : {n1, n2, n3})
    if (n < 4 || n % 2 != 0)
      throw std::invalid_argument("grid counts must be even and >= 4, got " +
                                  std::to_string(n));
  for (double L : {L1, L2, L3})
    if (!(L > 0.0) || !std::isfinite(L))
      throw std::invalid_argument("grid lengths must be positive");
  return GridPtr(new SpectralGrid(n1, n2, n3, L1, L2, L3));
}

double SpectralGrid::weight(int kz, int i2h, Parity p) const {
  const double wh = (i2h == 0 || i2h == n2_ / 2) ? 1.0 : 2.0;
  double wz = 0.5 * L3_;
  if (kz == 0 || kz == n3_) wz = p == Parity::Even ? L3_ : 0.0;
  return L1_ * L2_ * wh * wz;
}

double SpectralGrid::quad_weight(int j) const {
  const double h = L3_ / n3_;
  const double w = (j == 0 || j == n3_) ? 0.5 * h : h;
  return w * L1_ * L2_ / (static_cast<double>(n1_) * n2_);
}

void SpectralGrid::forward_inplace(RealArray& values, Parity p,
                                   CoeffArray& out) const {
  if (values.size() != physical_size())
    throw std::invalid_argument("forward: value array does not match grid");
  out.resize(spectral_size());
  const std::size_t plane = static_cast<std::size_t>(n1_) * n2_;
  if (p == Parity::Even) {
    fftw_execute_r2r(plans_->dct, values.data(), values.data());
  } else {
    std::fill_n(values.data(), plane, 0.0);
    std::fill_n(values.data() + n3_ * plane, plane, 0.0);
    fftw_execute_r2r(plans_->dst, values.data() + plane, values.data() + plane);
  }
  fftw_execute_dft_r2c(plans_->r2c, values.data(), as_fftw(out.data()));

  const double hnorm = 1.0 / (static_cast<double>(n1_) * n2_);
  const std::size_t plane_h = static_cast<std::size_t>(n1_) * n2h();
  for (int kz = 0; kz < planes(); ++kz) {
    double s = hnorm / n3_;
    if (p == Parity::Even && (kz == 0 || kz == n3_)) s *= 0.5;
    if (p == Parity::Odd && (kz == 0 || kz == n3_)) s = 0.0;
    Complex* c = out.data() + kz * plane_h;
    for (std::size_t i = 0; i < plane_h; ++i) c[i] *= s;
  }
}

void SpectralGrid::inverse_into(const CoeffArray& coeffs, Parity p,
                                RealArray& out) const {
  if (coeffs.size() != spectral_size())
    throw std::invalid_argument("inverse: coefficient array does not match grid");
  thread_local CoeffArray scratch;
  scratch.resize(spectral_size());
  const std::size_t plane_h = static_cast<std::size_t>(n1_) * n2h();
  for (int kz = 0; kz < planes(); ++kz) {
    double s = 0.5;
    if (kz == 0 || kz == n3_) s = p == Parity::Even ? 1.0 : 0.0;
    const Complex* src = coeffs.data() + kz * plane_h;
    Complex* dst = scratch.data() + kz * plane_h;
    for (std::size_t i = 0; i < plane_h; ++i) dst[i] = s * src[i];
  }
  out.resize(physical_size());
  fftw_execute_dft_c2r(plans_->c2r, as_fftw(scratch.data()), out.data());
  const std::size_t plane = static_cast<std::size_t>(n1_) * n2_;
  if (p == Parity::Even) {
    fftw_execute_r2r(plans_->dct, out.data(), out.data());
  } else {
    fftw_execute_r2r(plans_->dst, out.data() + plane, out.data() + plane);
    std::fill_n(out.data(), plane, 0.0);
    std::fill_n(out.data() + n3_ * plane, plane, 0.0);
  }
}

CoeffArray forward(std::span<const double> values, Parity p,
                   const SpectralGrid& grid) {
  RealArray work(values.begin(), values.end());
  CoeffArray out;
  grid.forward_inplace(work, p, out);
  return out;
}

RealArray inverse(std::span<const Complex> coeffs, Parity p,
                  const SpectralGrid& grid) {
  CoeffArray c(coeffs.begin(), coeffs.end());
  RealArray out;
  grid.inverse_into(c, p, out);
  return out;
}

void dealias_inplace(CoeffArray& coeffs, const SpectralGrid& grid) {
  if (coeffs.size() != grid.spectral_size())
    throw std::invalid_argument("dealias: coefficient array does not match grid");
  const auto& mask = grid.dealias_mask();
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (!mask[i]) coeffs[i] = 0.0;
}

CoeffArray dealias(std::span<const Complex> coeffs, const SpectralGrid& grid) {
  CoeffArray out(coeffs.begin(), coeffs.end());
  dealias_inplace(out, grid);
  return out;
}

double physical_l2_sq(std::span<const double> values, const SpectralGrid& grid) {
  if (values.size() != grid.physical_size())
    throw std::invalid_argument("physical_l2_sq: size mismatch");
  const std::size_t plane = static_cast<std::size_t>(grid.n1()) * grid.n2();
  double total = 0.0;
  for (int j = 0; j < grid.planes(); ++j) {
    double s = 0.0;
    const double* v = values.data() + j * plane;
    for (std::size_t i = 0; i < plane; ++i) s += v[i] * v[i];
    total += grid.quad_weight(j) * s;
  }
  return total;
}

double spectral_l2_sq(std::span<const Complex> coeffs, Parity p,
                      const SpectralGrid& grid) {
  if (coeffs.size() != grid.spectral_size())
    throw std::invalid_argument("spectral_l2_sq: size mismatch");
  double total = 0.0;
  for (int kz = 0; kz < grid.planes(); ++kz)
    for (int i1 = 0; i1 < grid.n1(); ++i1)
      for (int i2 = 0; i2 < grid.n2h(); ++i2)
        total += std::norm(coeffs[grid.spec_index(kz, i1, i2)]) *
                 grid.weight(kz, i2, p);
  return total;
}

std::vector<double> evaluate(std::span<const Complex> coeffs, Parity p,
                             const SpectralGrid& grid,
                             std::span<const double> xs1,
                             std::span<const double> xs2,
                             std::span<const double> xs3) {
  if (coeffs.size() != grid.spectral_size())
    throw std::invalid_argument("evaluate: size mismatch");
  const int n1 = grid.n1(), nh = grid.n2h(), np = grid.planes();
  const std::size_t na = xs1.size(), nb = xs2.size(), nc = xs3.size();
  const auto& kz = grid.kz();
  const auto& kx = grid.kx();
  const auto& ky = grid.ky();

  std::vector<Complex> v(nc * n1 * nh, 0.0);
  for (std::size_t c = 0; c < nc; ++c)
    for (int k = 0; k < np; ++k) {
      const double b = p == Parity::Even ? std::cos(kz[k] * xs3[c])
                                         : std::sin(kz[k] * xs3[c]);
      if (b == 0.0) continue;
      const Complex* src = coeffs.data() + grid.spec_index(k, 0, 0);
      Complex* dst = v.data() + c * n1 * nh;
      for (int i = 0; i < n1 * nh; ++i) dst[i] += b * src[i];
    }

  std::vector<Complex> w(nc * na * nh, 0.0);
  for (std::size_t a = 0; a < na; ++a)
    for (int i1 = 0; i1 < n1; ++i1) {
      const Complex e = std::polar(1.0, kx[i1] * xs1[a]);
      for (std::size_t c = 0; c < nc; ++c) {
        const Complex* src = v.data() + (c * n1 + i1) * nh;
        Complex* dst = w.data() + (c * na + a) * nh;
        for (int i2 = 0; i2 < nh; ++i2) dst[i2] += e * src[i2];
      }
    }

  std::vector<double> out(nc * na * nb, 0.0);
  const int nyq = grid.n2() / 2;
  for (std::size_t b = 0; b < nb; ++b)
    for (int i2 = 0; i2 < nh; ++i2) {
      const double wt = (i2 == 0 || i2 == nyq) ? 1.0 : 2.0;
      const Complex e = std::polar(wt, ky[i2] * xs2[b]);
      for (std::size_t c = 0; c < nc; ++c)
        for (std::size_t a = 0; a < na; ++a)
          out[(c * na + a) * nb + b] +=
              (w[(c * na + a) * nh + i2] * e).real();
    }
  return out;
}

CoeffArray transfer(std::span<const Complex> coeffs, const SpectralGrid& from,
                    const SpectralGrid& to) {
  if (coeffs.size() != from.spectral_size())
    throw std::invalid_argument("transfer: size mismatch");
  if (from.L1() != to.L1() || from.L2() != to.L2() || from.L3() != to.L3())
    throw std::invalid_argument("transfer: grids describe different domains");
  CoeffArray out(to.spectral_size(), 0.0);
  const int kz_max = std::min(from.n3(), to.n3()) - 1;
  const int k1_max = std::min(from.n1(), to.n1()) / 2 - 1;
  const int k2_max = std::min(from.n2(), to.n2()) / 2 - 1;
  for (int kz = 0; kz <= kz_max; ++kz)
    for (int k1 = -k1_max; k1 <= k1_max; ++k1)
      for (int k2 = 0; k2 <= k2_max; ++k2) {
        const int i1f = k1 >= 0 ? k1 : k1 + from.n1();
        const int i1t = k1 >= 0 ? k1 : k1 + to.n1();
        out[to.spec_index(kz, i1t, k2)] = coeffs[from.spec_index(kz, i1f, k2)];
      }
  return out;
}

}  // namespace slipmhd
