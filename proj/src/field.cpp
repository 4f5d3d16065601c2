#include "slipmhd/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace slipmhd {

namespace {

void require_same_grid(const Field& a, const Field& b, const char* what) {
  if (a.grid_ptr() != b.grid_ptr() && &a.grid() != &b.grid())
    throw std::invalid_argument(std::string(what) + ": fields live on different grids");
}

void require_same_layout(const Field& a, const Field& b, const char* what) {
  require_same_grid(a, b, what);
  if (a.parity() != b.parity())
    throw std::invalid_argument(std::string(what) + ": parity mismatch");
}

}  // namespace

Field::Field(GridPtr grid, Parity parity)
    : grid_(std::move(grid)), parity_(parity), coeffs_(grid_->spectral_size()) {}

Field::Field(GridPtr grid, Parity parity, CoeffArray coeffs)
    : grid_(std::move(grid)), parity_(parity), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != grid_->spectral_size())
    throw std::invalid_argument("Field: coefficient array does not match grid");
}

Field& Field::operator+=(const Field& other) { return axpy(1.0, other); }
Field& Field::operator-=(const Field& other) { return axpy(-1.0, other); }

Field& Field::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

Field& Field::axpy(double s, const Field& other) {
  require_same_layout(*this, other, "axpy");
  const Complex* o = other.coeffs_.data();
  Complex* c = coeffs_.data();
  for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += s * o[i];
  return *this;
}

bool Field::all_finite() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Complex& c) {
    return std::isfinite(c.real()) && std::isfinite(c.imag());
  });
}

void Field::set_zero() { std::fill(coeffs_.begin(), coeffs_.end(), Complex{}); }

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double s, Field a) { return a *= s; }

VectorField::VectorField(GridPtr grid, std::array<Parity, 3> parities)
    : c_{Field(grid, parities[0]), Field(grid, parities[1]),
         Field(grid, parities[2])} {}

VectorField::VectorField(Field c1, Field c2, Field c3)
    : c_{std::move(c1), std::move(c2), std::move(c3)} {}

std::array<Parity, 3> VectorField::parities() const {
  return {c_[0].parity(), c_[1].parity(), c_[2].parity()};
}

VectorField& VectorField::operator+=(const VectorField& o) { return axpy(1.0, o); }
VectorField& VectorField::operator-=(const VectorField& o) { return axpy(-1.0, o); }
VectorField& VectorField::operator*=(double s) {
  for (auto& c : c_) c *= s;
  return *this;
}
VectorField& VectorField::axpy(double s, const VectorField& o) {
  for (int i = 0; i < 3; ++i) c_[i].axpy(s, o.c_[i]);
  return *this;
}
bool VectorField::all_finite() const {
  return c_[0].all_finite() && c_[1].all_finite() && c_[2].all_finite();
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double s, VectorField a) { return a *= s; }

RealArray to_physical(const Field& f) {
  RealArray out;
  f.grid().inverse_into(f.coeffs(), f.parity(), out);
  return out;
}

Field from_physical(std::span<const double> values, Parity p, GridPtr grid) {
  RealArray work(values.begin(), values.end());
  CoeffArray c;
  grid->forward_inplace(work, p, c);
  return Field(std::move(grid), p, std::move(c));
}

Field sample_function(const std::function<double(double, double, double)>& fn,
                      Parity p, GridPtr grid) {
  const SpectralGrid& g = *grid;
  RealArray v(g.physical_size());
  for (int j = 0; j < g.planes(); ++j)
    for (int i1 = 0; i1 < g.n1(); ++i1)
      for (int i2 = 0; i2 < g.n2(); ++i2)
        v[g.phys_index(j, i1, i2)] = fn(g.x1(i1), g.x2(i2), g.x3(j));
  CoeffArray c;
  g.forward_inplace(v, p, c);
  return Field(std::move(grid), p, std::move(c));
}

double value_at(const Field& f, double x1, double x2, double x3) {
  const double a[1] = {x1}, b[1] = {x2}, c[1] = {x3};
  return evaluate(f.coeffs(), f.parity(), f.grid(), a, b, c)[0];
}

double inner(const Field& a, const Field& b) {
  require_same_layout(a, b, "inner");
  const SpectralGrid& g = a.grid();
  double total = 0.0;
  for (int kz = 0; kz < g.planes(); ++kz)
    for (int i1 = 0; i1 < g.n1(); ++i1) {
      const Complex* x = a.coeffs().data() + g.spec_index(kz, i1, 0);
      const Complex* y = b.coeffs().data() + g.spec_index(kz, i1, 0);
      for (int i2 = 0; i2 < g.n2h(); ++i2)
        total += g.weight(kz, i2, a.parity()) *
                 (x[i2].real() * y[i2].real() + x[i2].imag() * y[i2].imag());
    }
  return total;
}

double inner(const VectorField& a, const VectorField& b) {
  return inner(a[0], b[0]) + inner(a[1], b[1]) + inner(a[2], b[2]);
}

double l2_sq(const Field& f) { return spectral_l2_sq(f.coeffs(), f.parity(), f.grid()); }
double l2_sq(const VectorField& v) { return l2_sq(v[0]) + l2_sq(v[1]) + l2_sq(v[2]); }
double l2(const Field& f) { return std::sqrt(l2_sq(f)); }
double l2(const VectorField& v) { return std::sqrt(l2_sq(v)); }

double max_abs(const Field& f) {
  const RealArray v = to_physical(f);
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

Field derivative(const Field& f, int axis) {
  const SpectralGrid& g = f.grid();
  const int np = g.planes(), n1 = g.n1(), nh = g.n2h();
  const Complex I(0.0, 1.0);
  if (axis == 1 || axis == 2) {
    Field out(f.grid_ptr(), f.parity());
    for (int kz = 0; kz < np; ++kz)
      for (int i1 = 0; i1 < n1; ++i1)
        for (int i2 = 0; i2 < nh; ++i2) {
          const std::size_t idx = g.spec_index(kz, i1, i2);
          double k = 0.0;
          if (axis == 1 && 2 * i1 != n1) k = g.kx()[i1];
          if (axis == 2 && 2 * i2 != g.n2()) k = g.ky()[i2];
          out.coeffs()[idx] = I * k * f.coeffs()[idx];
        }
    return out;
  }
  if (axis != 3) throw std::invalid_argument("derivative: axis must be 1, 2 or 3");
  Field out(f.grid_ptr(), flip(f.parity()));
  const std::size_t plane = static_cast<std::size_t>(n1) * nh;
  // d3 cos(kz x3) = -kz sin(kz x3);  d3 sin(kz x3) = kz cos(kz x3)
  const double sign = f.parity() == Parity::Even ? -1.0 : 1.0;
  for (int kz = 1; kz < g.n3(); ++kz) {
    const double k = sign * g.kz()[kz];
    const Complex* src = f.coeffs().data() + kz * plane;
    Complex* dst = out.coeffs().data() + kz * plane;
    for (std::size_t i = 0; i < plane; ++i) dst[i] = k * src[i];
  }
  return out;
}

Field gradient_component(const Field& f, int axis) { return derivative(f, axis); }

VectorField gradient(const Field& f) {
  return VectorField(derivative(f, 1), derivative(f, 2), derivative(f, 3));
}

Field laplacian_h(const Field& f) {
  Field out = derivative(derivative(f, 1), 1);
  out += derivative(derivative(f, 2), 2);
  return out;
}

Field d3_squared(const Field& f) { return derivative(derivative(f, 3), 3); }

Field divergence(const VectorField& v) {
  Field out = derivative(v[0], 1);
  out += derivative(v[1], 2);
  out += derivative(v[2], 3);
  return out;
}

VectorField curl(const VectorField& v) {
  Field w1 = derivative(v[2], 2);
  w1 -= derivative(v[1], 3);
  Field w2 = derivative(v[0], 3);
  w2 -= derivative(v[2], 1);
  Field w3 = derivative(v[1], 1);
  w3 -= derivative(v[0], 2);
  return VectorField(std::move(w1), std::move(w2), std::move(w3));
}

VectorField leray_project(const VectorField& v) {
  if (!v.slip_compatible())
    throw std::invalid_argument("leray_project: expects (even, even, odd) parity");
  const SpectralGrid& g = v.grid();
  VectorField out = v;
  const Complex I(0.0, 1.0);
  for (int kz = 0; kz < g.planes(); ++kz) {
    // The vertical component has no sine mode at kz = 0 or kz = n3.
    const double k3 = (kz == 0 || kz == g.n3()) ? 0.0 : g.kz()[kz];
    for (int i1 = 0; i1 < g.n1(); ++i1) {
      const double k1 = g.kx()[i1];
      for (int i2 = 0; i2 < g.n2h(); ++i2) {
        const double k2 = g.ky()[i2];
        const std::size_t idx = g.spec_index(kz, i1, i2);
        const double kk = k1 * k1 + k2 * k2 + k3 * k3;
        Complex& c1 = out[0].coeffs()[idx];
        Complex& c2 = out[1].coeffs()[idx];
        Complex& c3 = out[2].coeffs()[idx];
        if (kk == 0.0) {
          c3 = 0.0;
          continue;
        }
        // w = (c1, c2, -i c3) transforms like k; project in w.
        const Complex w3 = -I * c3;
        const Complex s = (k1 * c1 + k2 * c2 + k3 * w3) / kk;
        c1 -= k1 * s;
        c2 -= k2 * s;
        c3 = I * (w3 - k3 * s);
        if (k3 == 0.0) c3 = 0.0;
      }
    }
  }
  return out;
}

Field product(const Field& a, const Field& b) {
  require_same_grid(a, b, "product");
  RealArray pa = to_physical(a);
  const RealArray pb = to_physical(b);
  for (std::size_t i = 0; i < pa.size(); ++i) pa[i] *= pb[i];
  Field out = from_physical(pa, a.parity() * b.parity(), a.grid_ptr());
  dealias_inplace(out.coeffs(), out.grid());
  return out;
}

Field advect(const VectorField& a, const Field& f) {
  const Parity p = a[0].parity() * f.parity();
  RealArray acc(f.grid().physical_size(), 0.0);
  for (int j = 0; j < 3; ++j) {
    const Field df = derivative(f, j + 1);
    if (a[j].parity() * df.parity() != p)
      throw std::logic_error("advect: inconsistent parity across terms");
    const RealArray pa = to_physical(a[j]);
    const RealArray pd = to_physical(df);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += pa[i] * pd[i];
  }
  Field out = from_physical(acc, p, f.grid_ptr());
  dealias_inplace(out.coeffs(), out.grid());
  return out;
}

VectorField advect(const VectorField& a, const VectorField& f) {
  return VectorField(advect(a, f[0]), advect(a, f[1]), advect(a, f[2]));
}

}  // namespace slipmhd
