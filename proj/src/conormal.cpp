#include "slipmhd/conormal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace slipmhd {

namespace {

// Horizontal wavenumbers with the Nyquist entries zeroed, matching derivative().
struct HorizontalK {
  std::vector<double> k1, k2;
  explicit HorizontalK(const SpectralGrid& g) : k1(g.kx()), k2(g.ky()) {
    k1[g.n1() / 2] = 0.0;
    k2[g.n2() / 2] = 0.0;
  }
};

// sum_{a + b <= n} x^a y^b
double poly_sum(double x, double y, int n) {
  double total = 0.0, xa = 1.0;
  for (int a = 0; a <= n; ++a) {
    double yb = 1.0;
    for (int b = 0; a + b <= n; ++b) {
      total += xa * yb;
      yb *= y;
    }
    xa *= x;
  }
  return total;
}

}  // namespace

double default_phi(double x3, double L3) {
  return x3 / (1.0 + x3) * std::cos(0.5 * std::numbers::pi * x3 / L3);
}

Field conormal_Z(const Field& f, int k, const PhiFn& phi) {
  if (k == 1 || k == 2) return derivative(f, k);
  if (k != 3) throw std::invalid_argument("conormal_Z: index must be 1, 2 or 3");
  const SpectralGrid& g = f.grid();
  RealArray v = to_physical(derivative(f, 3));
  const std::size_t plane = static_cast<std::size_t>(g.n1()) * g.n2();
  for (int j = 0; j < g.planes(); ++j) {
    const double w = phi(g.x3(j), g.L3());
    double* row = v.data() + j * plane;
    for (std::size_t i = 0; i < plane; ++i) row[i] *= w;
  }
  CoeffArray c;
  g.forward_inplace(v, f.parity(), c);
  return Field(f.grid_ptr(), f.parity(), std::move(c));
}

ZStack::ZStack(const Field& f, int order, const PhiFn& phi) {
  if (order < 0) throw std::invalid_argument("ZStack: negative order");
  levels_.reserve(order + 1);
  levels_.push_back(f);
  for (int j = 1; j <= order; ++j) levels_.push_back(conormal_Z(levels_.back(), 3, phi));
}

double ZStack::sum(int j, int n, int p1, int p2) const {
  const Field& f = levels_[j];
  const SpectralGrid& g = f.grid();
  const HorizontalK hk(g);
  double total = 0.0;
  for (int i1 = 0; i1 < g.n1(); ++i1) {
    const double x = hk.k1[i1] * hk.k1[i1];
    for (int i2 = 0; i2 < g.n2h(); ++i2) {
      const double y = hk.k2[i2] * hk.k2[i2];
      const double mult = std::pow(x, p1) * std::pow(y, p2) * poly_sum(x, y, n);
      if (mult == 0.0) continue;
      double col = 0.0;
      for (int kz = 0; kz < g.planes(); ++kz)
        col += std::norm(f.coeffs()[g.spec_index(kz, i1, i2)]) *
               g.weight(kz, i2, f.parity());
      total += mult * col;
    }
  }
  return total;
}

double ZStack::co(int m, int p1, int p2) const {
  if (m < 0) return 0.0;
  if (m > order()) throw std::invalid_argument("ZStack: order too small for requested norm");
  double total = 0.0;
  for (int j = 0; j <= m; ++j) total += sum(j, m - j, p1, p2);
  return total;
}

double ZStack::tan(int m, int p1, int p2) const {
  if (m < 0) return 0.0;
  return sum(0, m, p1, p2);
}

double norm_co(const Field& f, int m, const PhiFn& phi) { return ZStack(f, m, phi).co(m); }

double norm_co(const VectorField& v, int m, const PhiFn& phi) {
  return norm_co(v[0], m, phi) + norm_co(v[1], m, phi) + norm_co(v[2], m, phi);
}

double norm_tan(const Field& f, int m) { return ZStack(f, 0).tan(m); }

double norm_tan(const VectorField& v, int m) {
  return norm_tan(v[0], m) + norm_tan(v[1], m) + norm_tan(v[2], m);
}

Z3Table::Z3Table(const SpectralGrid& g, const PhiFn& phi) : n_(g.planes()) {
  const int N = g.n3();
  const int n = n_;
  const double pi = std::numbers::pi;
  auto basis = [&](Parity p, int j, int k) {
    const double a = pi * j * k / N;
    return p == Parity::Even ? std::cos(a) : std::sin(a);
  };
  for (Parity p : {Parity::Even, Parity::Odd}) {
    const Parity q = flip(p);
    // d3 on coefficients, then synthesis of the flipped basis: T[j][k]
    Matrix T(n * n, 0.0);
    for (int k = 1; k < N; ++k) {
      const double dk = (p == Parity::Even ? -1.0 : 1.0) * g.kz()[k];
      for (int j = 0; j <= N; ++j) T[j * n + k] = basis(q, j, k) * dk;
    }
    for (int j = 0; j <= N; ++j) {
      const double w = phi(g.x3(j), g.L3());
      for (int k = 0; k < n; ++k) T[j * n + k] *= w;
    }
    // Analysis in basis p.
    Matrix A(n * n, 0.0);
    for (int k = 0; k <= N; ++k)
      for (int j = 0; j <= N; ++j) {
        if (p == Parity::Even) {
          const double wj = (j == 0 || j == N) ? 0.5 : 1.0;
          const double gk = (k == 0 || k == N) ? 2.0 : 1.0;
          A[k * n + j] = 2.0 / (N * gk) * wj * basis(p, j, k);
        } else if (k > 0 && k < N && j > 0 && j < N) {
          A[k * n + j] = 2.0 / N * basis(p, j, k);
        }
      }
    Matrix M(n * n, 0.0);
    for (int r = 0; r < n; ++r)
      for (int j = 0; j < n; ++j) {
        const double a = A[r * n + j];
        if (a == 0.0) continue;
        for (int c = 0; c < n; ++c) M[r * n + c] += a * T[j * n + c];
      }
    auto& pw = powers_[p == Parity::Even ? 0 : 1];
    Matrix I(n * n, 0.0);
    for (int r = 0; r < n; ++r) I[r * n + r] = 1.0;
    pw.push_back(std::move(I));
    for (int e = 1; e <= 5; ++e) {
      const Matrix& P = pw.back();
      Matrix R(n * n, 0.0);
      for (int r = 0; r < n; ++r)
        for (int j = 0; j < n; ++j) {
          const double a = M[r * n + j];
          if (a == 0.0) continue;
          for (int c = 0; c < n; ++c) R[r * n + c] += a * P[j * n + c];
        }
      pw.push_back(std::move(R));
    }
  }
}

const Z3Table::Matrix& Z3Table::power(Parity p, int j) const {
  const auto& pw = powers_[p == Parity::Even ? 0 : 1];
  if (j < 0 || j >= static_cast<int>(pw.size()))
    throw std::invalid_argument("Z3Table: power out of range");
  return pw[j];
}

Field Z3Table::apply(const Field& f, int j) const {
  const SpectralGrid& g = f.grid();
  if (g.planes() != n_) throw std::invalid_argument("Z3Table: grid mismatch");
  const Matrix& P = power(f.parity(), j);
  Field out(f.grid_ptr(), f.parity());
  std::vector<Complex> col(n_);
  for (int i1 = 0; i1 < g.n1(); ++i1)
    for (int i2 = 0; i2 < g.n2h(); ++i2) {
      for (int k = 0; k < n_; ++k) col[k] = f.coeffs()[g.spec_index(k, i1, i2)];
      for (int r = 0; r < n_; ++r) {
        Complex acc{};
        for (int k = 0; k < n_; ++k) acc += P[r * n_ + k] * col[k];
        out.coeffs()[g.spec_index(r, i1, i2)] = acc;
      }
    }
  return out;
}

double norm_co_table(const Field& f, int m, const Z3Table& table) {
  double total = 0.0;
  for (int j = 0; j <= m; ++j) {
    const Field zj = table.apply(f, j);
    for (int a = 0; a + j <= m; ++a) {
      Field za = zj;
      for (int r = 0; r < a; ++r) za = derivative(za, 1);
      for (int b = 0; a + b + j <= m; ++b) {
        Field zab = za;
        for (int r = 0; r < b; ++r) zab = derivative(zab, 2);
        total += l2_sq(zab);
      }
    }
  }
  return total;
}

Field lambda_h(const Field& f, double s) {
  const SpectralGrid& g = f.grid();
  double cmax = 0.0;
  for (const Complex& c : f.coeffs()) cmax = std::max(cmax, std::abs(c));
  Field out(f.grid_ptr(), f.parity());
  for (int kz = 0; kz < g.planes(); ++kz)
    for (int i1 = 0; i1 < g.n1(); ++i1)
      for (int i2 = 0; i2 < g.n2h(); ++i2) {
        const std::size_t idx = g.spec_index(kz, i1, i2);
        const double kh = std::hypot(g.kx()[i1], g.ky()[i2]);
        const Complex c = f.coeffs()[idx];
        if (kh == 0.0) {
          if (s < 0.0) {
            if (std::abs(c) > 1e-12 * cmax)
              throw std::invalid_argument(
                  "lambda_h: negative exponent needs zero horizontal mean");
            out.coeffs()[idx] = 0.0;
          } else {
            out.coeffs()[idx] = s == 0.0 ? c : Complex{};
          }
          continue;
        }
        out.coeffs()[idx] = std::pow(kh, s) * c;
      }
  return out;
}

double lambda_sq(const Field& f, double s) {
  const SpectralGrid& g = f.grid();
  double total = 0.0;
  for (int kz = 0; kz < g.planes(); ++kz)
    for (int i1 = 0; i1 < g.n1(); ++i1)
      for (int i2 = 0; i2 < g.n2h(); ++i2) {
        const double kh2 = g.kx()[i1] * g.kx()[i1] + g.ky()[i2] * g.ky()[i2];
        if (kh2 == 0.0) continue;
        total += std::pow(kh2, s) * std::norm(f.coeffs()[g.spec_index(kz, i1, i2)]) *
                 g.weight(kz, i2, f.parity());
      }
  return total;
}

double lambda_sq(const VectorField& v, double s) {
  return lambda_sq(v[0], s) + lambda_sq(v[1], s) + lambda_sq(v[2], s);
}

double sigma_index(double s) {
  if (s >= 2.0) throw std::invalid_argument("sigma_index: s must be below 2");
  return s - (14.0 * s - 13.0) / (6.0 * (2.0 - s));
}

std::array<Field, 2> vorticity_h(const VectorField& v) {
  Field w1 = derivative(v[2], 2);
  w1 -= derivative(v[1], 3);
  Field w2 = derivative(v[0], 3);
  w2 -= derivative(v[2], 1);
  return {std::move(w1), std::move(w2)};
}

}  // namespace slipmhd
