#pragma once

#include <array>
#include <functional>

#include "slipmhd/grid.hpp"

namespace slipmhd {

/// One scalar component: spectral coefficients in the basis selected by its
/// parity.
class Field {
 public:
  Field(GridPtr grid, Parity parity);
  Field(GridPtr grid, Parity parity, CoeffArray coeffs);

  const SpectralGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  Parity parity() const { return parity_; }
  CoeffArray& coeffs() { return coeffs_; }
  const CoeffArray& coeffs() const { return coeffs_; }

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(double s);
  /// this += s * other
  Field& axpy(double s, const Field& other);

  bool all_finite() const;
  void set_zero();

 private:
  GridPtr grid_;
  Parity parity_;
  CoeffArray coeffs_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double s, Field a);

/// Three components. Velocity and magnetic fields use (Even, Even, Odd), which
/// encodes u3 = 0 and d3 u_h = 0 on the walls; curls of those use
/// (Odd, Odd, Even).
class VectorField {
 public:
  static constexpr std::array<Parity, 3> kSlip{Parity::Even, Parity::Even,
                                               Parity::Odd};
  static constexpr std::array<Parity, 3> kCurl{Parity::Odd, Parity::Odd,
                                               Parity::Even};

  VectorField(GridPtr grid, std::array<Parity, 3> parities = kSlip);
  VectorField(Field c1, Field c2, Field c3);

  Field& operator[](int i) { return c_[i]; }
  const Field& operator[](int i) const { return c_[i]; }
  const SpectralGrid& grid() const { return c_[0].grid(); }
  const GridPtr& grid_ptr() const { return c_[0].grid_ptr(); }
  std::array<Parity, 3> parities() const;
  bool slip_compatible() const { return parities() == kSlip; }

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  VectorField& operator*=(double s);
  VectorField& axpy(double s, const VectorField& o);
  bool all_finite() const;

 private:
  std::array<Field, 3> c_;
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double s, VectorField a);

// --- physical <-> spectral ----------------------------------------------

RealArray to_physical(const Field& f);
/// Forward transform without dealiasing.
Field from_physical(std::span<const double> values, Parity p, GridPtr grid);
/// Samples fn(x1, x2, x3) on the grid nodes and transforms.
Field sample_function(const std::function<double(double, double, double)>& fn,
                      Parity p, GridPtr grid);
/// Evaluates the field at a single point (exact spectral sum).
double value_at(const Field& f, double x1, double x2, double x3);

// --- inner products and norms ---------------------------------------------

double inner(const Field& a, const Field& b);
double inner(const VectorField& a, const VectorField& b);
double l2_sq(const Field& f);
double l2_sq(const VectorField& v);
double l2(const Field& f);
double l2(const VectorField& v);
double max_abs(const Field& f);

// --- calculus -------------------------------------------------------------

/// Exact spectral derivative along axis 1, 2 or 3. Axis 3 flips parity.
Field derivative(const Field& f, int axis);
Field gradient_component(const Field& f, int axis);
VectorField gradient(const Field& f);
/// Horizontal Laplacian d1^2 + d2^2.
Field laplacian_h(const Field& f);
Field d3_squared(const Field& f);
/// Divergence of a slip-compatible field (result Even).
Field divergence(const VectorField& v);
/// Curl; slip-compatible input gives (Odd, Odd, Even) output.
VectorField curl(const VectorField& v);
/// Orthogonal projection onto solenoidal fields, per mode I - k k^T/|k|^2 in
/// the mixed Fourier/cosine/sine basis. The (k_h, kz) = 0 mode keeps its
/// horizontal part.
VectorField leray_project(const VectorField& v);

/// Dealiased pointwise product, computed on the grid nodes.
Field product(const Field& a, const Field& b);
/// a . grad f with dealiasing; output parity parity(a1) * parity(f).
Field advect(const VectorField& a, const Field& f);
VectorField advect(const VectorField& a, const VectorField& f);

}  // namespace slipmhd
