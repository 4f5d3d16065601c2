#pragma once

#include <array>
#include <functional>
#include <vector>

#include "slipmhd/field.hpp"

namespace slipmhd {

/// Weight of the normal conormal field Z3 = phi(x3) d3, given (x3, L3).
using PhiFn = std::function<double(double, double)>;

/// x3 / (1 + x3) tapered by cos(pi x3 / (2 L3)): vanishes to first order at
/// both walls, so Z3 maps each parity class into itself.
double default_phi(double x3, double L3);

/// Z1 = d1, Z2 = d2 exactly; Z3 f = phi d3 f evaluated on the grid nodes and
/// transformed back into the parity basis of f.
Field conormal_Z(const Field& f, int k, const PhiFn& phi = default_phi);

/// Z3^j f for j = 0..order, built once, then queried for any conormal or
/// tangential norm of horizontal derivatives of f. All norms are squared.
class ZStack {
 public:
  ZStack(const Field& f, int order, const PhiFn& phi = default_phi);
  /// || d1^p1 d2^p2 f ||^2 in H^m_co (sum over |alpha| <= m of ||Z^alpha .||^2).
  double co(int m, int p1 = 0, int p2 = 0) const;
  /// || d1^p1 d2^p2 f ||^2 in H^m_tan (sum over k <= m, a1 + a2 = k).
  double tan(int m, int p1 = 0, int p2 = 0) const;
  /// co(m, 1, 0) + co(m, 0, 1).
  double co_dh(int m) const { return co(m, 1, 0) + co(m, 0, 1); }
  double tan_dh(int m) const { return tan(m, 1, 0) + tan(m, 0, 1); }
  int order() const { return static_cast<int>(levels_.size()) - 1; }

 private:
  double sum(int j, int n, int p1, int p2) const;
  std::vector<Field> levels_;
};

double norm_co(const Field& f, int m, const PhiFn& phi = default_phi);
double norm_co(const VectorField& v, int m, const PhiFn& phi = default_phi);
double norm_tan(const Field& f, int m);
double norm_tan(const VectorField& v, int m);

/// Matrix form of Z3 acting on the vertical coefficients of one horizontal
/// mode, assembled from explicit cosine/sine synthesis and analysis on the
/// grid nodes. Shares no code with the transform path.
class Z3Table {
 public:
  Z3Table(const SpectralGrid& grid, const PhiFn& phi = default_phi);
  /// Z3^power f.
  Field apply(const Field& f, int power) const;

 private:
  using Matrix = std::vector<double>;  // row-major (n3+1)^2
  const Matrix& power(Parity p, int j) const;
  int n_;
  std::array<std::vector<Matrix>, 2> powers_;
};

/// Conormal norm by literal enumeration of multi-indices, with Z3 from the
/// operator table. Reference implementation for norm_co.
double norm_co_table(const Field& f, int m, const Z3Table& table);

/// Multiplies each coefficient by |k_h|^s. For s < 0 the k_h = 0 modes must
/// vanish (std::invalid_argument otherwise) and are left at zero.
Field lambda_h(const Field& f, double s);

/// || Lambda_h^s f ||^2 summed over k_h != 0 modes only. Unlike lambda_h this
/// tolerates a horizontal mean.
double lambda_sq(const Field& f, double s);
double lambda_sq(const VectorField& v, double s);

/// sigma = s - (14 s - 13) / (6 (2 - s)).
double sigma_index(double s);

/// Horizontal vorticity components (w1, w2) of curl v; both Odd.
std::array<Field, 2> vorticity_h(const VectorField& v);

}  // namespace slipmhd
