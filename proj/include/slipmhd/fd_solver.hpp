#pragma once

#include <optional>
#include <vector>

#include "slipmhd/state.hpp"

namespace slipmhd {

/// Second-order staggered (MAC) discretisation of the same slab, used only as
/// an independent cross-check of the spectral solver.
///
/// Cells are h1 x h2 x h3 with n3 cells across [0, L3]. Component 1 lives at
/// (i h1, (j+1/2) h2, (k+1/2) h3), component 2 at ((i+1/2) h1, j h2,
/// (k+1/2) h3), both k = 0..n3-1; component 3 at ((i+1/2) h1, (j+1/2) h2,
/// k h3) with k = 0..n3 and zero on the walls.
struct FdMesh {
  int n1 = 0, n2 = 0, n3 = 0;
  double L1 = 0.0, L2 = 0.0, L3 = 0.0;

  double h1() const { return L1 / n1; }
  double h2() const { return L2 / n2; }
  double h3() const { return L3 / n3; }
  /// Number of x3 levels for component c (1-based).
  int levels(int c) const { return c == 3 ? n3 + 1 : n3; }
  std::size_t size(int c) const {
    return static_cast<std::size_t>(levels(c)) * n1 * n2;
  }
  std::size_t index(int k, int i, int j) const {
    return (static_cast<std::size_t>(k) * n1 + i) * n2 + j;
  }
  /// Coordinates of the staggered points of component c.
  std::vector<double> xs1(int c) const;
  std::vector<double> xs2(int c) const;
  std::vector<double> xs3(int c) const;
};

/// Throws std::invalid_argument for nonpositive sizes or lengths.
FdMesh make_fd_mesh(int n1, int n2, int n3, double L1, double L2, double L3);

struct FdVector {
  std::vector<double> c[3];
};

struct FdState {
  FdMesh mesh;
  FdVector u;
  std::optional<FdVector> B;
  double t = 0.0;
  ModelVariant variant = ModelVariant::mhd_limit();
};

/// Samples a spectral state at the staggered points and projects the result.
FdState fd_sample(const MhdState& s, const FdMesh& mesh);

/// Discrete divergence at cell centres, layout [k][i][j].
std::vector<double> fd_divergence(const FdMesh& mesh, const FdVector& v);

/// Removes the discrete gradient part. Returns the number of conjugate
/// gradient iterations; throws std::runtime_error when the Poisson solve does
/// not converge.
int fd_project(const FdMesh& mesh, FdVector& v);

/// Largest stable step for the explicit scheme (diffusive limit).
double fd_stable_dt(const FdMesh& mesh, const ModelVariant& variant);

/// One SSP-RK3 step with projection after every stage.
void fd_step(FdState& s, double dt);

/// Marches to T with the largest dt <= dt_max that divides T.
void fd_run(FdState& s, double T, double dt_max);

/// Volume-weighted L2 norm of (u, B) minus the spectral state evaluated at the
/// same points.
double fd_difference(const FdState& fd, const MhdState& spectral);

}  // namespace slipmhd
