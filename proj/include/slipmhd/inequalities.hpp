#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "slipmhd/conormal.hpp"
#include "slipmhd/diagnostics.hpp"
#include "slipmhd/state.hpp"

namespace slipmhd {

/// lhs <= C * rhs_core with the unknown constant C; ratio = lhs / rhs_core.
/// Norms here are not squared.
struct InequalityCheck {
  std::string name;
  double lhs = 0.0;
  double rhs_core = 0.0;
  double ratio = 0.0;
  /// rhs_core == 0: the ratio is undefined and reported as NaN.
  bool degenerate = false;
};

InequalityCheck make_check(std::string name, double lhs, double rhs_core);

struct CheckOptions {
  /// Physical quadrature on a grid refined by this factor per direction.
  int oversample = 1;
  /// Exponent s of the mixed-norm inequality.
  double s = 0.95;
  int m = 3;
};

/// The trilinear and pointwise inequalities: "a1", "a2", "a3" use f, g, h
/// (a3 ignores h); "a4", "a5", "a9" use f only. For a2 and a3 all three
/// assignments of the distinct directions (i, j, k) are evaluated and the
/// largest ratio is reported.
InequalityCheck check_anisotropic(std::string_view name, const Field& f, const Field& g,
                                  const Field& h, const CheckOptions& opt = {});

/// ||Lambda_h^{-alpha} f||_{L2} against ||f||_{L2_x3 L^p_h}, p = 2/(1+alpha).
/// Requires 0 < alpha < 1 and zero horizontal mean.
InequalityCheck check_hls(const Field& f, double alpha, const CheckOptions& opt = {});

/// grad p with Lap p = div F, F = B.grad B - u.grad u, against
/// ||F||_{H^{m-1}_co} + ||div F||_{H^{m-2}_co}. Needs m >= 2.
InequalityCheck check_pressure(const VectorField& u, const VectorField& B, int m);

struct EquivalenceCheck {
  /// (||v||^2_{H^m_co} + ||d3 v||^2_{H^{m-1}_co}) / (||v||^2_{H^m_tan} + ||w_h(v)||^2_{H^{m-1}_co})
  InequalityCheck u, B;
  /// The same with v = (u, B) jointly: instantaneous X part over E part.
  InequalityCheck state;
  /// Largest relative residual of d3 u1 = w2 + d1 u3, d3 u2 = -w1 + d2 u3,
  /// d3 u3 = -d1 u1 - d2 u2 over u and B.
  double relation_residual = 0.0;
};

EquivalenceCheck check_equivalence(const MhdState& s, int m);

/// Signed residual of
///   d/dt (||u||^2_{H^m_tan} + ||w||^2_{H^{m-1}_tan}) + ns_dh + eps ns_d3 <= 0
/// at every sample. The time derivative is that of the quadratic through the
/// sample and its neighbours (one-sided at the ends), so the cadence must
/// resolve the fastest decay rate. Divided by the energy at that sample (0
/// where it vanishes).
std::vector<double> check_differential_inequality(const std::vector<Sample>& samples);

/// Names accepted by run_ensemble.
const std::vector<std::string>& ensemble_names();

struct EnsembleSpec {
  std::string name;
  std::uint64_t seed = 1;
  int samples = 200;
  int n = 32;  // cubic grid n^3
  double L = 6.283185307179586;
  int band = 10;
  CheckOptions options;
  double alpha = 0.95;  // HLS exponent
};

struct CheckRow {
  InequalityCheck check;
  std::uint64_t seed = 0;
  std::string resolution;
};

/// Independent random draws per sample (complex Gaussian, |k|^-2 amplitude,
/// zero horizontal mean). "b7" reports the joint-state equivalence ratio.
std::vector<CheckRow> run_ensemble(const EnsembleSpec& spec);

/// Largest finite ratio; NaN if none.
double max_ratio(const std::vector<CheckRow>& rows);
double min_ratio(const std::vector<CheckRow>& rows);

/// Columns: name,seed,resolution,ratio,lhs,rhs_core. Appends if the file
/// exists, writing the header only for a new file.
void append_checks_csv(const std::filesystem::path& path, const std::vector<CheckRow>& rows);

}  // namespace slipmhd
