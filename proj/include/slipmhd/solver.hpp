#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "slipmhd/diagnostics.hpp"
#include "slipmhd/state.hpp"

namespace slipmhd {

/// Non-finite state during time stepping.
class SolverFault : public std::runtime_error {
 public:
  SolverFault(const std::string& what, double time)
      : std::runtime_error(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

struct Tendency {
  VectorField du;
  std::optional<VectorField> dB;
};

struct StepInfo {
  /// Step integrals of ||(dh u, d3 B)||^2 and ||(d3 u, dh B)||^2, by the
  /// Runge-Kutta weights at the stage states.
  double diss_h = 0.0;
  double diss_3 = 0.0;
  /// dt * max|(u,B)| / min spacing at the start of the step.
  double courant = 0.0;
  bool cfl_exceeded = false;
};

/// Full tendency: P[-u.grad u + B.grad B + d1 B] + Lap_h u + eps d3^2 u and
/// -u.grad B + B.grad u + d1 u + d3^2 B + eps Lap_h B (projected).
Tendency rhs(const MhdState& s);
/// Tendency without the diagonal dissipation terms.
Tendency nonlinear_rhs(const MhdState& s);

/// One integrating-factor RK4 step. Dissipation is applied exactly per mode;
/// the rest is classical RK4 in the integrating-factor variables.
MhdState step(const MhdState& s, double dt, StepInfo* info = nullptr);

/// Courant limit: dt <= kCflSafety * min spacing / max|(u,B)|.
inline constexpr double kCflSafety = 0.5;

struct RunOptions {
  int m = 3;
  double s_exp = 0.95;
  /// Called with every recorded state; may persist snapshots.
  std::function<void(const MhdState&)> on_sample;
  /// Print a warning to stderr the first time the Courant limit is exceeded.
  bool warn_cfl = true;
};

struct Trajectory {
  std::vector<Sample> samples;
  /// Running step integrals of the dissipation at each sample time.
  std::vector<double> cum_diss_h, cum_diss_3;
  MhdState final_state;
  std::size_t steps = 0;
  bool cfl_exceeded = false;
};

/// Marches round(T/dt) steps, recording a Sample at step 0, every
/// diag_every steps and at the end. Step faults propagate as SolverFault.
Trajectory run(const MhdState& initial, double T, double dt, int diag_every,
               const RunOptions& opts = {});

/// Largest relative mismatch between curl(rhs)_h and the independently
/// assembled right-hand side of the horizontal vorticity equations.
double vorticity_residual(const MhdState& s);

}  // namespace slipmhd
