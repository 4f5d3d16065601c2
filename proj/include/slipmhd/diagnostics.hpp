#pragma once

#include <vector>

#include "slipmhd/conormal.hpp"
#include "slipmhd/state.hpp"

namespace slipmhd {

/// Instantaneous norms of one state. Every norm is squared; "w" is the
/// horizontal vorticity (omega_1, omega_2) of u, "wB" that of B. Magnetic
/// entries are zero for Navier-Stokes states.
struct Sample {
  double t = 0.0;
  double eps = 0.0;
  double l2_u = 0.0, l2_B = 0.0;
  double tan_u = 0.0;    // ||u||_{H^m_tan}
  double co_u = 0.0;     // ||u||_{H^m_co}
  double co_w = 0.0;     // ||w||_{H^{m-1}_co}
  double tan_w = 0.0;    // ||w||_{H^{m-1}_tan}
  double tan_d3u = 0.0;  // ||d3 u||_{H^{m-1}_tan}

  // E1 integrands: ||(u,B)||, ||(dh u, d3 B)||, ||(d3 u, dh B)|| in H^m_tan
  double e1_state = 0.0, e1_dh = 0.0, e1_d3 = 0.0;
  // E2 integrands: ||(w,wB)||, ||(dh w, d3 wB)||, ||(d3 w, dh wB)|| in H^{m-1}_co
  double e2_state = 0.0, e2_dh = 0.0, e2_d3 = 0.0;
  double g_rate = 0.0;  // ||d1 B||_{H^{m-1}_co}
  // X: instantaneous part, then the two dissipation integrands
  double x_state = 0.0, x_dh = 0.0, x_d3 = 0.0;

  double lam_u = 0.0, lam_w = 0.0;  // ||Lambda_h^{-s} u||, ||Lambda_h^{-s} w||
  double diss_h = 0.0, diss_3 = 0.0;  // ||(dh u, d3 B)||, ||(d3 u, dh B)|| in L2
  // ||dh u||_{H^m_tan} + ||dh w||_{H^{m-1}_tan} and the d3 analogue
  double ns_dh = 0.0, ns_d3 = 0.0;
};

Sample measure(const MhdState& s, int m, double s_exp, const PhiFn& phi = default_phi);

/// Accumulated functionals at one sample time; integrals by the trapezoid
/// rule over the preceding samples.
struct EnergyReport {
  double t = 0.0;
  double E1 = 0.0, E2 = 0.0, E = 0.0, G = 0.0, X = 0.0;
  double int_e1 = 0.0, int_e2 = 0.0;  // dissipation parts of E1, E2
};

/// Throws std::invalid_argument unless sample times strictly increase.
std::vector<EnergyReport> energy_report(const std::vector<Sample>& samples);

struct WeightedDissipation {
  double horizontal = 0.0;  // int (1+t)^sigma ns_dh
  double vertical = 0.0;    // int (1+t)^sigma eps ns_d3
};

WeightedDissipation weighted_dissipation(const std::vector<Sample>& samples, double sigma);

}  // namespace slipmhd
