#pragma once

#include <cstdint>
#include <random>

#include "slipmhd/conormal.hpp"
#include "slipmhd/state.hpp"

namespace slipmhd {

struct RandomSpec {
  /// Largest |index| drawn per axis; negative means the grid's dealias cut.
  /// Coefficients are drawn in a fixed index order, so the same seed and
  /// band give the same field on every grid that resolves the band.
  int band_h = -1;
  int band_z = -1;
  /// Amplitude (1 + |k|^2)^(-decay/2) with angular |k|.
  double decay = 2.0;
  /// true: unit-magnitude random phases times the amplitude;
  /// false: complex Gaussian coefficients.
  bool fixed_magnitude = false;
  bool zero_mean_h = true;
};

/// Random real band-limited field of the given parity.
Field random_field(GridPtr grid, Parity p, std::mt19937_64& rng, const RandomSpec& spec);

/// Leray-projected random field with slip parity.
VectorField random_solenoidal(GridPtr grid, std::mt19937_64& rng, const RandomSpec& spec);

/// ||(u,B)||^2_{H^m_co} + ||(d3 u, d3 B)||^2_{H^{m-1}_co}.
double smallness(const MhdState& s, int m, const PhiFn& phi = default_phi);

/// Random solenoidal state (B drawn after u from the same stream), scaled so
/// smallness(state, m) == delta.
MhdState random_state(GridPtr grid, ModelVariant variant, std::uint64_t seed,
                      const RandomSpec& spec, double delta, int m);

}  // namespace slipmhd
