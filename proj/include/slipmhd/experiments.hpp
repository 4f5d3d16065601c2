#pragma once

#include <filesystem>

#include "slipmhd/config.hpp"
#include "slipmhd/initial_data.hpp"
#include "slipmhd/report.hpp"
#include "slipmhd/state.hpp"

namespace slipmhd {

GridPtr config_grid(const ExperimentConfig& c);
RandomSpec config_random_spec(const ExperimentConfig& c);
/// The configured variant with the configured epsilon (0 for limit variants).
ModelVariant config_variant(const ExperimentConfig& c);
/// Random solenoidal data of smallness delta for the configured variant.
MhdState config_initial_state(const ExperimentConfig& c);

/// Single trajectory with the discrete energy balance and solenoidality as
/// asserted checks. `final_state` receives the last state when given.
RunRecord run_single(const ExperimentConfig& c, MhdState* final_state = nullptr);

/// Navier-Stokes decay run: fits the decay exponent of ||u||^2_{H^m_tan} on
/// t >= window_t_min, k_min^2 t < window_kt and checks the Lambda_h^{-s}
/// bounds. Uses `initial` instead of random data when given.
RunRecord run_decay(const ExperimentConfig& c, const MhdState* initial = nullptr);

/// Identical data for every epsilon in epsilon_list and for epsilon = 0;
/// sup-in-time differences against the epsilon = 0 run and their slopes.
RunRecord run_epsilon_sweep(const ExperimentConfig& c, int threads = 1);

/// Ensemble ratios of the trilinear, pointwise, pressure and HLS inequalities
/// at two seeds and a refined grid. Rows are appended to checks_csv when it
/// is not empty.
RunRecord verify_inequalities(const ExperimentConfig& c, int threads = 1,
                              const std::filesystem::path& checks_csv = {});
/// Norm equivalence and vorticity relations over random solenoidal states.
RunRecord verify_equivalence(const ExperimentConfig& c, int threads = 1);
/// Differential inequality along a small-amplitude Navier-Stokes run.
RunRecord verify_differential(const ExperimentConfig& c);
/// All three suites merged into one record.
RunRecord run_verify(const ExperimentConfig& c, int threads = 1,
                     const std::filesystem::path& checks_csv = {});

/// Spectral solution against the finite-difference scheme on the configured
/// mesh levels; observed order of the mutual difference.
RunRecord run_oracle(const ExperimentConfig& c, int threads = 1);

}  // namespace slipmhd
