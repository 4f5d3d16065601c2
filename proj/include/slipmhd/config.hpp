#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace slipmhd {

/// Error in a configuration file or value; the CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  int n1 = 32, n2 = 32, n3 = 32;
  double L1 = 6.283185307179586, L2 = 6.283185307179586;
  /// Four horizontal periods unless set.
  double L3 = 4 * 6.283185307179586;
  std::string variant = "mhd";  // mhd, mhd_limit, ns, ns_limit
  double epsilon = 1e-2;
  std::vector<double> epsilon_list{1e-2, 4e-3, 1e-3};
  double dt = 1e-3;
  double T = 1.0;
  int diag_every = 10;
  double s = 0.95;
  /// Weight exponent of the dissipation integrals; derived from s if unset.
  std::optional<double> sigma;
  int m = 3;
  /// Smallness of the initial data, see smallness().
  double delta = 1e-2;
  std::uint64_t seed = 1;
  std::string output_dir = "out";

  // initial data
  int band_h = -1, band_z = -1;
  double spectral_decay = 2.0;
  bool fixed_magnitude = false;

  // decay fit window: t >= window_t_min and k_min^2 t < window_kt
  double window_t_min = 5.0;
  double window_kt = 0.2;

  // inequality suites
  int ensemble_samples = 200;
  int ensemble_n = 32;
  int refine_n = 48;
  int ensemble_band = 10;
  int equivalence_samples = 100;
  double linear_amplitude = 1e-4;

  // finite-difference cross-check
  std::vector<int> oracle_levels{12, 24, 48};
  double oracle_T = 0.5;
  double oracle_amplitude = 0.3;

  bool operator==(const ExperimentConfig&) const = default;

  double sigma_value() const;
  /// Throws ConfigError on the first violated invariant.
  void validate() const;
};

nlohmann::json to_json(const ExperimentConfig& c);
/// Unknown keys and wrongly typed values raise ConfigError; absent keys keep
/// their defaults. The result is validated.
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);

/// 16 hex digits of FNV-1a over the canonical JSON form.
std::string config_hash(const ExperimentConfig& c);

}  // namespace slipmhd
