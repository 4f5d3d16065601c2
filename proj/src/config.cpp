#include "slipmhd/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "slipmhd/conormal.hpp"
#include "slipmhd/state.hpp"

namespace slipmhd {

using nlohmann::json;

double ExperimentConfig::sigma_value() const { return sigma ? *sigma : sigma_index(s); }

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& what) { throw ConfigError("config: " + what); };
  for (int n : {n1, n2, n3})
    if (n < 4 || n % 2 != 0) fail("grid sizes must be even and at least 4");
  if (!(L1 > 0 && L2 > 0 && L3 > 0)) fail("lengths must be positive");
  try {
    parse_model_kind(variant);
  } catch (const std::invalid_argument&) {
    fail("unknown variant '" + variant + "'");
  }
  if (!(epsilon >= 0 && epsilon < 1)) fail("epsilon must lie in [0, 1)");
  if (epsilon_list.empty()) fail("epsilon_list is empty");
  for (std::size_t i = 0; i < epsilon_list.size(); ++i) {
    const double e = epsilon_list[i];
    if (!(e > 0 && e < 1)) fail("epsilon_list entries must lie in (0, 1)");
    if (i > 0 && !(e < epsilon_list[i - 1])) fail("epsilon_list must be strictly descending");
  }
  if (!(dt > 0)) fail("dt must be positive");
  if (!(T >= 0) || !std::isfinite(T)) fail("T must be finite and nonnegative");
  if (diag_every < 1) fail("diag_every must be at least 1");
  if (!(s > 13.0 / 14.0 && s < 1.0)) fail("s must lie in (13/14, 1)");
  if (sigma && !(*sigma >= 0 && std::isfinite(*sigma))) fail("sigma must be nonnegative");
  if (m < 2) fail("m must be at least 2");
  if (!(delta > 0) || !std::isfinite(delta)) fail("delta must be positive");
  if (output_dir.empty()) fail("output_dir is empty");
  if (!(spectral_decay >= 0)) fail("spectral_decay must be nonnegative");
  if (!(window_t_min >= 0) || !(window_kt > 0)) fail("bad decay window");
  if (ensemble_samples < 1 || equivalence_samples < 1) fail("sample counts must be positive");
  if (ensemble_n < 8 || ensemble_n % 2 || refine_n < 8 || refine_n % 2)
    fail("ensemble grids must be even and at least 8");
  if (ensemble_band < 1) fail("ensemble_band must be positive");
  if (!(linear_amplitude > 0)) fail("linear_amplitude must be positive");
  if (oracle_levels.size() < 2) fail("oracle_levels needs at least two meshes");
  for (std::size_t i = 0; i < oracle_levels.size(); ++i)
    if (oracle_levels[i] < 4 || (i > 0 && oracle_levels[i] <= oracle_levels[i - 1]))
      fail("oracle_levels must increase from at least 4");
  if (!(oracle_T >= 0) || !(oracle_amplitude > 0)) fail("bad oracle_T or oracle_amplitude");
}

json to_json(const ExperimentConfig& c) {
  json j;
  j["n1"] = c.n1;
  j["n2"] = c.n2;
  j["n3"] = c.n3;
  j["L1"] = c.L1;
  j["L2"] = c.L2;
  j["L3"] = c.L3;
  j["variant"] = c.variant;
  j["epsilon"] = c.epsilon;
  j["epsilon_list"] = c.epsilon_list;
  j["dt"] = c.dt;
  j["T"] = c.T;
  j["diag_every"] = c.diag_every;
  j["s"] = c.s;
  j["sigma"] = c.sigma ? json(*c.sigma) : json(nullptr);
  j["m"] = c.m;
  j["delta"] = c.delta;
  j["seed"] = c.seed;
  j["output_dir"] = c.output_dir;
  j["band_h"] = c.band_h;
  j["band_z"] = c.band_z;
  j["spectral_decay"] = c.spectral_decay;
  j["fixed_magnitude"] = c.fixed_magnitude;
  j["window_t_min"] = c.window_t_min;
  j["window_kt"] = c.window_kt;
  j["ensemble_samples"] = c.ensemble_samples;
  j["ensemble_n"] = c.ensemble_n;
  j["refine_n"] = c.refine_n;
  j["ensemble_band"] = c.ensemble_band;
  j["equivalence_samples"] = c.equivalence_samples;
  j["linear_amplitude"] = c.linear_amplitude;
  j["oracle_levels"] = c.oracle_levels;
  j["oracle_T"] = c.oracle_T;
  j["oracle_amplitude"] = c.oracle_amplitude;
  return j;
}

namespace {

template <class T>
void take(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: bad value for '") + key + "': " + e.what());
  }
}

}  // namespace

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  ExperimentConfig c;
  const json known = to_json(c);
  for (const auto& [key, value] : j.items())
    if (!known.contains(key)) throw ConfigError("config: unknown key '" + key + "'");
  take(j, "n1", c.n1);
  take(j, "n2", c.n2);
  take(j, "n3", c.n3);
  take(j, "L1", c.L1);
  take(j, "L2", c.L2);
  c.L3 = 4 * c.L1;
  take(j, "L3", c.L3);
  take(j, "variant", c.variant);
  take(j, "epsilon", c.epsilon);
  take(j, "epsilon_list", c.epsilon_list);
  take(j, "dt", c.dt);
  take(j, "T", c.T);
  take(j, "diag_every", c.diag_every);
  take(j, "s", c.s);
  if (j.contains("sigma") && !j.at("sigma").is_null()) {
    double v = 0;
    take(j, "sigma", v);
    c.sigma = v;
  }
  take(j, "m", c.m);
  take(j, "delta", c.delta);
  if (j.contains("seed") && !j.at("seed").is_number_unsigned())
    throw ConfigError("config: seed must be a nonnegative integer");
  take(j, "seed", c.seed);
  take(j, "output_dir", c.output_dir);
  take(j, "band_h", c.band_h);
  take(j, "band_z", c.band_z);
  take(j, "spectral_decay", c.spectral_decay);
  take(j, "fixed_magnitude", c.fixed_magnitude);
  take(j, "window_t_min", c.window_t_min);
  take(j, "window_kt", c.window_kt);
  take(j, "ensemble_samples", c.ensemble_samples);
  take(j, "ensemble_n", c.ensemble_n);
  take(j, "refine_n", c.refine_n);
  take(j, "ensemble_band", c.ensemble_band);
  take(j, "equivalence_samples", c.equivalence_samples);
  take(j, "linear_amplitude", c.linear_amplitude);
  take(j, "oracle_levels", c.oracle_levels);
  take(j, "oracle_T", c.oracle_T);
  take(j, "oracle_amplitude", c.oracle_amplitude);
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("config: cannot open " + path.string());
  json j;
  try {
    j = json::parse(is);
  } catch (const json::parse_error& e) {
    throw ConfigError("config: " + path.string() + ": " + e.what());
  }
  return config_from_json(j);
}

std::string config_hash(const ExperimentConfig& c) {
  const std::string text = to_json(c).dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace slipmhd
