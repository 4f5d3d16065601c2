// slipmhd: runs, decay and epsilon sweeps, inequality suites and the
// finite-difference cross-check. Writes <out>/<command>.csv and .json.
#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <thread>

#include "slipmhd/experiments.hpp"
#include "slipmhd/snapshot.hpp"

using namespace slipmhd;

namespace {

void print_checks(const RunRecord& r) {
  for (const auto& c : r.checks)
    std::printf("%s %-28s value=%-12.6g threshold=%.6g%s\n", c.passed ? "PASS" : "FAIL",
                c.name.c_str(), c.value, c.threshold, c.asserted ? "" : " (not asserted)");
  for (const auto& f : r.fits)
    std::printf("fit  %-28s exponent=%.6g constant=%.6g residual=%.3g on [%g, %g] n=%d\n",
                f.name.c_str(), f.exponent, f.constant, f.residual, f.lo, f.hi, f.samples);
  for (const auto& n : r.notes) std::printf("note %s\n", n.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anisotropic MHD in a slip-walled slab"};
  app.require_subcommand(1);
  std::string config_path, out_dir;
  std::optional<std::uint64_t> seed;
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON configuration file");
    sub->add_option("--out", out_dir, "Output directory (overrides output_dir)");
    sub->add_option("--seed", seed, "Random seed (overrides seed)");
    sub->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  };
  for (auto [name, help] : {std::pair{"run", "single trajectory"},
                            {"decay", "Navier-Stokes decay run with power-law fit"},
                            {"sweep", "epsilon sweep against the epsilon = 0 run"},
                            {"verify", "inequality, equivalence and differential suites"},
                            {"oracle", "finite-difference cross-check"}})
    add_common(app.add_subcommand(name, help));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  ExperimentConfig cfg;
  try {
    if (!config_path.empty()) cfg = load_config(config_path);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (seed) cfg.seed = *seed;
    cfg.validate();
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  const std::filesystem::path out = cfg.output_dir;
  try {
    RunRecord r;
    if (cmd == "run") {
      MhdState final_state = zero_state(config_grid(cfg), config_variant(cfg));
      r = run_single(cfg, &final_state);
      std::filesystem::create_directories(out);
      write_snapshot(final_state, out / "final");
    } else if (cmd == "decay") {
      r = run_decay(cfg);
    } else if (cmd == "sweep") {
      r = run_epsilon_sweep(cfg, threads);
    } else if (cmd == "verify") {
      std::filesystem::create_directories(out);
      r = run_verify(cfg, threads, out / "checks.csv");
    } else {
      r = run_oracle(cfg, threads);
    }
    emit_report(r, out, cmd);
    std::printf("config %s -> %s\n", r.config_hash.c_str(), (out / (cmd + ".json")).c_str());
    print_checks(r);
    return r.all_passed() ? 0 : 1;
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
