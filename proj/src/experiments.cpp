#include "slipmhd/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include "slipmhd/fd_solver.hpp"
#include "slipmhd/fit.hpp"
#include "slipmhd/inequalities.hpp"
#include "slipmhd/solver.hpp"

namespace slipmhd {

namespace {

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  threads = std::clamp(threads, 1, std::max(1, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex err_mutex;
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(err_mutex);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

RunRecord new_record(const std::string& kind, const ExperimentConfig& c) {
  RunRecord r;
  r.kind = kind;
  r.config = c;
  r.config_hash = config_hash(c);
  return r;
}

void flag(RunRecord& r, std::string name, bool passed, double value, double threshold,
          bool asserted = true) {
  r.checks.push_back({std::move(name), passed, asserted, value, threshold});
}

double energy(const MhdState& s) { return l2_sq(s.u) + (s.B ? l2_sq(*s.B) : 0.0); }

RunOptions options(const ExperimentConfig& c) {
  RunOptions o;
  o.m = c.m;
  o.s_exp = c.s;
  o.warn_cfl = false;
  return o;
}

double volume(const SpectralGrid& g) { return g.L1() * g.L2() * g.L3(); }

}  // namespace

GridPtr config_grid(const ExperimentConfig& c) {
  return make_grid(c.n1, c.n2, c.n3, c.L1, c.L2, c.L3);
}

RandomSpec config_random_spec(const ExperimentConfig& c) {
  RandomSpec s;
  s.band_h = c.band_h;
  s.band_z = c.band_z;
  s.decay = c.spectral_decay;
  s.fixed_magnitude = c.fixed_magnitude;
  s.zero_mean_h = true;
  return s;
}

ModelVariant config_variant(const ExperimentConfig& c) {
  const ModelKind k = parse_model_kind(c.variant);
  const bool magnetic = k == ModelKind::MhdViscous || k == ModelKind::MhdLimit;
  const bool limit = k == ModelKind::MhdLimit || k == ModelKind::NsLimit;
  return ModelVariant::make(magnetic, limit ? 0.0 : c.epsilon);
}

MhdState config_initial_state(const ExperimentConfig& c) {
  return random_state(config_grid(c), config_variant(c), c.seed, config_random_spec(c), c.delta,
                      c.m);
}

RunRecord run_single(const ExperimentConfig& c, MhdState* final_state) {
  RunRecord r = new_record("run", c);
  const MhdState s0 = config_initial_state(c);
  const double eps = s0.variant.epsilon();
  std::optional<Trajectory> run_result;
  try {
    run_result = run(s0, c.T, c.dt, c.diag_every, options(c));
  } catch (const SolverFault& f) {
    flag(r, "completed", false, f.time(), c.T);
    r.notes.push_back(std::string("solver fault: ") + f.what());
    return r;
  }
  const Trajectory& tr = *run_result;
  flag(r, "completed", true, tr.final_state.t, c.T);
  r.rows = report_rows(tr.samples, s0.variant.name());

  const double e0 = energy(s0), e1 = energy(tr.final_state);
  const double bal = e1 - e0 + 2.0 * (tr.cum_diss_h.back() + eps * tr.cum_diss_3.back());
  const double rel = e0 > 0 ? std::abs(bal) / e0 : std::abs(bal);
  flag(r, "energy_identity", rel < 1e-6, rel, 1e-6);

  double div = relative_divergence(tr.final_state.u);
  if (tr.final_state.B) div = std::max(div, relative_divergence(*tr.final_state.B));
  flag(r, "solenoidal", div < 1e-10, div, 1e-10);

  double peak = 0.0;
  for (const auto& s : tr.samples) peak = std::max(peak, s.e1_state + s.e2_state);
  const double start = tr.samples.front().e1_state + tr.samples.front().e2_state;
  flag(r, "energy_bounded", peak <= 2.0 * start, start > 0 ? peak / start : 0.0, 2.0, false);

  r.values["energy_initial"] = e0;
  r.values["energy_final"] = e1;
  r.values["steps"] = static_cast<double>(tr.steps);
  r.values["cfl_exceeded"] = tr.cfl_exceeded ? 1.0 : 0.0;
  if (tr.cfl_exceeded) r.notes.push_back("Courant limit exceeded during the run");
  if (final_state) *final_state = tr.final_state;
  return r;
}

RunRecord run_decay(const ExperimentConfig& c, const MhdState* initial) {
  const ModelVariant v = config_variant(c);
  if (v.magnetic()) throw ConfigError("decay: needs variant ns or ns_limit");
  RunRecord r = new_record("decay", c);
  const MhdState s0 = initial ? *initial : config_initial_state(c);
  if (s0.B) throw std::invalid_argument("run_decay: initial state carries a magnetic field");

  std::optional<Trajectory> run_result;
  try {
    run_result = run(s0, c.T, c.dt, c.diag_every, options(c));
  } catch (const SolverFault& f) {
    flag(r, "completed", false, f.time(), c.T);
    r.notes.push_back(std::string("solver fault: ") + f.what());
    return r;
  }
  const Trajectory& tr = *run_result;
  flag(r, "completed", true, tr.final_state.t, c.T);
  r.rows = report_rows(tr.samples, s0.variant.name());

  const double kmin = 2 * std::numbers::pi / std::max(c.L1, c.L2);
  const double lo = c.window_t_min, hi = std::min(c.T, c.window_kt / (kmin * kmin));
  r.values["k_min"] = kmin;
  r.values["window_t_lo"] = lo;
  r.values["window_t_hi"] = hi;
  r.notes.push_back("decay fit window: t in [" + fmt(lo) + ", " + fmt(hi) +
                    "], k_min^2 t < " + fmt(c.window_kt));

  std::vector<double> t, tan_u, en;
  for (const auto& s : tr.samples) {
    t.push_back(s.t);
    tan_u.push_back(s.tan_u);
    en.push_back(s.tan_u + s.tan_w);
  }
  const bool zero = std::all_of(tan_u.begin(), tan_u.end(), [](double x) { return x == 0.0; });
  if (zero) {
    r.notes.push_back("zero data: nothing to fit");
  } else {
    auto add_fit = [&](const std::string& name, const std::vector<double>& y) -> const FitEntry* {
      try {
        const PowerLawFit f = fit_power_law(t, y, lo, hi);
        r.fits.push_back({name, f.exponent, f.constant, f.residual, f.lo, f.hi, f.samples});
        return &r.fits.back();
      } catch (const std::invalid_argument& e) {
        r.notes.push_back(name + ": " + e.what());
        return nullptr;
      }
    };
    const FitEntry* f = add_fit("decay_tan_u", tan_u);
    add_fit("decay_energy", en);
    const double elo = c.s - 0.15, ehi = c.s + 0.25;
    if (f)
      flag(r, "decay_exponent", f->exponent >= elo && f->exponent <= ehi, f->exponent, elo);
    else
      flag(r, "decay_exponent", false, 0.0, elo);
  }

  // (1+t)^s times the tangential energy, relative to its initial value
  double weighted_max = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (en[0] > 0) weighted_max = std::max(weighted_max, std::pow(1 + t[i], c.s) * en[i] / en[0]);
  r.values["weighted_energy_max_ratio"] = weighted_max;

  const double slack = c.delta * c.delta;
  const double lu0 = tr.samples.front().lam_u, lw0 = tr.samples.front().lam_w;
  double lu = 0, lw = 0;
  for (const auto& s : tr.samples) {
    lu = std::max(lu, s.lam_u);
    lw = std::max(lw, s.lam_w);
  }
  r.values["lambda_u_initial"] = lu0;
  r.values["lambda_u_max"] = lu;
  r.values["lambda_w_initial"] = lw0;
  r.values["lambda_w_max"] = lw;
  r.values["lambda_slack"] = slack;
  flag(r, "lambda_u_bound", lu <= 2 * lu0 + slack, lu, 2 * lu0 + slack);
  flag(r, "lambda_w_bound", lw <= 2 * lw0 + slack, lw, 2 * lw0 + slack);

  const double sigma = c.sigma_value();
  const WeightedDissipation wd = weighted_dissipation(tr.samples, sigma);
  r.values["sigma"] = sigma;
  r.values["weighted_dissipation_h"] = wd.horizontal;
  r.values["weighted_dissipation_3"] = wd.vertical;
  r.values["steps"] = static_cast<double>(tr.steps);
  return r;
}

RunRecord run_epsilon_sweep(const ExperimentConfig& c, int threads) {
  RunRecord r = new_record("sweep", c);
  const bool magnetic = config_variant(c).magnetic();
  ExperimentConfig first = c;
  first.epsilon = c.epsilon_list.front();
  first.variant = magnetic ? "mhd" : "ns";
  MhdState ref0 = config_initial_state(first);
  ref0.variant = ModelVariant::make(magnetic, 0.0);

  std::vector<MhdState> ref_states;
  RunOptions ropt = options(c);
  ropt.on_sample = [&](const MhdState& s) { ref_states.push_back(s); };
  const Trajectory ref = run(ref0, c.T, c.dt, c.diag_every, ropt);
  r.rows = report_rows(ref.samples, ref0.variant.name());

  const int n = static_cast<int>(c.epsilon_list.size());
  std::vector<double> sup_l2(n, 0.0), sup_linf(n, 0.0), sup_co(n, 0.0);
  std::vector<std::vector<ReportRow>> member_rows(n);
  parallel_for(n, threads, [&](int i) {
    MhdState s = ref0;
    s.variant = ModelVariant::make(magnetic, c.epsilon_list[i]);
    std::size_t idx = 0;
    RunOptions o = options(c);
    o.on_sample = [&](const MhdState& x) {
      if (idx >= ref_states.size()) throw std::logic_error("sweep: sample schedules differ");
      const MhdState& y = ref_states[idx++];
      const VectorField du = x.u - y.u;
      sup_l2[i] = std::max(sup_l2[i], l2_sq(du));
      for (int k = 0; k < 3; ++k) sup_linf[i] = std::max(sup_linf[i], max_abs(du[k]));
      double co = norm_co(du, c.m - 1);
      if (magnetic) co += norm_co(*x.B - *y.B, c.m - 1);
      sup_co[i] = std::max(sup_co[i], co);
    };
    const Trajectory tr = run(s, c.T, c.dt, c.diag_every, o);
    member_rows[i] = report_rows(tr.samples, s.variant.name());
  });
  for (auto& rows : member_rows) r.rows.insert(r.rows.end(), rows.begin(), rows.end());

  const auto& eps = c.epsilon_list;
  for (int i = 0; i < n; ++i) {
    r.values["sup_l2[eps=" + fmt(eps[i]) + "]"] = sup_l2[i];
    r.values["sup_linf[eps=" + fmt(eps[i]) + "]"] = sup_linf[i];
    r.values["sup_co[eps=" + fmt(eps[i]) + "]"] = sup_co[i];
  }

  // The constant is fixed by the largest epsilon and must cover the rest.
  const double cfit = sup_l2[0] / std::sqrt(eps[0]);
  r.values["C_fit"] = cfit;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double ratio = sup_l2[i] / std::sqrt(eps[i]);
    r.values["ratio_sqrt_eps[eps=" + fmt(eps[i]) + "]"] = ratio;
    worst = std::max(worst, cfit > 0 ? ratio / cfit : 0.0);
  }
  flag(r, "c_fit_bound", worst <= 1.0 + 1e-12, worst, 1.0);

  bool monotone = true, strict = true;
  for (int i = 1; i < n; ++i) {
    const double noise = 1e-12 * sup_l2[0] + 1e-300;
    if (sup_l2[i] > sup_l2[i - 1] + noise) monotone = false;
    if (!(sup_co[i] < sup_co[i - 1])) strict = false;
  }
  flag(r, "monotone_l2", monotone, 0.0, 0.0);
  flag(r, "co_strictly_decreasing", strict, 0.0, 0.0, magnetic);

  if (n < 2) {
    r.notes.push_back("single epsilon: no slope");
    return r;
  }
  auto slope = [&](const std::string& name, const std::vector<double>& y, double threshold) {
    try {
      const SlopeFit f = fit_loglog(eps, y);
      r.fits.push_back({name, f.slope, f.constant, f.residual, eps.back(), eps.front(), n});
      flag(r, name, f.slope >= threshold, f.slope, threshold);
    } catch (const std::invalid_argument& e) {
      r.notes.push_back(name + ": " + e.what());
      flag(r, name, false, 0.0, threshold);
    }
  };
  slope("l2_slope", sup_l2, 0.5);
  slope("linf_slope", sup_linf, 1.0 / 16.0);
  if (magnetic) slope("co_slope", sup_co, 0.0);
  return r;
}

RunRecord verify_inequalities(const ExperimentConfig& c, int threads,
                              const std::filesystem::path& checks_csv) {
  RunRecord r = new_record("verify", c);
  std::vector<std::string> names;
  for (const auto& n : ensemble_names())
    if (n != "b7") names.push_back(n);
  const int runs = 3;  // seed, seed + 1, refined grid
  std::vector<std::vector<CheckRow>> rows(names.size() * runs);
  parallel_for(static_cast<int>(rows.size()), threads, [&](int k) {
    EnsembleSpec spec;
    spec.name = names[k / runs];
    const int which = k % runs;
    spec.seed = c.seed + (which == 1 ? 1 : 0);
    spec.samples = c.ensemble_samples;
    spec.n = which == 2 ? c.refine_n : c.ensemble_n;
    spec.band = c.ensemble_band;
    spec.options.m = c.m;
    spec.options.s = c.s;
    spec.alpha = c.s;
    rows[k] = run_ensemble(spec);
  });
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto& a = rows[i * runs];
    const auto& b = rows[i * runs + 1];
    const auto& f = rows[i * runs + 2];
    int bad = 0;
    for (const auto* set : {&a, &b, &f})
      for (const auto& row : *set)
        if (row.check.degenerate || !std::isfinite(row.check.ratio)) ++bad;
    const double ma = max_ratio(a), mb = max_ratio(b), mf = max_ratio(f);
    const std::string& n = names[i];
    r.values[n + ".max.seed_a"] = std::isfinite(ma) ? ma : -1.0;
    r.values[n + ".max.seed_b"] = std::isfinite(mb) ? mb : -1.0;
    r.values[n + ".max.refined"] = std::isfinite(mf) ? mf : -1.0;
    flag(r, n + "_finite", bad == 0, bad, 0.0);
    const double agree = std::max(ma, mb) / std::min(ma, mb);
    flag(r, n + "_seed_agreement", agree <= 2.0, std::isfinite(agree) ? agree : -1.0, 2.0);
    const double change = std::abs(mf - ma) / ma;
    flag(r, n + "_refinement", change < 0.5, std::isfinite(change) ? change : -1.0, 0.5);
  }
  if (!checks_csv.empty())
    for (const auto& set : rows) append_checks_csv(checks_csv, set);
  return r;
}

RunRecord verify_equivalence(const ExperimentConfig& c, int threads) {
  RunRecord r = new_record("verify", c);
  const GridPtr g = make_grid(c.ensemble_n, c.ensemble_n, c.ensemble_n, 2 * std::numbers::pi,
                              2 * std::numbers::pi, 2 * std::numbers::pi);
  RandomSpec spec;
  spec.band_h = spec.band_z = c.ensemble_band;
  double lo[2], hi[2], resid = 0.0;
  int degenerate = 0;
  std::mutex mu;
  for (int k = 0; k < 2; ++k) {
    std::mt19937_64 rng(c.seed + k);
    std::vector<MhdState> states;
    for (int i = 0; i < c.equivalence_samples; ++i) {
      VectorField u = random_solenoidal(g, rng, spec);
      VectorField B = random_solenoidal(g, rng, spec);
      states.push_back({std::move(u), std::move(B), 0.0, ModelVariant::mhd_limit()});
    }
    lo[k] = std::numeric_limits<double>::infinity();
    hi[k] = 0.0;
    parallel_for(static_cast<int>(states.size()), threads, [&](int i) {
      const EquivalenceCheck e = check_equivalence(states[i], c.m);
      std::lock_guard lock(mu);
      if (e.state.degenerate || !std::isfinite(e.state.ratio)) {
        ++degenerate;
        return;
      }
      lo[k] = std::min(lo[k], e.state.ratio);
      hi[k] = std::max(hi[k], e.state.ratio);
      resid = std::max(resid, e.relation_residual);
    });
    r.values["b7.min.seed_" + std::string(k ? "b" : "a")] = lo[k];
    r.values["b7.max.seed_" + std::string(k ? "b" : "a")] = hi[k];
  }
  flag(r, "b7_finite", degenerate == 0, degenerate, 0.0);
  flag(r, "b7_lower_bound", std::min(lo[0], lo[1]) > 0.0, std::min(lo[0], lo[1]), 0.0);
  const double agree = std::max({hi[0] / hi[1], hi[1] / hi[0], lo[0] / lo[1], lo[1] / lo[0]});
  flag(r, "b7_seed_agreement", agree <= 2.0, agree, 2.0);
  flag(r, "b2_relations", resid < 1e-10, resid, 1e-10);
  return r;
}

RunRecord verify_differential(const ExperimentConfig& c) {
  RunRecord r = new_record("verify", c);
  const ModelKind k = parse_model_kind(c.variant);
  const bool limit = k == ModelKind::MhdLimit || k == ModelKind::NsLimit;
  const ModelVariant v = ModelVariant::make(false, limit ? 0.0 : c.epsilon);
  const GridPtr g = config_grid(c);
  MhdState s = random_state(g, v, c.seed, config_random_spec(c), c.delta, c.m);
  // rms velocity equal to the requested amplitude
  s.u *= c.linear_amplitude * std::sqrt(volume(*g) / l2_sq(s.u));
  const Trajectory tr = run(s, c.T, c.dt, c.diag_every, options(c));
  const auto res = check_differential_inequality(tr.samples);
  const double worst = *std::max_element(res.begin(), res.end());
  r.rows = report_rows(tr.samples, v.name());
  r.values["differential_max_residual"] = worst;
  flag(r, "differential_inequality", worst <= 1e-8, worst, 1e-8);
  return r;
}

RunRecord run_verify(const ExperimentConfig& c, int threads,
                     const std::filesystem::path& checks_csv) {
  RunRecord r = verify_inequalities(c, threads, checks_csv);
  for (const RunRecord& part : {verify_equivalence(c, threads), verify_differential(c)}) {
    r.checks.insert(r.checks.end(), part.checks.begin(), part.checks.end());
    r.values.insert(part.values.begin(), part.values.end());
    r.rows.insert(r.rows.end(), part.rows.begin(), part.rows.end());
    r.notes.insert(r.notes.end(), part.notes.begin(), part.notes.end());
  }
  return r;
}

RunRecord run_oracle(const ExperimentConfig& c, int threads) {
  RunRecord r = new_record("oracle", c);
  const GridPtr g = config_grid(c);
  RandomSpec spec = config_random_spec(c);
  if (spec.band_h < 0) spec.band_h = 2;
  if (spec.band_z < 0) spec.band_z = 2;
  const ModelVariant v = config_variant(c);
  MhdState s = random_state(g, v, c.seed, spec, c.delta, c.m);
  const double scale = c.oracle_amplitude * std::sqrt(volume(*g) / energy(s));
  s.u *= scale;
  if (s.B) *s.B *= scale;

  const Trajectory ref = run(s, c.oracle_T, c.dt, std::numeric_limits<int>::max(), options(c));
  const double ref_norm = std::sqrt(energy(ref.final_state));

  const int n = static_cast<int>(c.oracle_levels.size());
  std::vector<double> err(n);
  parallel_for(n, threads, [&](int i) {
    const int l = c.oracle_levels[i];
    const int l2 = static_cast<int>(std::lround(l * c.L2 / c.L1));
    const int l3 = static_cast<int>(std::lround(l * c.L3 / c.L1));
    const FdMesh mesh = make_fd_mesh(l, l2, l3, c.L1, c.L2, c.L3);
    FdState fd = fd_sample(s, mesh);
    fd_run(fd, c.oracle_T, fd_stable_dt(mesh, v));
    err[i] = fd_difference(fd, ref.final_state) / ref_norm;
  });
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    r.values["error[n1=" + std::to_string(c.oracle_levels[i]) + "]"] = err[i];
    if (i > 0) {
      const double order = std::log(err[i - 1] / err[i]) /
                           std::log(double(c.oracle_levels[i]) / c.oracle_levels[i - 1]);
      r.values["order[" + std::to_string(i) + "]"] = order;
      worst = std::min(worst, order);
    }
  }
  flag(r, "oracle_order", worst >= 1.8, worst, 1.8);
  return r;
}

}  // namespace slipmhd
