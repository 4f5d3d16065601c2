#include "slipmhd/report.hpp"

#include <cstdio>
#include <fstream>
#include <mutex>
#include <stdexcept>

namespace slipmhd {

using nlohmann::json;

std::vector<ReportRow> report_rows(const std::vector<Sample>& samples, const std::string& variant) {
  std::vector<ReportRow> rows;
  if (samples.empty()) return rows;
  const auto rep = energy_report(samples);
  rows.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Sample& s = samples[i];
    const EnergyReport& e = rep[i];
    rows.push_back({s.t, s.eps, variant, s.l2_u, s.l2_B, s.tan_u, s.co_u, s.co_w, e.E1, e.E2,
                    e.G, e.X, s.lam_u, s.lam_w, s.diss_h, s.diss_3});
  }
  return rows;
}

bool RunRecord::all_passed() const {
  for (const auto& c : checks)
    if (c.asserted && !c.passed) return false;
  return true;
}

const CheckFlag* RunRecord::check(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

const FitEntry* RunRecord::fit(const std::string& name) const {
  for (const auto& f : fits)
    if (f.name == name) return &f;
  return nullptr;
}

std::string rows_csv(const std::vector<ReportRow>& rows) {
  std::string out = kCsvHeader;
  out += '\n';
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
  };
  for (const auto& r : rows) {
    num(r.t);
    out += ',';
    num(r.eps);
    out += ',';
    out += r.variant;
    for (double v : {r.L2_u, r.L2_B, r.Hm_tan_u, r.Hm_co_u, r.Hm1_co_w, r.E1, r.E2, r.G, r.X,
                     r.lam_s_u, r.lam_s_w, r.dissipation_h, r.dissipation_3}) {
      out += ',';
      num(v);
    }
    out += '\n';
  }
  return out;
}

json record_to_json(const RunRecord& r) {
  json j;
  j["kind"] = r.kind;
  j["config"] = to_json(r.config);
  j["config_hash"] = r.config_hash;
  j["all_passed"] = r.all_passed();
  json rows = json::array();
  for (const auto& x : r.rows)
    rows.push_back({{"t", x.t}, {"eps", x.eps}, {"variant", x.variant}, {"L2_u", x.L2_u},
                    {"L2_B", x.L2_B}, {"Hm_tan_u", x.Hm_tan_u}, {"Hm_co_u", x.Hm_co_u},
                    {"Hm1_co_w", x.Hm1_co_w}, {"E1", x.E1}, {"E2", x.E2}, {"G", x.G},
                    {"X", x.X}, {"lam_s_u", x.lam_s_u}, {"lam_s_w", x.lam_s_w},
                    {"dissipation_h", x.dissipation_h}, {"dissipation_3", x.dissipation_3}});
  j["rows"] = rows;
  json fits = json::array();
  for (const auto& f : r.fits)
    fits.push_back({{"name", f.name}, {"exponent", f.exponent}, {"constant", f.constant},
                    {"residual", f.residual}, {"lo", f.lo}, {"hi", f.hi}, {"samples", f.samples}});
  j["fits"] = fits;
  j["values"] = r.values;
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"asserted", c.asserted},
                      {"value", c.value}, {"threshold", c.threshold}});
  j["checks"] = checks;
  j["notes"] = r.notes;
  return j;
}

RunRecord record_from_json(const json& j) {
  RunRecord r;
  r.kind = j.at("kind").get<std::string>();
  r.config = config_from_json(j.at("config"));
  r.config_hash = j.at("config_hash").get<std::string>();
  for (const auto& x : j.at("rows"))
    r.rows.push_back({x.at("t"), x.at("eps"), x.at("variant"), x.at("L2_u"), x.at("L2_B"),
                      x.at("Hm_tan_u"), x.at("Hm_co_u"), x.at("Hm1_co_w"), x.at("E1"),
                      x.at("E2"), x.at("G"), x.at("X"), x.at("lam_s_u"), x.at("lam_s_w"),
                      x.at("dissipation_h"), x.at("dissipation_3")});
  for (const auto& f : j.at("fits"))
    r.fits.push_back({f.at("name"), f.at("exponent"), f.at("constant"), f.at("residual"),
                      f.at("lo"), f.at("hi"), f.at("samples")});
  r.values = j.at("values").get<std::map<std::string, double>>();
  for (const auto& c : j.at("checks"))
    r.checks.push_back(
        {c.at("name"), c.at("passed"), c.at("asserted"), c.at("value"), c.at("threshold")});
  r.notes = j.at("notes").get<std::vector<std::string>>();
  return r;
}

namespace {

std::mutex& dir_mutex(const std::filesystem::path& dir) {
  static std::mutex guard;
  static std::map<std::string, std::unique_ptr<std::mutex>> locks;
  std::lock_guard lock(guard);
  auto& m = locks[std::filesystem::absolute(dir).lexically_normal().string()];
  if (!m) m = std::make_unique<std::mutex>();
  return *m;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream os(p, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write " + p.string());
  os << text;
  if (!os) throw std::runtime_error("write failed for " + p.string());
}

}  // namespace

void emit_report(const RunRecord& r, const std::filesystem::path& dir, const std::string& stem) {
  std::lock_guard lock(dir_mutex(dir));
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
  write_file(dir / (stem + ".csv"), rows_csv(r.rows));
  write_file(dir / (stem + ".json"), record_to_json(r).dump(2) + "\n");
}

}  // namespace slipmhd
