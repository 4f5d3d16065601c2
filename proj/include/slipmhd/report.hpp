#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "slipmhd/config.hpp"
#include "slipmhd/diagnostics.hpp"

namespace slipmhd {

/// One CSV row. Norms are squared, as in Sample.
struct ReportRow {
  double t = 0.0, eps = 0.0;
  std::string variant;
  double L2_u = 0.0, L2_B = 0.0;
  double Hm_tan_u = 0.0, Hm_co_u = 0.0, Hm1_co_w = 0.0;
  double E1 = 0.0, E2 = 0.0, G = 0.0, X = 0.0;
  double lam_s_u = 0.0, lam_s_w = 0.0;
  double dissipation_h = 0.0, dissipation_3 = 0.0;
  bool operator==(const ReportRow&) const = default;
};

/// Rows for one trajectory.
std::vector<ReportRow> report_rows(const std::vector<Sample>& samples, const std::string& variant);

struct FitEntry {
  std::string name;
  double exponent = 0.0, constant = 0.0, residual = 0.0;
  /// Fit window in the abscissa (time, or epsilon for sweep slopes).
  double lo = 0.0, hi = 0.0;
  int samples = 0;
  bool operator==(const FitEntry&) const = default;
};

struct CheckFlag {
  std::string name;
  bool passed = false;
  /// Unasserted flags are informational and do not affect the exit code.
  bool asserted = true;
  double value = 0.0;
  double threshold = 0.0;
  bool operator==(const CheckFlag&) const = default;
};

struct RunRecord {
  std::string kind;
  ExperimentConfig config;
  std::string config_hash;
  std::vector<ReportRow> rows;
  std::vector<FitEntry> fits;
  std::map<std::string, double> values;
  std::vector<CheckFlag> checks;
  std::vector<std::string> notes;

  bool operator==(const RunRecord&) const = default;
  bool all_passed() const;
  const CheckFlag* check(const std::string& name) const;
  const FitEntry* fit(const std::string& name) const;
};

inline constexpr const char* kCsvHeader =
    "t,eps,variant,L2_u,L2_B,Hm_tan_u,Hm_co_u,Hm1_co_w,E1,E2,G,X,lam_s_u,lam_s_w,"
    "dissipation_h,dissipation_3";

std::string rows_csv(const std::vector<ReportRow>& rows);
nlohmann::json record_to_json(const RunRecord& r);
RunRecord record_from_json(const nlohmann::json& j);

/// Writes <dir>/<stem>.csv and <dir>/<stem>.json, creating dir. Writes into
/// one directory are serialised. Throws std::runtime_error when unwritable.
void emit_report(const RunRecord& r, const std::filesystem::path& dir, const std::string& stem);

}  // namespace slipmhd
