#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "slipmhd/field.hpp"

namespace slipmhd {

enum class ModelKind { MhdViscous, MhdLimit, NsViscous, NsLimit };

/// Which equations are integrated. Limit variants carry epsilon = 0 and the
/// Navier-Stokes variants have no magnetic field.
class ModelVariant {
 public:
  static ModelVariant mhd(double epsilon);
  static ModelVariant mhd_limit() { return ModelVariant(ModelKind::MhdLimit, 0.0); }
  static ModelVariant ns(double epsilon);
  static ModelVariant ns_limit() { return ModelVariant(ModelKind::NsLimit, 0.0); }
  /// Viscous variant for epsilon > 0, limit variant for epsilon == 0.
  static ModelVariant make(bool magnetic, double epsilon);

  ModelKind kind() const { return kind_; }
  double epsilon() const { return epsilon_; }
  bool magnetic() const {
    return kind_ == ModelKind::MhdViscous || kind_ == ModelKind::MhdLimit;
  }
  std::string name() const;
  bool operator==(const ModelVariant&) const = default;

 private:
  ModelVariant(ModelKind k, double e) : kind_(k), epsilon_(e) {}
  ModelKind kind_;
  double epsilon_;
};

/// Accepts "mhd", "mhd_limit", "ns", "ns_limit".
ModelKind parse_model_kind(std::string_view name);
std::string_view to_string(ModelKind k);

struct MhdState {
  VectorField u;
  std::optional<VectorField> B;
  double t = 0.0;
  ModelVariant variant = ModelVariant::mhd_limit();

  const SpectralGrid& grid() const { return u.grid(); }
  const GridPtr& grid_ptr() const { return u.grid_ptr(); }
  bool all_finite() const { return u.all_finite() && (!B || B->all_finite()); }
};

/// Zero state for the given variant.
MhdState zero_state(GridPtr grid, ModelVariant variant);

/// Throws std::invalid_argument unless the fields have slip parity, the
/// magnetic field is present exactly for MHD variants and t is finite and
/// nonnegative.
void validate_state(const MhdState& s);

/// Relative divergence ||div v|| / ||grad v||, 0 for a constant field.
double relative_divergence(const VectorField& v);

}  // namespace slipmhd
