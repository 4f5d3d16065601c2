#include "slipmhd/state.hpp"

#include <cmath>
#include <stdexcept>

namespace slipmhd {

ModelVariant ModelVariant::mhd(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("viscous variant needs epsilon in (0,1)");
  return ModelVariant(ModelKind::MhdViscous, epsilon);
}

ModelVariant ModelVariant::ns(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("viscous variant needs epsilon in (0,1)");
  return ModelVariant(ModelKind::NsViscous, epsilon);
}

ModelVariant ModelVariant::make(bool magnetic, double epsilon) {
  if (epsilon == 0.0) return magnetic ? mhd_limit() : ns_limit();
  return magnetic ? mhd(epsilon) : ns(epsilon);
}

std::string ModelVariant::name() const { return std::string(to_string(kind_)); }

std::string_view to_string(ModelKind k) {
  switch (k) {
    case ModelKind::MhdViscous: return "mhd";
    case ModelKind::MhdLimit: return "mhd_limit";
    case ModelKind::NsViscous: return "ns";
    case ModelKind::NsLimit: return "ns_limit";
  }
  return "?";
}

ModelKind parse_model_kind(std::string_view name) {
  if (name == "mhd") return ModelKind::MhdViscous;
  if (name == "mhd_limit") return ModelKind::MhdLimit;
  if (name == "ns") return ModelKind::NsViscous;
  if (name == "ns_limit") return ModelKind::NsLimit;
  throw std::invalid_argument("unknown model variant '" + std::string(name) + "'");
}

MhdState zero_state(GridPtr grid, ModelVariant variant) {
  MhdState s{VectorField(grid), std::nullopt, 0.0, variant};
  if (variant.magnetic()) s.B = VectorField(grid);
  return s;
}

void validate_state(const MhdState& s) {
  if (!s.u.slip_compatible())
    throw std::invalid_argument("state: velocity must have slip parity");
  if (s.variant.magnetic() != s.B.has_value())
    throw std::invalid_argument("state: magnetic field presence does not match variant");
  if (s.B) {
    if (!s.B->slip_compatible())
      throw std::invalid_argument("state: magnetic field must have slip parity");
    if (&s.B->grid() != &s.u.grid())
      throw std::invalid_argument("state: u and B on different grids");
  }
  if (!(std::isfinite(s.t) && s.t >= 0.0))
    throw std::invalid_argument("state: time must be finite and nonnegative");
}

double relative_divergence(const VectorField& v) {
  double grad = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int a = 1; a <= 3; ++a) grad += l2_sq(derivative(v[i], a));
  if (grad == 0.0) return 0.0;
  return std::sqrt(l2_sq(divergence(v)) / grad);
}

}  // namespace slipmhd
