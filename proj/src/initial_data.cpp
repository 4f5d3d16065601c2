#include "slipmhd/initial_data.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace slipmhd {

namespace {

int resolve_band(int band, int cut, const char* axis) {
  if (band < 0) return cut;
  if (band > cut)
    throw std::invalid_argument(std::string("random_field: ") + axis +
                                " band exceeds the grid's dealias cut");
  return band;
}

}  // namespace

Field random_field(GridPtr grid, Parity p, std::mt19937_64& rng, const RandomSpec& spec) {
  const SpectralGrid& g = *grid;
  const int K1 = resolve_band(spec.band_h, std::min(g.dealias_cut_h1(), g.dealias_cut_h2()), "horizontal");
  const int K3 = resolve_band(spec.band_z, g.dealias_cut_z(), "vertical");
  const double dk1 = 2.0 * std::numbers::pi / g.L1();
  const double dk2 = 2.0 * std::numbers::pi / g.L2();
  const double dk3 = std::numbers::pi / g.L3();
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);

  Field f(grid, p);
  for (int kz = 0; kz <= K3; ++kz)
    for (int k1 = -K1; k1 <= K1; ++k1)
      for (int k2 = 0; k2 <= K1; ++k2) {
        Complex c;
        if (spec.fixed_magnitude) {
          c = std::polar(1.0, phase(rng));
        } else {
          const double re = normal(rng);
          c = Complex(re, normal(rng));
        }
        const double kk = std::pow(k1 * dk1, 2) + std::pow(k2 * dk2, 2) + std::pow(kz * dk3, 2);
        c *= std::pow(1.0 + kk, -0.5 * spec.decay);
        if (p == Parity::Odd && (kz == 0 || kz == g.n3())) continue;
        if (spec.zero_mean_h && k1 == 0 && k2 == 0) continue;
        const int i1 = k1 >= 0 ? k1 : k1 + g.n1();
        f.coeffs()[g.spec_index(kz, i1, k2)] = c;
      }
  // Real field: the k2 = 0 column must be Hermitian in k1.
  for (int kz = 0; kz < g.planes(); ++kz) {
    Complex& c0 = f.coeffs()[g.spec_index(kz, 0, 0)];
    c0 = c0.real();
    for (int k1 = 1; k1 <= K1; ++k1)
      f.coeffs()[g.spec_index(kz, g.n1() - k1, 0)] =
          std::conj(f.coeffs()[g.spec_index(kz, k1, 0)]);
  }
  return f;
}

VectorField random_solenoidal(GridPtr grid, std::mt19937_64& rng, const RandomSpec& spec) {
  Field a = random_field(grid, Parity::Even, rng, spec);
  Field b = random_field(grid, Parity::Even, rng, spec);
  Field c = random_field(grid, Parity::Odd, rng, spec);
  return leray_project(VectorField(std::move(a), std::move(b), std::move(c)));
}

double smallness(const MhdState& s, int m, const PhiFn& phi) {
  auto piece = [&](const VectorField& v) {
    double total = 0.0;
    for (int i = 0; i < 3; ++i) {
      total += norm_co(v[i], m, phi);
      total += norm_co(derivative(v[i], 3), m - 1, phi);
    }
    return total;
  };
  double total = piece(s.u);
  if (s.B) total += piece(*s.B);
  return total;
}

MhdState random_state(GridPtr grid, ModelVariant variant, std::uint64_t seed,
                      const RandomSpec& spec, double delta, int m) {
  if (!(delta >= 0.0)) throw std::invalid_argument("random_state: delta must be nonnegative");
  std::mt19937_64 rng(seed);
  MhdState s{random_solenoidal(grid, rng, spec), std::nullopt, 0.0, variant};
  if (variant.magnetic()) s.B = random_solenoidal(grid, rng, spec);
  const double now = smallness(s, m);
  if (now > 0.0) {
    const double scale = std::sqrt(delta / now);
    s.u *= scale;
    if (s.B) *s.B *= scale;
  }
  return s;
}

}  // namespace slipmhd
