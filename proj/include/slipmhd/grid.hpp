#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <new>
#include <span>
#include <string_view>
#include <vector>

namespace slipmhd {

/// Reflection symmetry about x3 = 0 (and about the artificial wall x3 = L3).
/// Even fields live in the cosine basis, Odd fields in the sine basis.
enum class Parity { Even, Odd };

constexpr Parity flip(Parity p) {
  return p == Parity::Even ? Parity::Odd : Parity::Even;
}

/// Parity of a pointwise product.
constexpr Parity operator*(Parity a, Parity b) {
  return a == b ? Parity::Even : Parity::Odd;
}

std::string_view to_string(Parity p);
Parity parse_parity(std::string_view name);

template <class T, std::size_t Align = 64>
struct AlignedAllocator {
  using value_type = T;
  template <class U>
  struct rebind {
    using other = AlignedAllocator<U, Align>;
  };
  AlignedAllocator() noexcept = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U, Align>&) noexcept {}
  T* allocate(std::size_t n) {
    return static_cast<T*>(::operator new(n * sizeof(T), std::align_val_t{Align}));
  }
  void deallocate(T* p, std::size_t) noexcept {
    ::operator delete(p, std::align_val_t{Align});
  }
  template <class U>
  bool operator==(const AlignedAllocator<U, Align>&) const noexcept {
    return true;
  }
};

using Complex = std::complex<double>;
using RealArray = std::vector<double, AlignedAllocator<double>>;
using CoeffArray = std::vector<Complex, AlignedAllocator<Complex>>;

/// Slab [0,L1) x [0,L2) x [0,L3], periodic horizontally, slip walls at
/// x3 = 0 and x3 = L3.
///
/// Physical samples: x1 = i1 L1/n1, x2 = i2 L2/n2, x3 = j L3/n3 with
/// j = 0..n3 (both walls included). Layout [j][i1][i2], i2 fastest.
///
/// Spectral coefficients: layout [kz][i1][i2h] with kz = 0..n3,
/// i1 = 0..n1-1 in FFT order and i2h = 0..n2/2 (real-to-complex half plane).
/// A field of parity p is
///   f(x) = sum_{k1,k2,kz} c(k1,k2,kz) exp(i(k1 x1 + k2 x2)) b_p(kz x3)
/// with b_Even = cos, b_Odd = sin, over the full (Hermitian) horizontal
/// lattice. Odd fields have c = 0 at kz = 0 and kz = n3.
class SpectralGrid {
 public:
  ~SpectralGrid();
  SpectralGrid(const SpectralGrid&) = delete;
  SpectralGrid& operator=(const SpectralGrid&) = delete;

  int n1() const { return n1_; }
  int n2() const { return n2_; }
  int n3() const { return n3_; }
  int n2h() const { return n2_ / 2 + 1; }
  int planes() const { return n3_ + 1; }
  double L1() const { return L1_; }
  double L2() const { return L2_; }
  double L3() const { return L3_; }

  std::size_t physical_size() const {
    return static_cast<std::size_t>(planes()) * n1_ * n2_;
  }
  std::size_t spectral_size() const {
    return static_cast<std::size_t>(planes()) * n1_ * n2h();
  }
  std::size_t phys_index(int j, int i1, int i2) const {
    return (static_cast<std::size_t>(j) * n1_ + i1) * n2_ + i2;
  }
  std::size_t spec_index(int kz, int i1, int i2h) const {
    return (static_cast<std::size_t>(kz) * n1_ + i1) * n2h() + i2h;
  }

  /// Signed integer lattice index of FFT position i1 (Nyquist reported as +n1/2).
  int k1_index(int i1) const { return i1 <= n1_ / 2 ? i1 : i1 - n1_; }
  int k2_index(int i2h) const { return i2h; }

  /// Angular wavenumbers: 2 pi k / L horizontally, pi kz / L3 vertically.
  const std::vector<double>& kx() const { return kx_; }
  const std::vector<double>& ky() const { return ky_; }
  const std::vector<double>& kz() const { return kz_; }

  double x1(int i1) const { return L1_ * i1 / n1_; }
  double x2(int i2) const { return L2_ * i2 / n2_; }
  double x3(int j) const { return L3_ * j / n3_; }

  /// Largest retained |index| after dealiasing, per direction.
  int dealias_cut_h1() const { return cut1_; }
  int dealias_cut_h2() const { return cut2_; }
  int dealias_cut_z() const { return cutz_; }
  bool kept(int kz, int i1, int i2h) const {
    const int k1 = k1_index(i1);
    return kz <= cutz_ && k1 <= cut1_ && -k1 <= cut1_ && i2h <= cut2_;
  }
  /// 1 for retained modes, 0 otherwise; spectral layout.
  const std::vector<std::uint8_t>& dealias_mask() const { return mask_; }

  /// Parseval weight of a stored coefficient: the L2 norm squared of a field
  /// is sum |c|^2 * weight(kz, i2h, parity).
  double weight(int kz, int i2h, Parity p) const;

  /// Physical-space quadrature weight of sample (j, ., .): trapezoid in x3.
  double quad_weight(int j) const;

  /// Real values -> coefficients. `values` is overwritten with scratch data.
  void forward_inplace(RealArray& values, Parity p, CoeffArray& out) const;
  /// Coefficients -> real values.
  void inverse_into(const CoeffArray& coeffs, Parity p, RealArray& out) const;

 private:
  friend std::shared_ptr<const SpectralGrid> make_grid(int, int, int, double,
                                                       double, double);
  SpectralGrid(int n1, int n2, int n3, double L1, double L2, double L3);

  int n1_, n2_, n3_;
  double L1_, L2_, L3_;
  int cut1_, cut2_, cutz_;
  std::vector<double> kx_, ky_, kz_;
  std::vector<std::uint8_t> mask_;
  struct Plans;
  std::unique_ptr<Plans> plans_;
};

using GridPtr = std::shared_ptr<const SpectralGrid>;

/// Throws std::invalid_argument for odd or too-small counts or nonpositive
/// lengths.
GridPtr make_grid(int n1, int n2, int n3, double L1, double L2, double L3);

CoeffArray forward(std::span<const double> values, Parity p,
                   const SpectralGrid& grid);
RealArray inverse(std::span<const Complex> coeffs, Parity p,
                  const SpectralGrid& grid);
CoeffArray dealias(std::span<const Complex> coeffs, const SpectralGrid& grid);
void dealias_inplace(CoeffArray& coeffs, const SpectralGrid& grid);

/// Physical L2 norm squared (trapezoid in x3, rectangle rule horizontally).
double physical_l2_sq(std::span<const double> values, const SpectralGrid& grid);
/// Coefficient-space L2 norm squared with Parseval weights.
double spectral_l2_sq(std::span<const Complex> coeffs, Parity p,
                      const SpectralGrid& grid);

/// Evaluates the spectral series on the tensor product of arbitrary
/// coordinates. Result layout [c][a][b] for x3 = xs3[c], x1 = xs1[a],
/// x2 = xs2[b].
std::vector<double> evaluate(std::span<const Complex> coeffs, Parity p,
                             const SpectralGrid& grid,
                             std::span<const double> xs1,
                             std::span<const double> xs2,
                             std::span<const double> xs3);

/// Copies retained coefficients of `coeffs` (on `from`) into the layout of
/// `to`. Both grids must share L1, L2, L3. Modes absent on `to` are dropped.
CoeffArray transfer(std::span<const Complex> coeffs, const SpectralGrid& from,
                    const SpectralGrid& to);

}  // namespace slipmhd
