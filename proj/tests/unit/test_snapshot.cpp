#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "helpers.hpp"
#include "slipmhd/snapshot.hpp"

using namespace slipmhd;

namespace {

std::filesystem::path temp_stem(const char* name) {
  auto dir = std::filesystem::temp_directory_path() / "slipmhd_snapshot_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Snapshot, RoundTripMhd) {
  auto g = make_grid(8, 12, 6, 1.0, 2.0, 3.0);
  MhdState s{slipmhd::test::solenoidal(g, 1), slipmhd::test::solenoidal(g, 2), 0.375,
             ModelVariant::mhd(0.01)};
  const auto stem = temp_stem("mhd");
  write_snapshot(s, stem);
  const MhdState r = read_snapshot(stem);
  EXPECT_EQ(r.t, s.t);
  EXPECT_EQ(r.variant, s.variant);
  ASSERT_TRUE(r.B.has_value());
  EXPECT_EQ(r.grid().n2(), 12);
  EXPECT_EQ(r.grid().L3(), 3.0);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(r.u[i].coeffs(), s.u[i].coeffs());
    EXPECT_EQ((*r.B)[i].coeffs(), (*s.B)[i].coeffs());
  }
}

TEST(Snapshot, HeaderAndLayout) {
  auto g = make_grid(4, 4, 4, 1.0, 1.0, 1.0);
  MhdState s = zero_state(g, ModelVariant::ns_limit());
  s.u[0].coeffs()[0] = Complex(1.5, -2.0);
  const auto stem = temp_stem("ns");
  write_snapshot(s, stem);
  std::ifstream js(stem.string() + ".json");
  const auto h = nlohmann::json::parse(js);
  EXPECT_EQ(h["n1"], 4);
  EXPECT_EQ(h["components"].size(), 3u);
  EXPECT_EQ(h["components"][2]["parity"], "odd");
  EXPECT_EQ(h["epsilon"], 0.0);
  EXPECT_EQ(std::filesystem::file_size(stem.string() + ".bin"),
            3 * g->spectral_size() * 16);
  std::ifstream bin(stem.string() + ".bin", std::ios::binary);
  unsigned char b[16];
  bin.read(reinterpret_cast<char*>(b), 16);
  // 1.5 = 0x3FF8000000000000, little-endian
  EXPECT_EQ(b[7], 0x3F);
  EXPECT_EQ(b[6], 0xF8);
  EXPECT_EQ(b[0], 0x00);
  EXPECT_EQ(b[15], 0xC0);  // -2.0
}

TEST(Snapshot, GridMismatchRejected) {
  auto g = make_grid(4, 4, 4, 1.0, 1.0, 1.0);
  const auto stem = temp_stem("mismatch");
  write_snapshot(zero_state(g, ModelVariant::ns_limit()), stem);
  EXPECT_THROW(read_snapshot(stem, make_grid(4, 4, 6, 1.0, 1.0, 1.0)), std::invalid_argument);
  EXPECT_THROW(read_snapshot(temp_stem("missing")), std::runtime_error);
}

TEST(State, ValidationAndVariants) {
  auto g = make_grid(4, 4, 4, 1.0, 1.0, 1.0);
  EXPECT_THROW(ModelVariant::mhd(0.0), std::invalid_argument);
  EXPECT_THROW(ModelVariant::ns(1.0), std::invalid_argument);
  EXPECT_EQ(ModelVariant::make(true, 0.0).kind(), ModelKind::MhdLimit);
  EXPECT_EQ(parse_model_kind("ns_limit"), ModelKind::NsLimit);
  EXPECT_THROW(parse_model_kind("euler"), std::invalid_argument);
  MhdState s = zero_state(g, ModelVariant::mhd(0.1));
  EXPECT_NO_THROW(validate_state(s));
  s.B.reset();
  EXPECT_THROW(validate_state(s), std::invalid_argument);
  MhdState c = zero_state(g, ModelVariant::ns(0.1));
  c.u = VectorField(g, VectorField::kCurl);
  EXPECT_THROW(validate_state(c), std::invalid_argument);
}

TEST(InitialData, SeededAndResolutionIndependent) {
  RandomSpec spec;
  spec.band_h = 3;
  spec.band_z = 3;
  auto coarse = make_grid(12, 12, 8, 6.0, 6.0, 4.0);
  auto fine = make_grid(24, 24, 16, 6.0, 6.0, 4.0);
  std::mt19937_64 ra(99), rb(99);
  const VectorField va = random_solenoidal(coarse, ra, spec);
  const VectorField vb = random_solenoidal(fine, rb, spec);
  const double x1[] = {0.3, 4.1}, x2[] = {5.0}, x3[] = {0.0, 1.3};
  for (int i = 0; i < 3; ++i) {
    const auto ea = evaluate(va[i].coeffs(), va[i].parity(), *coarse, x1, x2, x3);
    const auto eb = evaluate(vb[i].coeffs(), vb[i].parity(), *fine, x1, x2, x3);
    for (std::size_t k = 0; k < ea.size(); ++k) EXPECT_NEAR(ea[k], eb[k], 1e-12);
  }
  const MhdState a = random_state(coarse, ModelVariant::mhd(0.01), 99, spec, 1e-2, 3);
  EXPECT_NEAR(smallness(a, 3), 1e-2, 1e-14);
  EXPECT_LT(relative_divergence(a.u), 1e-12);
  EXPECT_LT(relative_divergence(*a.B), 1e-12);
  const MhdState c = random_state(coarse, ModelVariant::mhd(0.01), 99, spec, 1e-2, 3);
  EXPECT_EQ(c.u[0].coeffs(), a.u[0].coeffs());
}

TEST(InitialData, ZeroMeanAndBandChecks) {
  auto g = make_grid(12, 12, 8, 6.0, 6.0, 4.0);
  std::mt19937_64 rng(1);
  RandomSpec spec;
  const Field f = random_field(g, Parity::Even, rng, spec);
  for (int kz = 0; kz < g->planes(); ++kz) EXPECT_EQ(f.coeffs()[g->spec_index(kz, 0, 0)], Complex{});
  // Real-valued: forward(inverse(f)) reproduces f.
  const Field back = from_physical(to_physical(f), Parity::Even, g);
  EXPECT_LT(l2(back - f), 1e-13 * l2(f));
  spec.band_h = 20;
  EXPECT_THROW(random_field(g, Parity::Even, rng, spec), std::invalid_argument);
}
