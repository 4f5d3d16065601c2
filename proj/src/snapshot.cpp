#include "slipmhd/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace slipmhd {

namespace {

using nlohmann::json;

std::filesystem::path with_ext(const std::filesystem::path& stem, const char* ext) {
  std::filesystem::path p = stem;
  p += ext;
  return p;
}

void put_f64(std::ostream& os, double v) {
  std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 8);
}

double get_f64(std::istream& is) {
  unsigned char b[8];
  if (!is.read(reinterpret_cast<char*>(b), 8))
    throw std::runtime_error("snapshot: truncated binary file");
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

}  // namespace

void write_snapshot(const MhdState& s, const std::filesystem::path& stem) {
  validate_state(s);
  const SpectralGrid& g = s.grid();
  json h;
  h["n1"] = g.n1();
  h["n2"] = g.n2();
  h["n3"] = g.n3();
  h["L1"] = g.L1();
  h["L2"] = g.L2();
  h["L3"] = g.L3();
  h["time"] = s.t;
  h["epsilon"] = s.variant.epsilon();
  h["variant"] = s.variant.name();
  json comps = json::array();
  std::vector<const Field*> fields;
  const char* names[] = {"u1", "u2", "u3", "B1", "B2", "B3"};
  for (int i = 0; i < 3; ++i) fields.push_back(&s.u[i]);
  if (s.B)
    for (int i = 0; i < 3; ++i) fields.push_back(&(*s.B)[i]);
  for (std::size_t i = 0; i < fields.size(); ++i)
    comps.push_back({{"name", names[i]}, {"parity", to_string(fields[i]->parity())}});
  h["components"] = comps;

  std::ofstream bin(with_ext(stem, ".bin"), std::ios::binary);
  if (!bin) throw std::runtime_error("snapshot: cannot open " + with_ext(stem, ".bin").string());
  for (const Field* f : fields)
    for (const Complex& c : f->coeffs()) {
      put_f64(bin, c.real());
      put_f64(bin, c.imag());
    }
  if (!bin) throw std::runtime_error("snapshot: write failed");

  std::ofstream js(with_ext(stem, ".json"));
  if (!js) throw std::runtime_error("snapshot: cannot open " + with_ext(stem, ".json").string());
  js << h.dump(2) << '\n';
}

MhdState read_snapshot(const std::filesystem::path& stem, GridPtr grid) {
  std::ifstream js(with_ext(stem, ".json"));
  if (!js) throw std::runtime_error("snapshot: cannot open " + with_ext(stem, ".json").string());
  const json h = json::parse(js);
  const int n1 = h.at("n1"), n2 = h.at("n2"), n3 = h.at("n3");
  const double L1 = h.at("L1"), L2 = h.at("L2"), L3 = h.at("L3");
  if (!grid) {
    grid = make_grid(n1, n2, n3, L1, L2, L3);
  } else if (grid->n1() != n1 || grid->n2() != n2 || grid->n3() != n3 ||
             grid->L1() != L1 || grid->L2() != L2 || grid->L3() != L3) {
    throw std::invalid_argument("snapshot: header does not match grid");
  }
  const ModelKind kind = parse_model_kind(h.at("variant").get<std::string>());
  const double eps = h.at("epsilon");
  const bool magnetic = kind == ModelKind::MhdViscous || kind == ModelKind::MhdLimit;
  const auto& comps = h.at("components");
  if (comps.size() != (magnetic ? 6u : 3u))
    throw std::runtime_error("snapshot: component count does not match variant");

  std::ifstream bin(with_ext(stem, ".bin"), std::ios::binary);
  if (!bin) throw std::runtime_error("snapshot: cannot open " + with_ext(stem, ".bin").string());
  std::vector<Field> fields;
  for (const auto& c : comps) {
    Field f(grid, parse_parity(c.at("parity").get<std::string>()));
    for (Complex& z : f.coeffs()) {
      const double re = get_f64(bin);
      z = Complex(re, get_f64(bin));
    }
    fields.push_back(std::move(f));
  }
  if (bin.peek() != std::char_traits<char>::eof())
    throw std::runtime_error("snapshot: trailing data in binary file");

  MhdState s{VectorField(fields[0], fields[1], fields[2]), std::nullopt,
             h.at("time").get<double>(), ModelVariant::make(magnetic, eps)};
  if (magnetic) s.B = VectorField(fields[3], fields[4], fields[5]);
  validate_state(s);
  return s;
}

}  // namespace slipmhd
