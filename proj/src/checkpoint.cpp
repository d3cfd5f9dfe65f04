#include "vmb/checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>

namespace vmb {

namespace {

constexpr char kMagic[8] = {'V', 'M', 'B', 'C', 'K', 'P', 'T', '1'};

void put_u64(std::ostream& o, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  o.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char b[8];
  if (!in.read(reinterpret_cast<char*>(b), 8)) throw CheckpointError("checkpoint: truncated header");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

void put_block(std::ostream& o, const std::vector<cplx>& v) {
  o.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(cplx)));
}

void get_block(std::istream& in, std::vector<cplx>& v) {
  if (!in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(cplx))))
    throw CheckpointError("checkpoint: truncated payload");
}

}  // namespace

void write_checkpoint(const std::string& path, const KineticState& s, const nlohmann::ordered_json& meta) {
  static_assert(sizeof(cplx) == 2 * sizeof(double));
  const auto& g = s.grid();
  nlohmann::ordered_json h;
  h["grid"] = {{"dx", g.dx}, {"nx", g.nx}, {"nv", g.nv}, {"lx", g.lx}};
  h["t"] = s.t;
  h["layout"] = "f[mode][hermite], g[mode][hermite], E[3][mode], B[3][mode]; complex as (re, im) doubles";
  h["meta"] = meta;
  const std::string text = h.dump();
  std::ofstream o(path, std::ios::binary | std::ios::trunc);
  if (!o) throw CheckpointError("checkpoint: cannot write '" + path + "'");
  o.write(kMagic, 8);
  put_u64(o, text.size());
  o.write(text.data(), static_cast<std::streamsize>(text.size()));
  put_block(o, s.f.c);
  put_block(o, s.g.c);
  for (int i = 0; i < 3; ++i) put_block(o, s.E.c[i]);
  for (int i = 0; i < 3; ++i) put_block(o, s.B.c[i]);
  if (!o) throw CheckpointError("checkpoint: write failed for '" + path + "'");
}

Checkpoint read_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("checkpoint: cannot open '" + path + "'");
  char magic[8];
  if (!in.read(magic, 8) || std::memcmp(magic, kMagic, 8) != 0)
    throw CheckpointError("checkpoint: '" + path + "' is not a checkpoint file");
  const std::uint64_t n = get_u64(in);
  if (n > (1u << 26)) throw CheckpointError("checkpoint: header too large");
  std::string text(n, '\0');
  if (!in.read(text.data(), static_cast<std::streamsize>(n))) throw CheckpointError("checkpoint: truncated header");
  nlohmann::json h;
  try {
    h = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw CheckpointError(std::string("checkpoint: bad header: ") + e.what());
  }
  SpectralGrid g;
  g.dx = h.at("grid").at("dx").get<int>();
  g.nx = h.at("grid").at("nx").get<int>();
  g.nv = h.at("grid").at("nv").get<int>();
  g.lx = h.at("grid").at("lx").get<double>();
  g.validate();
  Checkpoint c{KineticState(g), h.value("meta", nlohmann::json::object())};
  c.state.t = h.at("t").get<double>();
  get_block(in, c.state.f.c);
  get_block(in, c.state.g.c);
  for (int i = 0; i < 3; ++i) get_block(in, c.state.E.c[i]);
  for (int i = 0; i < 3; ++i) get_block(in, c.state.B.c[i]);
  if (in.peek() != std::char_traits<char>::eof()) throw CheckpointError("checkpoint: trailing bytes");
  return c;
}

}  // namespace vmb
