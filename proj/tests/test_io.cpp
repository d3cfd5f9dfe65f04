#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "vmb/checkpoint.hpp"
#include "vmb/config.hpp"
#include "vmb/diagnostics.hpp"
#include "vmb/output.hpp"
#include "vmb/runner.hpp"

using namespace vmb;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("vmb_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::map<std::string, std::vector<std::string>> schema_columns() {
  std::ifstream in(VMB_SOURCE_DIR "/docs/diagnostics_schema.csv");
  REQUIRE(in);
  std::map<std::string, std::vector<std::string>> out;
  std::string line;
  std::getline(in, line);
  CHECK(line == "artifact,column,description");
  while (std::getline(in, line)) {
    const auto a = line.find(','), b = line.find(',', a + 1);
    out[line.substr(0, a)].push_back(line.substr(a + 1, b - a - 1));
  }
  return out;
}

std::string first_line(const fs::path& p) {
  std::ifstream in(p);
  std::string s;
  std::getline(in, s);
  return s;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
  return s;
}

}  // namespace

TEST_CASE("documented schema lists every csv column in order") {
  auto s = schema_columns();
  CHECK(s["diagnostics.csv"] == record_columns());
  CHECK(s["fluid.csv"] == fluid_columns());
  CHECK(s["sweep.csv"] == sweep_columns());
}

TEST_CASE("checkpoints round-trip bit for bit") {
  SpectralGrid g;
  g.dx = 2;
  g.nx = 4;
  g.nv = 4;
  KineticState s(g);
  std::mt19937_64 rng(9);
  std::normal_distribution<double> nd;
  for (auto& z : s.f.c) z = {nd(rng), nd(rng)};
  for (auto& z : s.g.c) z = {nd(rng), nd(rng)};
  for (int i = 0; i < 3; ++i) {
    for (auto& z : s.E.c[i]) z = {nd(rng), nd(rng)};
    for (auto& z : s.B.c[i]) z = {nd(rng), nd(rng)};
  }
  s.t = 0.125;
  const auto dir = scratch_dir("ckpt");
  const auto path = (dir / "s.ckpt").string();
  write_checkpoint(path, s, {{"note", "x"}});
  const auto c = read_checkpoint(path);
  CHECK(c.state.grid() == g);
  CHECK(c.state.t == s.t);
  CHECK(c.state.f.c == s.f.c);
  CHECK(c.state.g.c == s.g.c);
  for (int i = 0; i < 3; ++i) {
    CHECK(c.state.E.c[i] == s.E.c[i]);
    CHECK(c.state.B.c[i] == s.B.c[i]);
  }
  CHECK(c.meta["note"] == "x");

  SUBCASE("truncated file") {
    fs::resize_file(path, fs::file_size(path) - 8);
    CHECK_THROWS_AS(read_checkpoint(path), CheckpointError);
  }
  SUBCASE("bad magic") {
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.write("XXXXXXXX", 8);
    f.close();
    CHECK_THROWS_AS(read_checkpoint(path), CheckpointError);
  }
  SUBCASE("missing file") { CHECK_THROWS_AS(read_checkpoint((dir / "none").string()), CheckpointError); }
}

TEST_CASE("config json round trip preserves the hash") {
  RunConfig c;
  c.regime = "NSP";
  c.epsilon = 0.025;
  c.profile = "mixed";
  const auto back = RunConfig::from_json(nlohmann::json::parse(c.to_json().dump()));
  CHECK(back.hash() == c.hash());
  CHECK(c.hash().size() == 16);

  RunConfig moved = c;
  moved.out_dir = "elsewhere";
  CHECK(moved.hash() == c.hash());
  RunConfig other = c;
  other.epsilon = 0.05;
  CHECK(other.hash() != c.hash());
}

TEST_CASE("config validation rejects bad input") {
  CHECK_THROWS_AS(RunConfig::from_json(nlohmann::json::parse(R"({"grid": {"nx": 8, "nz": 2}})")), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_json(nlohmann::json::parse(R"({"extra": 1})")), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_json(nlohmann::json::parse(R"({"time": {"dt": "fast"}})")), ConfigError);
  RunConfig c;
  c.amplitude = 0.5;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = RunConfig{};
  c.profile = "vortex";
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = RunConfig{};
  c.dt = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = RunConfig{};
  c.regime = "NSX";
  CHECK_THROWS(c.validate());
  CHECK_NOTHROW(RunConfig{}.validate());
}

TEST_CASE("sweep plans need three strictly decreasing eps values") {
  SweepPlan p;
  p.eps = {0.1, 0.05};
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p.eps = {0.1, 0.05, 0.05};
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p.eps = {0.1, 0.05, 0.025};
  CHECK_NOTHROW(p.validate());
  CHECK(p.member(1).epsilon == 0.05);
  CHECK(p.member(1).out_dir == "out/eps_01");
}

TEST_CASE("format_double reads back exactly") {
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300, 0.0}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("csv rows must match the header width") {
  const auto dir = scratch_dir("csv");
  CsvWriter w((dir / "a.csv").string(), {"a", "b"});
  w.row({1.0, 2.0});
  CHECK_THROWS_AS(w.row({1.0}), OutputError);
}

TEST_CASE("kinetic run artifacts carry the schema version and documented columns") {
  RunConfig c;
  c.grid.nx = 8;
  c.grid.nv = 4;
  c.dt = 0.01;
  c.t_end = 0.02;
  c.cadence = 1;
  c.equivalence_samples = 4;
  const auto dir = scratch_dir("run");
  c.out_dir = dir.string();
  run_kinetic(c, true);
  CHECK(first_line(dir / "diagnostics.csv") == join(record_columns()));
  std::ifstream in(dir / "summary.json");
  const auto j = nlohmann::json::parse(in);
  CHECK(j["schema_version"] == kSchemaVersion);
  CHECK(j["config_hash"] == c.hash());
  CHECK(fs::exists(dir / "final.ckpt"));

  run_fluid(c, true);
  CHECK(first_line(dir / "fluid.csv") == join(fluid_columns()));
}
