#include "vmb/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace vmb {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

void check_keys(const json& j, const char* section, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ConfigError(std::string("config: section '") + section + "' must be an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw ConfigError(std::string("config: unknown key '") + it.key() + "' in section '" + section + "'");
}

template <class T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: bad value for '") + key + "': " + e.what());
  }
}

}  // namespace

std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ScalingRegime RunConfig::scaling() const {
  const RegimeTag tag = parse_regime_tag(regime);
  if (tag == RegimeTag::custom) return ScalingRegime::custom(epsilon, alpha, beta, gamma);
  return ScalingRegime::preset(tag, epsilon);
}

CollisionBackend RunConfig::collision() const { return CollisionBackend::parse(backend, lambda); }

IntegratorOptions RunConfig::integrator_options() const {
  IntegratorOptions o;
  o.scheme = parse_scheme(scheme);
  o.lorentz = lorentz;
  o.gamma = collision_terms;
  o.clean_every = clean_every;
  o.cfl = cfl;
  o.quad_nodes = quad_nodes;
  return o;
}

FluidRegimeConfig RunConfig::fluid_config(const TransportCoefficients& c) const {
  FluidRegimeConfig f;
  f.tag = parse_regime_tag(regime);
  f.coeffs = c;
  f.grid = grid;
  f.dt = fluid_dt > 0.0 ? fluid_dt : dt;
  f.t_end = t_end;
  f.ohm_coupling = ohm_coupling;
  return f;
}

void RunConfig::validate() const {
  try {
    grid.validate();
    scaling();
    collision();
    parse_scheme(scheme);
    diag.validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  static const std::set<std::string> profiles = {"equilibrium", "shear-mode", "charge-mode", "heat-mode", "mixed"};
  if (!profiles.count(profile)) throw ConfigError("config: unknown profile '" + profile + "'");
  if (!(amplitude >= 0.0) || amplitude > amplitude_bound) {
    std::ostringstream os;
    os << "config: amplitude " << amplitude << " exceeds the smallness bound " << amplitude_bound;
    throw ConfigError(os.str());
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("config: dt must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ConfigError("config: t_end must be nonnegative");
  if (cadence < 1) throw ConfigError("config: cadence must be >= 1");
  if (clean_every < 0) throw ConfigError("config: clean_every must be >= 0");
  if (!(cfl > 0.0)) throw ConfigError("config: cfl must be positive");
  if (quad_nodes < 0) throw ConfigError("config: quad_nodes must be >= 0");
  if (equivalence_samples < 0) throw ConfigError("config: equivalence_samples must be >= 0");
  if (fluid_dt < 0.0) throw ConfigError("config: fluid dt must be nonnegative");
  if (out_dir.empty()) throw ConfigError("config: output dir must not be empty");
}

ordered_json RunConfig::to_json() const {
  ordered_json j;
  j["grid"] = {{"dx", grid.dx}, {"nx", grid.nx}, {"nv", grid.nv}, {"lx", grid.lx}};
  j["regime"] = {{"tag", regime}, {"epsilon", epsilon}, {"alpha", alpha}, {"beta", beta}, {"gamma", gamma}};
  j["backend"] = {{"name", backend}, {"lambda", lambda}};
  j["initial"] = {{"profile", profile},
                  {"amplitude", amplitude},
                  {"amplitude_bound", amplitude_bound},
                  {"well_prepared", well_prepared}};
  j["time"] = {{"dt", dt},
               {"t_end", t_end},
               {"scheme", scheme},
               {"lorentz", lorentz},
               {"collision_terms", collision_terms},
               {"clean_every", clean_every},
               {"cfl", cfl},
               {"quad_nodes", quad_nodes}};
  j["diagnostics"] = {{"cadence", cadence}, {"s", diag.s},   {"b4", diag.b4},
                      {"b5", diag.b5},      {"c1", diag.c1}, {"w8", diag.w8},
                      {"equivalence_samples", equivalence_samples}};
  j["fluid"] = {{"dt", fluid_dt}, {"ohm_coupling", ohm_coupling}};
  j["output"] = {{"dir", out_dir}};
  j["seed"] = seed;
  return j;
}

RunConfig RunConfig::from_json(const json& j) {
  RunConfig c;
  check_keys(j, "root", {"grid", "regime", "backend", "initial", "time", "diagnostics", "fluid", "output", "seed"});
  if (j.contains("grid")) {
    const auto& s = j["grid"];
    check_keys(s, "grid", {"dx", "nx", "nv", "lx"});
    read(s, "dx", c.grid.dx);
    read(s, "nx", c.grid.nx);
    read(s, "nv", c.grid.nv);
    read(s, "lx", c.grid.lx);
  }
  if (j.contains("regime")) {
    const auto& s = j["regime"];
    check_keys(s, "regime", {"tag", "epsilon", "alpha", "beta", "gamma"});
    read(s, "tag", c.regime);
    read(s, "epsilon", c.epsilon);
    read(s, "alpha", c.alpha);
    read(s, "beta", c.beta);
    read(s, "gamma", c.gamma);
  }
  if (j.contains("backend")) {
    const auto& s = j["backend"];
    check_keys(s, "backend", {"name", "lambda"});
    read(s, "name", c.backend);
    read(s, "lambda", c.lambda);
  }
  if (j.contains("initial")) {
    const auto& s = j["initial"];
    check_keys(s, "initial", {"profile", "amplitude", "amplitude_bound", "well_prepared"});
    read(s, "profile", c.profile);
    read(s, "amplitude", c.amplitude);
    read(s, "amplitude_bound", c.amplitude_bound);
    read(s, "well_prepared", c.well_prepared);
  }
  if (j.contains("time")) {
    const auto& s = j["time"];
    check_keys(s, "time", {"dt", "t_end", "scheme", "lorentz", "collision_terms", "clean_every", "cfl", "quad_nodes"});
    read(s, "dt", c.dt);
    read(s, "t_end", c.t_end);
    read(s, "scheme", c.scheme);
    read(s, "lorentz", c.lorentz);
    read(s, "collision_terms", c.collision_terms);
    read(s, "clean_every", c.clean_every);
    read(s, "cfl", c.cfl);
    read(s, "quad_nodes", c.quad_nodes);
  }
  if (j.contains("diagnostics")) {
    const auto& s = j["diagnostics"];
    check_keys(s, "diagnostics", {"cadence", "s", "b4", "b5", "c1", "w8", "equivalence_samples"});
    read(s, "cadence", c.cadence);
    read(s, "s", c.diag.s);
    read(s, "b4", c.diag.b4);
    read(s, "b5", c.diag.b5);
    read(s, "c1", c.diag.c1);
    read(s, "w8", c.diag.w8);
    read(s, "equivalence_samples", c.equivalence_samples);
  }
  if (j.contains("fluid")) {
    const auto& s = j["fluid"];
    check_keys(s, "fluid", {"dt", "ohm_coupling"});
    read(s, "dt", c.fluid_dt);
    read(s, "ohm_coupling", c.ohm_coupling);
  }
  if (j.contains("output")) {
    const auto& s = j["output"];
    check_keys(s, "output", {"dir"});
    read(s, "dir", c.out_dir);
  }
  read(j, "seed", c.seed);
  return c;
}

std::string RunConfig::hash() const {
  auto j = to_json();
  j.erase("output");  // where artifacts go does not change them
  return fnv1a_hex(j.dump());
}

namespace {
json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config: '" + path + "' is not valid JSON: " + e.what());
  }
}
}  // namespace

RunConfig load_config(const std::string& path) { return RunConfig::from_json(parse_file(path)); }

void SweepPlan::validate() const {
  base.validate();
  if (eps.size() < 3) throw ConfigError("sweep: at least three eps values are required");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0.0 && eps[i] <= 1.0)) throw ConfigError("sweep: eps values must lie in (0, 1]");
    if (i > 0 && !(eps[i] < eps[i - 1])) throw ConfigError("sweep: eps values must strictly decrease");
  }
  if (parse_regime_tag(base.regime) == RegimeTag::custom) throw ConfigError("sweep: custom regimes have no limit");
  if (jobs < 1) throw ConfigError("sweep: jobs must be >= 1");
  for (std::size_t i = 0; i < eps.size(); ++i) member(i).validate();
}

RunConfig SweepPlan::member(std::size_t i) const {
  RunConfig c = base;
  c.epsilon = eps.at(i);
  char buf[32];
  std::snprintf(buf, sizeof buf, "/eps_%02zu", i);
  c.out_dir = base.out_dir + buf;
  return c;
}

ordered_json SweepPlan::to_json() const {
  ordered_json j;
  j["base"] = base.to_json();
  j["eps"] = eps;
  j["compare_fluid"] = compare_fluid;
  j["jobs"] = jobs;
  return j;
}

SweepPlan SweepPlan::from_json(const json& j) {
  check_keys(j, "sweep", {"base", "eps", "compare_fluid", "jobs"});
  SweepPlan p;
  if (j.contains("base")) p.base = RunConfig::from_json(j["base"]);
  read(j, "eps", p.eps);
  read(j, "compare_fluid", p.compare_fluid);
  read(j, "jobs", p.jobs);
  return p;
}

std::string SweepPlan::hash() const {
  auto j = to_json();
  j["base"].erase("output");
  j.erase("jobs");
  return fnv1a_hex(j.dump());
}

SweepPlan load_sweep_plan(const std::string& path) { return SweepPlan::from_json(parse_file(path)); }

}  // namespace vmb
