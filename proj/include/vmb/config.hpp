#pragma once
// Run configuration: a JSON document with nested sections. Command-line flags override
// file values, which override the defaults below.

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "vmb/diagnostics.hpp"
#include "vmb/integrator.hpp"
#include "vmb/operators.hpp"
#include "vmb/regime.hpp"

namespace vmb {

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  SpectralGrid grid;
  // regime: tag with eps, or custom with explicit alpha, beta, gamma
  std::string regime = "NSF";
  double epsilon = 0.1;
  double alpha = 0, beta = 0, gamma = 0;
  std::string backend = "bgk";
  std::vector<double> lambda;  // spectral-diagonal rates per degree
  // initial data
  std::string profile = "shear-mode";
  double amplitude = 0.01;
  double amplitude_bound = 0.1;  // smallness bound on the amplitude
  bool well_prepared = true;
  // time stepping
  double dt = 0.01, t_end = 1.0;
  std::string scheme = "IMEX2";
  bool lorentz = true, collision_terms = true;
  int clean_every = 10;
  double cfl = 0.5;
  int quad_nodes = 0;
  long cadence = 10;  // diagnostic record every `cadence` steps
  DiagnosticsConfig diag;
  int equivalence_samples = 200;
  // fluid reference
  double fluid_dt = 0.0;  // 0: same as dt
  bool ohm_coupling = true;
  // output
  std::string out_dir = "out";
  unsigned seed = 7;

  void validate() const;
  ScalingRegime scaling() const;
  CollisionBackend collision() const;
  IntegratorOptions integrator_options() const;
  FluidRegimeConfig fluid_config(const TransportCoefficients& c) const;

  nlohmann::ordered_json to_json() const;
  static RunConfig from_json(const nlohmann::json& j);
  // FNV-1a (64 bit) of the canonical JSON dump, as 16 hex digits
  std::string hash() const;
};

RunConfig load_config(const std::string& path);

struct SweepPlan {
  RunConfig base;
  std::vector<double> eps;  // strictly decreasing, at least three values
  bool compare_fluid = true;
  int jobs = 1;  // concurrent members

  void validate() const;
  RunConfig member(std::size_t i) const;
  nlohmann::ordered_json to_json() const;
  static SweepPlan from_json(const nlohmann::json& j);
  std::string hash() const;
};

SweepPlan load_sweep_plan(const std::string& path);

std::string fnv1a_hex(const std::string& s);

}  // namespace vmb
