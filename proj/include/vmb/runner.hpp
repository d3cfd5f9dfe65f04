#pragma once
// Run orchestration behind the CLI: single kinetic and fluid runs and eps-sweeps.

#include <string>
#include <vector>

#include <json.hpp>

#include "vmb/config.hpp"
#include "vmb/diagnostics.hpp"
#include "vmb/fluid.hpp"
#include "vmb/state.hpp"

namespace vmb {

struct KineticRunResult {
  KineticState initial, final_state;
  std::vector<DiagnosticRecord> records;
  long steps = 0;
  double max_drift = 0;             // max over records and integrals of |Q - Q0| / (sqrt|T| ||X0||)
  std::array<double, 9> drift{};    // per integral, same normalization
  double h_tilde_max_increase = 0;  // max per-step increase of H-tilde over H-tilde(0)
  double sup_H_ratio = 1;           // sup_t H_eps_s / H_eps_s(0)
  double dissipation_integral = 0;  // trapezoid over records of D_eps
  double f_perp_time = 0, g_perp_time = 0;  // L^2 in time of the H^s_{Lambda x} norms (per step)
  double gauss_max = 0;             // max over records of ||div E - (alpha/eps) n||
  EquivalenceConstants equivalence;
  nlohmann::ordered_json summary;
};

// Writes diagnostics.csv, summary.json and final.ckpt under cfg.out_dir when `write` is set.
KineticRunResult run_kinetic(const RunConfig& cfg, bool write = true);

struct FluidRunResult {
  FluidState initial, final_state;
  TransportCoefficients coeffs;
  long steps = 0;
  nlohmann::ordered_json summary;
};
// Writes fluid.csv and summary.json under cfg.out_dir when `write` is set.
FluidRunResult run_fluid(const RunConfig& cfg, bool write = true);

struct SweepMember {
  double eps = 0;
  LimitResiduals res;
  KineticRunResult run;
};

struct SweepResult {
  std::vector<SweepMember> members;
  std::vector<std::vector<double>> table;  // rows in sweep_columns() order
  nlohmann::ordered_json report;
};
// Writes one directory per member, the reference fluid run, sweep.csv and convergence.json.
SweepResult run_sweep(const SweepPlan& plan, bool write = true);

}  // namespace vmb
