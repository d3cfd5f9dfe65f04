#pragma once
// Measurements on kinetic states: conserved integrals, instant-energy and dissipation
// functionals, the damping-equation balance for j-tilde, limit-relation residuals and
// empirical convergence orders across eps.

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "vmb/fluid.hpp"
#include "vmb/operators.hpp"
#include "vmb/regime.hpp"
#include "vmb/state.hpp"

namespace vmb {

struct DiagnosticsConfig {
  int s = 3;          // Sobolev order; below 3 is flagged in output metadata
  double b4 = 0.05;   // weight of the field and mixed functionals in H-tilde
  double b5 = 2.0;    // weight of the x-Sobolev energy in H-tilde
  double c1 = 0.375;  // lower v-ladder levels carry 8 c1 / 3
  double w8 = 8.0;    // weight of mixed x-v derivatives inside each v-ladder level
  void validate() const;
};

// ∫(u + gamma E x B), ∫(theta + eps (|E|^2 + |B|^2) / 3), ∫rho, ∫n, ∫B
struct Conserved {
  std::array<double, 3> momentum{};
  double energy = 0, rho = 0, n = 0;
  std::array<double, 3> B{};
  std::array<double, 9> flat() const;
};
Conserved conserved_quantities(const KineticState& s, const ScalingRegime& r);

struct EnergyParts {
  double x_part = 0;        // ||(f, g, E, B)||^2 in H^s_x
  double v_part = 0;        // eps^2 ||(grad_v f, grad_v g)||^2 in H^{s-1}
  double H_eps_s = 0;       // x_part + v_part
  double em_energy = 0;     // field functional at order s - 1 with the j-tilde cross terms
  double mixed_term = 0;    // eps sum <grad_x grad^{k-1} F, grad_v grad^{k-1} F>
  double hv = 0;            // v-ladder functional (without the eps^2 factor)
  double H_tilde = 0;       // b5 x_part + b4 (em_energy + mixed_term) + eps^2 hv
  double D_lambda = 0;      // ||(f, g)||^2 in H^s_Lambda
  double D_em = 0;          // (alpha/eps)^2 ||(E, B)||^2 in H^{s-1}_x
  double D_micro = 0;       // eps^-2 ||(f_perp, g_perp)||^2 in H^s_{Lambda x}
  double D_eps = 0;         // sum of the three
  double f_perp = 0, g_perp = 0;  // ||f_perp||^2, ||g_perp||^2 in H^s_{Lambda x}
  bool em_negative = false;
};
// dissipation = false skips the Lambda-weighted dissipation bundle (the costly part)
EnergyParts energy_functionals(const KineticState& s, const ScalingRegime& r, const CollisionBackend& b,
                               const DiagnosticsConfig& cfg, bool dissipation = true);

// Ratio bounds of H-tilde / H_eps_s over random small states.
struct EquivalenceConstants {
  double c_l = 0, c_u = 0;
  int samples = 0;
};
EquivalenceConstants sample_equivalence(const SpectralGrid& g, const ScalingRegime& r, const CollisionBackend& b,
                                        const DiagnosticsConfig& cfg, int samples, unsigned seed,
                                        double amplitude = 1e-2);

// Damping equation of j-tilde = <v-tilde, g>, with the time derivative as a backward difference:
//   R = dt^-1 (jt - jt_prev) + eps^-1 div <v-tilde v, g> - sigma alpha eps^-2 E + eps^-2 j - <v-tilde, N_g>
// where N_g is the explicit g right-hand side (with its 1/eps) at `cur`; null means the linear model.
VectorField3 jtilde_balance(const KineticState& prev, const KineticState& cur, const ScalingRegime& r,
                            const CollisionBackend& b, double dt, const DistributionField* ng = nullptr);

struct NormPair {
  double l2 = 0, hs = 0;  // L^2_x and H^{s-1}_x
};

// Residuals of relations that hold in the limit, measured on a kinetic state.
struct LimitRelations {
  NormPair ohm;        // eps^-1 j - [sigma ((alpha/eps) E + beta u x B) - sigma grad n + n u]
  NormPair div_u;      // div u
  NormPair rho_theta;  // rho + theta
};
LimitRelations limit_relations(const MomentSet& m, const VectorField3& E, const VectorField3& B,
                               const ScalingRegime& r, const TransportCoefficients& c, int s);

struct LimitResiduals {
  LimitRelations rel;
  NormPair u;      // P u_eps - u
  NormPair theta;  // (3/5) theta_eps - (2/5) rho_eps - theta
  NormPair n, E, B;
  NormPair E_kin, B_kin;  // ||E_eps||, ||B_eps||
};
LimitResiduals limit_residuals(const MomentSet& m, const VectorField3& E, const VectorField3& B,
                               const FluidState& fluid, const ScalingRegime& r, const TransportCoefficients& c,
                               int s);

struct DataError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ConvergenceReport {
  std::vector<double> eps, errors;
  double order = 0;      // least-squares slope of log error against log eps
  double intercept = 0;
  double residual = 0;   // root mean square of the log-space fit residual
};
// Needs at least three strictly decreasing eps values and positive errors.
ConvergenceReport fit_convergence(const std::vector<double>& eps, const std::vector<double>& errors);

struct DiagnosticRecord {
  double t = 0;
  long step = 0;
  Conserved cons;
  EnergyParts energy;
  GaussResiduals gauss;
  LimitRelations rel;
  double jtilde_balance = 0;  // L^2 norm; 0 on the first record
};

// One CSV row per record; the order matches docs/diagnostics_schema.csv.
const std::vector<std::string>& record_columns();
std::vector<double> record_values(const DiagnosticRecord& r);

class Integrator;
// Full record of a state; `prev` (with its step size) enables the j-tilde balance.
DiagnosticRecord make_record(Integrator& integ, const KineticState& s, long step, const DiagnosticsConfig& cfg,
                             const TransportCoefficients& coeffs, const KineticState* prev = nullptr,
                             double dt_prev = 0.0);

}  // namespace vmb
