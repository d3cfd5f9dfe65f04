#pragma once
// Limit systems on the torus, all with div u = 0 (Leray projection) and rho = -theta:
//   NSF: u_t + u.grad u - nu lap u + grad p = 0,          theta_t + u.grad theta - kappa lap theta = 0,
//        n_t + u.grad n - sigma lap n = 0
//   NSP: u_t + u.grad u - nu lap u + grad p = n E,        n_t + div(n u) - sigma lap n + sigma n = 0,
//        E = grad inv-lap n
//   NSW: u_t + u.grad u - nu lap u + grad p = n E + j x B, E_t - curl B = -j, B_t + curl E = 0,
//        n = div E, j = sigma (E + u x B) - sigma grad n + n u
// Time stepping: integrating-factor RK4 with the exact exponential of the linear part per mode.

#include <map>
#include <memory>
#include <stdexcept>

#include "vmb/operators.hpp"
#include "vmb/phase_space.hpp"
#include "vmb/regime.hpp"
#include "vmb/state.hpp"

namespace vmb {

struct FluidState {
  RegimeTag tag = RegimeTag::NSF;
  VectorField3 u;
  ScalarField theta, n;
  VectorField3 E, B;
  double t = 0.0;
  FluidState() = default;
  FluidState(const SpectralGrid& g, RegimeTag tg) : tag(tg), u(g), theta(g), n(g), E(g), B(g) {}
  const SpectralGrid& grid() const { return u.grid; }
};

struct FluidRegimeConfig {
  RegimeTag tag = RegimeTag::NSF;
  TransportCoefficients coeffs;  // nu_limit is the viscosity
  SpectralGrid grid;
  double dt = 0.01, t_end = 1.0;
  bool ohm_coupling = true;  // NSW only: false drops j (pure Maxwell rotation)
  void validate() const;
};

struct FluidError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// j = sigma (E + u x B) - sigma grad n + n u; NSW only.
VectorField3 ohm_current(const FluidState& s, const FluidRegimeConfig& cfg);
// General form with indicator values a, b: sigma (a E + b u x B) - sigma grad n + n u
VectorField3 ohm_current(const VectorField3& u, const ScalarField& n, const VectorField3& E, const VectorField3& B,
                         double sigma, double a, double b);

// Limit data matching the kinetic builder: u Leray-projected, theta = 3/5 theta - 2/5 rho, fields closed.
FluidState fluid_initial(const InitialData& d, RegimeTag tag);

class FluidSolver {
 public:
  explicit FluidSolver(const FluidRegimeConfig& cfg);
  ~FluidSolver();
  const FluidRegimeConfig& config() const { return cfg_; }
  void step(FluidState& s, double dt);
  // re-imposes the constraints: Leray projection, NSP E = grad inv-lap n, NSW n = div E
  void close(FluidState& s) const;

 private:
  struct Exps;
  const Exps& exps(double tau);
  std::vector<cplx> pack(const FluidState& s) const;
  void unpack(const std::vector<cplx>& v, FluidState& s) const;
  void apply_exp(const Exps& e, std::vector<cplx>& v) const;
  std::vector<cplx> nonlinear(const std::vector<cplx>& v, FluidState& scratch);

  FluidRegimeConfig cfg_;
  std::unique_ptr<XSpace> xs_;
  std::map<double, std::unique_ptr<Exps>> exps_;
};

FluidState step_fluid(const FluidState& s, const FluidRegimeConfig& cfg, double dt);

struct FluidEnergy {
  double kinetic = 0, thermal = 0, charge = 0, electromagnetic = 0;
  double viscous_dissipation = 0;  // nu ||grad u||^2
  double thermal_dissipation = 0;  // kappa ||grad theta||^2
  double joule = 0;                // ∫ j.E (NSW)
  double total() const { return kinetic + thermal + charge + electromagnetic; }
};
FluidEnergy energy_balance(const FluidState& s, const FluidRegimeConfig& cfg);

}  // namespace vmb
