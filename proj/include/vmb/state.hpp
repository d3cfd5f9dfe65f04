#pragma once
// Kinetic state (f, g, E, B, t), Gauss constraints and the initial-data builder.

#include <string>

#include "vmb/phase_space.hpp"
#include "vmb/regime.hpp"

namespace vmb {

struct KineticState {
  DistributionField f, g;
  VectorField3 E, B;
  double t = 0.0;
  KineticState() = default;
  explicit KineticState(const SpectralGrid& grid) : f(grid), g(grid), E(grid), B(grid) {}
  const SpectralGrid& grid() const { return f.grid; }
};

// y += a x
void axpy(double a, const KineticState& x, KineticState& y);
// L2 norm of all four components
double l2_norm(const KineticState& s);
// First non-finite component name, or empty.
std::string first_nonfinite(const KineticState& s);
// ∫ a b dx for real fields
double integral_product(const std::vector<cplx>& a, const std::vector<cplx>& b, const SpectralGrid& g);

enum class GaussMode { monitor, clean };
struct GaussResiduals {
  double div_e = 0;  // ||div E - (alpha/eps) n||
  double div_b = 0;  // ||div B||
};
GaussResiduals gauss_residuals(const KineticState& s, const ScalingRegime& r);
// clean: the gradient part of E becomes (alpha/eps) grad inv-Laplacian n, the gradient part of B is removed
GaussResiduals enforce_gauss(KineticState& s, const ScalingRegime& r, GaussMode mode);

// Moment-space description of the data at t = 0.
struct InitialData {
  std::string profile = "shear-mode";
  double amplitude = 0.01;
  bool well_prepared = true;
  ScalarField rho, theta, n;
  VectorField3 u, E, B;  // E: given part; its gradient part is replaced by the Gauss solution
};

// Profiles: equilibrium, shear-mode, charge-mode, heat-mode, mixed.
InitialData make_profile(const SpectralGrid& g, const std::string& name, double amplitude, bool well_prepared = true);

// Builds f = rho + u.v + theta (|v|^2 - 3)/2 and g = n and enforces, in order:
// zero means of rho, n, B; div B = 0 and div E = (alpha/eps) n; mean u = -gamma mean(E x B);
// mean theta = -eps mean(|E|^2 + |B|^2)/3. Well-prepared data also get div u = 0 and rho = -theta
// (fluctuations). Transverse fields are dropped for limits without them (NSP, NSF).
KineticState build_initial_state(const InitialData& d, const ScalingRegime& r);

}  // namespace vmb
