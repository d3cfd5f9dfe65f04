#pragma once
// Independent reference computations shared by the unit tests and the acceptance binary.

#include <array>
#include <vector>

#include "vmb/integrator.hpp"

namespace vmb::oracle {

// (nu, kappa, sigma) of BGK by tensor Gauss-Hermite quadrature in physical velocity space.
// BGK inverts to -1 on the orthogonal complement of the kernel, so
//   nu = (1/15) ∫ A:A M, kappa = (2/15) ∫ B.B M, sigma = (1/3) ∫ |v|^2 M.
std::array<double, 3> bgk_coefficients_quadrature(int nodes = 8);

// Probabilists' Gauss-Hermite rule (weights sum to 1) by Golub-Welsch.
void gauss_hermite(int n, std::vector<double>& x, std::vector<double>& w);

struct OrderStudy {
  std::vector<double> dt, err;
  double slope = 0;  // least-squares slope of log err against log dt
};

// Linear per-mode dynamics (no Lorentz or bilinear terms) on one Fourier mode, advanced by the
// integrator to T and compared with exp(-T A_k) x0 built from the dense per-mode operator.
OrderStudy imex_order(Scheme scheme, double T = 1.0, double dt0 = 0.025, int levels = 4);

// ||R(dt)|| / ||R(dt/2)|| of the j-tilde balance on exact matrix-exponential states.
double jtilde_halving_ratio(double dt = 0.02);

// Max relative per-step error of the fluid solver on a single decaying mode against its
// closed form: "heat" (NSF theta, rate kappa |k|^2) or "charge" (NSP n, rate sigma |k|^2 + sigma).
double fluid_decay_error(const char* kind, double dt = 0.05, int steps = 40);

}  // namespace vmb::oracle
