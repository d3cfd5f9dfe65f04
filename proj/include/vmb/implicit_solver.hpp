#pragma once
// Stiff linear part of the kinetic system, per Fourier mode k:
//   A f = (i/eps) k.v f + (1/eps^2) L f
//   A g = (i/eps) k.v g + (1/eps^2) Lsf g - (alpha/eps^2) E.v
//   A E = -(1/gamma) i k x B + (beta/(eps gamma)) j,   A B = (1/gamma) i k x E
// and solves (I + h A) X = R exactly (BGK) or by preconditioned GMRES (spectral-diagonal).
//
// With D = (1 + h r/eps^2) I + (i h/eps) k.v (diagonal in the eigenbasis of the truncated v_i),
// BGK reduces to D^{-1} plus a rank-5 correction for f and a 10x10 system in (g_0, j, E, B) for g.

#include <map>
#include <memory>
#include <vector>

#include "vmb/hermite.hpp"
#include "vmb/operators.hpp"
#include "vmb/regime.hpp"
#include "vmb/state.hpp"

namespace vmb {

class ImplicitSolver {
 public:
  ImplicitSolver(const SpectralGrid& g, const CollisionBackend& b, const ScalingRegime& r);
  ~ImplicitSolver();

  // out = A x
  void apply(const KineticState& x, KineticState& out) const;
  // x <- (I + h A)^{-1} x
  void solve(double h, KineticState& x);

  // per-mode layout: [f (nh) | g (nh) | E (3) | B (3)]
  std::size_t mode_size() const { return 2 * grid_.nh() + 6; }
  void apply_mode(std::size_t k, const cplx* x, cplx* out) const;
  void solve_mode(double h, std::size_t k, cplx* x);

  int last_gmres_iterations() const { return gmres_iters_; }
  double gmres_tol = 1e-13;

 private:
  struct ModeCache;
  struct StepCache;
  StepCache& cache(double h);
  void precondition(const StepCache& c, std::size_t k, cplx* x) const;
  void dinv(const ModeCache& mc, const cplx* in, cplx* out, std::vector<double>& scratch) const;

  SpectralGrid grid_;
  CollisionBackend backend_;
  ScalingRegime regime_;
  JacobiEigen eig_;
  std::map<double, std::unique_ptr<StepCache>> caches_;
  mutable std::vector<double> scratch_;
  int gmres_iters_ = 0;
};

void gather_mode(const KineticState& s, std::size_t k, cplx* out);
void scatter_mode(const cplx* in, std::size_t k, KineticState& s);

}  // namespace vmb
