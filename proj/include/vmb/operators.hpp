#pragma once
// Collision backends, macroscopic projections, moments, the bilinear surrogate
// and transport coefficients.

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "vmb/hermite.hpp"
#include "vmb/phase_space.hpp"
#include "vmb/xspace.hpp"

namespace vmb {

struct CollisionBackend {
  enum class Kind { bgk, spectral_diagonal, broken_kernel };
  Kind kind = Kind::bgk;
  // relaxation rate per total Hermite degree (spectral_diagonal); missing entries repeat the last one
  std::vector<double> lambda;

  static CollisionBackend bgk() { return {}; }
  static CollisionBackend spectral_diagonal(std::vector<double> lambda);
  // lambda(n) = n, lambda(0) unused
  static CollisionBackend spectral_linear(int max_degree = 64);
  // test fixture: drops |v|^2 from the projection, so the kernel is wrong
  static CollisionBackend broken_kernel();
  static CollisionBackend parse(const std::string& name, const std::vector<double>& lambda = {});

  double rate(int degree) const;
  std::string name() const;
  bool is_bgk_like() const { return kind != Kind::spectral_diagonal; }
};

// Orthonormal kernel of L: psi_0, psi_{e_i}, (|v|^2-3)/sqrt(6) = sum_i psi_{2e_i}/sqrt(3).
// Components of a coefficient tensor along them:
std::array<cplx, 5> kernel_components(const SpectralGrid& g, const cplx* c);
void add_kernel_vector(const SpectralGrid& g, int m, cplx amp, cplx* c);

// Per-mode operators (coefficient tensors of one Fourier mode)
void project_L_mode(const SpectralGrid& g, const cplx* in, cplx* out);
void project_Lsf_mode(const SpectralGrid& g, const cplx* in, cplx* out);
void apply_L_mode(const CollisionBackend& b, const SpectralGrid& g, const cplx* in, cplx* out);
void apply_Lsf_mode(const CollisionBackend& b, const SpectralGrid& g, const cplx* in, cplx* out);

DistributionField project_P_L(const DistributionField& f);
DistributionField project_P_Lsf(const DistributionField& g);
DistributionField apply_L(const CollisionBackend& b, const DistributionField& f);
DistributionField apply_Lsf(const CollisionBackend& b, const DistributionField& g);

struct MomentSet {
  ScalarField rho, theta, n;
  VectorField3 u, j, jt;
};
MomentSet moments(const CollisionBackend& b, const DistributionField& f, const DistributionField& g);

struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class Which { L, Lsf };
// Kernel-orthogonal solution of L x = rhs (or Lsf x = rhs).
DistributionField solve_inverse_L(const CollisionBackend& b, const DistributionField& rhs, Which which,
                                  double tol = 1e-10);

struct TransportCoefficients {
  double nu = 0, kappa = 0, sigma = 0;
  // shear viscosity of the Chapman-Enskog expansion, (1/10) sum A:Ahat; used by the fluid solvers
  double nu_limit = 0;
};
TransportCoefficients transport_coefficients(const CollisionBackend& b, int nv = 12);

// Coefficients of a polynomial-in-v function by tensor Gauss-Hermite projection.
std::vector<double> project_function(int nv, double (*fn)(double, double, double, const void*), const void* ctx);

// Pointwise products of distribution fields by collocation in x (3/2 padding) and v (Gauss-Hermite).
class Collocator {
 public:
  // q = 0 picks the smallest node count that integrates products of two truncated expansions exactly
  explicit Collocator(const SpectralGrid& g, int q = 0);
  const SpectralGrid& grid() const { return grid_; }
  XSpace& xspace() { return xs_; }
  int q() const { return col_.q; }

  // 1/2 P_L^perp(f h)
  DistributionField gamma_L(const DistributionField& f, const DistributionField& h);
  // P_Lsf^perp(g f)
  DistributionField gamma_Lsf(const DistributionField& g, const DistributionField& f);

  // Vlasov force and bilinear terms of both kinetic equations without the 1/eps factor:
  //   nf = alpha sum_i E_i R_i g - beta sum_k B_k Rot_k g + Gamma_L(f, f)
  //   ng = alpha sum_i E_i R_i f - beta sum_k B_k Rot_k f + Gamma_Lsf(g, f)
  // with R_i = v_i - d_{v_i}. E, B may be null (no force); gamma = false drops the bilinear terms.
  void nonlinear(const DistributionField& f, const DistributionField& g, const VectorField3* E, const VectorField3* B,
                 double alpha, double beta, bool gamma, DistributionField& nf, DistributionField& ng);

  // Per-point product in Hermite coefficients of two real tensors (used internally and by tests).
  void product_point(const double* a, const double* b, double* out);

  // Physical values of fields: [point][count] real parts.
  std::vector<double> physical(const cplx* spec, std::size_t count);
  void spectral(const std::vector<double>& phys, std::size_t count, cplx* spec);

 private:
  SpectralGrid grid_;
  XSpace xs_;
  Collocation col_;
  std::vector<double> na_, nb_, scratch_;
  std::vector<cplx> buf_;
};

struct PropertyResult {
  std::string name;  // the assumption being tested
  bool passed = false;
  double value = 0;  // measured defect or constant
  double tol = 0;
  std::string detail;
};
std::vector<PropertyResult> check_collision(const CollisionBackend& b, int nv = 12, unsigned seed = 7);

}  // namespace vmb
