#pragma once
// Fourier (x on the torus) by Hermite (v in R^3) representation of perturbations g,
// where the physical density is M*g. All norms are M-weighted, hence diagonal here.

#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace vmb {

using cplx = std::complex<double>;

struct SpectralGrid {
  int dx = 1;     // spatial dimension
  int nx = 32;    // Fourier modes per direction
  int nv = 12;    // Hermite modes per velocity direction (n_i < nv)
  double lx = 6.283185307179586;

  void validate() const;
  std::size_t nk() const;  // nx^dx
  std::size_t nh() const { return static_cast<std::size_t>(nv) * nv * nv; }
  double volume() const;
  // signed integer wavenumber index per direction (0 for unused directions)
  std::array<int, 3> mode_index(std::size_t mode) const;
  std::array<double, 3> kvec(std::size_t mode) const;
  double k2(std::size_t mode) const;
  // Nyquist modes are kept at zero so that spectral differentiation stays real
  bool active(std::size_t mode) const;
  std::size_t conj_mode(std::size_t mode) const;
  std::size_t mode_of(const std::array<int, 3>& m) const;  // inverse of mode_index
  std::size_t hidx(int n1, int n2, int n3) const { return (static_cast<std::size_t>(n1) * nv + n2) * nv + n3; }
  std::array<int, 3> hmulti(std::size_t h) const {
    return {static_cast<int>(h / (nv * nv)), static_cast<int>((h / nv) % nv), static_cast<int>(h % nv)};
  }
  bool operator==(const SpectralGrid& o) const {
    return dx == o.dx && nx == o.nx && nv == o.nv && lx == o.lx;
  }
  bool operator!=(const SpectralGrid& o) const { return !(*this == o); }
};

struct GridMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline void require_same(const SpectralGrid& a, const SpectralGrid& b, const char* where) {
  if (a != b) throw GridMismatch(std::string(where) + ": grid mismatch");
}

struct ScalarField {
  SpectralGrid grid;
  std::vector<cplx> c;
  ScalarField() = default;
  explicit ScalarField(const SpectralGrid& g) : grid(g), c(g.nk()) {}
};

struct VectorField3 {
  SpectralGrid grid;
  std::array<std::vector<cplx>, 3> c;
  VectorField3() = default;
  explicit VectorField3(const SpectralGrid& g) : grid(g) {
    for (auto& v : c) v.assign(g.nk(), cplx{});
  }
  ScalarField component(int i) const {
    ScalarField s(grid);
    s.c = c[i];
    return s;
  }
};

struct DistributionField {
  SpectralGrid grid;
  std::vector<cplx> c;  // [mode][hermite]
  DistributionField() = default;
  explicit DistributionField(const SpectralGrid& g) : grid(g), c(g.nk() * g.nh()) {}
  cplx& at(std::size_t mode, std::size_t h) { return c[mode * grid.nh() + h]; }
  const cplx& at(std::size_t mode, std::size_t h) const { return c[mode * grid.nh() + h]; }
  cplx* mode_ptr(std::size_t mode) { return c.data() + mode * grid.nh(); }
  const cplx* mode_ptr(std::size_t mode) const { return c.data() + mode * grid.nh(); }
};

// Real-space profile a(x) times a single Hermite mode.
DistributionField hermite_mode(const SpectralGrid& g, int n1, int n2, int n3, const ScalarField& profile);
ScalarField constant_field(const SpectralGrid& g, double value);
// profile a*cos(k.x) or a*sin(k.x) for integer wavenumber m
ScalarField cos_mode(const SpectralGrid& g, const std::array<int, 3>& m, double a);
ScalarField sin_mode(const SpectralGrid& g, const std::array<int, 3>& m, double a);

double inner_product(const DistributionField& f, const DistributionField& h);
double inner_product(const ScalarField& a, const ScalarField& b);
double inner_product(const VectorField3& a, const VectorField3& b);

enum class NormMode { x_only, mixed, lambda_x, lambda_mixed };
NormMode parse_norm_mode(const std::string& s);

// sqrt of the sum of squared derivative norms up to order s
double sobolev_norm(const DistributionField& f, int s, NormMode mode);
double sobolev_norm_sq(const DistributionField& f, int s, NormMode mode);
double sobolev_norm_sq(const ScalarField& a, int s);
double sobolev_norm_sq(const VectorField3& a, int s);
// sum over ordered j-tuples of ||d_v^tuple c||^2 for one mode's coefficients
double vderiv_mode_sq(const SpectralGrid& g, const cplx* c, int j, bool lambda);
// ||grad_x^i grad_v^j f||^2 with ordered-tuple summation over both derivative sets
double derivative_norm_sq(const DistributionField& f, int i, int j, bool lambda);

DistributionField grad_x(const DistributionField& f, int dir);
DistributionField grad_v(const DistributionField& f, int comp);
ScalarField grad_x(const ScalarField& a, int dir);
ScalarField div(const VectorField3& a);
VectorField3 grad(const ScalarField& a);
VectorField3 curl(const VectorField3& a);

struct Helmholtz {
  VectorField3 gradient_part;
  VectorField3 divergence_free_part;
  std::array<double, 3> mean;
};
Helmholtz helmholtz_decompose(const VectorField3& F);

// Zero mean solution phi of Laplace(phi) = rho; returns grad(phi).
VectorField3 grad_inverse_laplacian(const ScalarField& rho);

// Enforces c(-k) = conj(c(k)) by averaging, zeroes Nyquist modes.
void symmetrize(DistributionField& f);
void symmetrize(ScalarField& a);
void symmetrize(VectorField3& a);

// ||a||_{L^2} of the imaginary part of the physical field; 0 for real fields
double reality_defect(const DistributionField& f);

// Falling factorial n (n-1) ... (n-j+1)
double falling(int n, int j);

// Ladder actions on one mode; `out` must not alias `in`. Without `accumulate`, `out` is overwritten.
// Applies sqrt(n_i + 1) up-shift (multiplication by v_i minus d/dv_i) to one mode's coefficients.
void raise_mode(const SpectralGrid& g, int comp, const cplx* in, cplx* out, bool accumulate, cplx scale);
// Multiplication by v_i on one mode's coefficients (top up-shift truncated).
void vmul_mode(const SpectralGrid& g, int comp, const cplx* in, cplx* out, bool accumulate, cplx scale);
// d/dv_i on one mode.
void dv_mode(const SpectralGrid& g, int comp, const cplx* in, cplx* out, bool accumulate, cplx scale);
// Rotation generator sum_{ij} eps_{ijk} v_j d_{v_i} for component k on one mode.
void rot_mode(const SpectralGrid& g, int k, const cplx* in, cplx* out, bool accumulate, cplx scale);

}  // namespace vmb
