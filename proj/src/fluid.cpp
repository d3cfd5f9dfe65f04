#include "vmb/fluid.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>

#include "vmb/xspace.hpp"

namespace vmb {

namespace {

constexpr std::size_t kVars = 11;  // u(3) theta n E(3) B(3)
constexpr std::size_t kU = 0, kTheta = 3, kN = 4, kE = 5, kB = 8;

void leray(const SpectralGrid& g, std::vector<cplx>* u) {
  for (std::size_t k = 0; k < g.nk(); ++k) {
    const double k2 = g.k2(k);
    if (k2 == 0.0) continue;
    const auto kv = g.kvec(k);
    cplx kd{};
    for (int i = 0; i < 3; ++i) kd += kv[i] * u[i][k];
    for (int i = 0; i < 3; ++i) u[i][k] -= kv[i] * kd / k2;
  }
}

double sq_norm(const std::vector<cplx>& a, const SpectralGrid& g, bool grad) {
  double s = 0.0;
  for (std::size_t k = 0; k < g.nk(); ++k) s += std::norm(a[k]) * (grad ? g.k2(k) : 1.0);
  return s * g.volume();
}

}  // namespace

void FluidRegimeConfig::validate() const {
  grid.validate();
  if (!(coeffs.nu_limit > 0.0 && coeffs.kappa > 0.0 && coeffs.sigma > 0.0))
    throw std::invalid_argument("fluid: transport coefficients must be strictly positive");
  if (tag == RegimeTag::custom) throw std::invalid_argument("fluid: no limit system for custom regimes");
  if (!(dt > 0.0)) throw std::invalid_argument("fluid: dt must be positive");
}

VectorField3 ohm_current(const VectorField3& u, const ScalarField& n, const VectorField3& E, const VectorField3& B,
                         double sigma, double a, double b) {
  const SpectralGrid& g = u.grid;
  XSpace xs(g);
  const std::size_t np = xs.npts(), nk = g.nk();
  // physical u, B, n
  std::vector<cplx> spec(nk * 7), phys(np * 7);
  for (std::size_t k = 0; k < nk; ++k) {
    for (int i = 0; i < 3; ++i) {
      spec[k * 7 + i] = u.c[i][k];
      spec[k * 7 + 3 + i] = B.c[i][k];
    }
    spec[k * 7 + 6] = n.c[k];
  }
  xs.to_physical(spec.data(), 7, phys.data());
  std::vector<cplx> prod(np * 3);
  for (std::size_t p = 0; p < np; ++p) {
    const cplx* q = phys.data() + p * 7;
    for (int i = 0; i < 3; ++i) {
      const int c1 = (i + 1) % 3, c2 = (i + 2) % 3;
      const double uxb = q[c1].real() * q[3 + c2].real() - q[c2].real() * q[3 + c1].real();
      prod[p * 3 + i] = sigma * b * uxb + q[6].real() * q[i].real();
    }
  }
  std::vector<cplx> out(nk * 3);
  xs.to_spectral(prod.data(), 3, out.data());
  VectorField3 j(g);
  const auto gn = grad(n);
  for (int i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < nk; ++k)
      j.c[i][k] = sigma * a * E.c[i][k] - sigma * gn.c[i][k] + out[k * 3 + i];
  return j;
}

VectorField3 ohm_current(const FluidState& s, const FluidRegimeConfig& cfg) {
  if (s.tag != RegimeTag::NSW || cfg.tag != RegimeTag::NSW)
    throw FluidError("ohm_current: Ohm's law closes the current only in the NSW limit");
  if (!cfg.ohm_coupling) return VectorField3(s.grid());
  return ohm_current(s.u, s.n, s.E, s.B, cfg.coeffs.sigma, 1.0, 1.0);
}

FluidState fluid_initial(const InitialData& d, RegimeTag tag) {
  const SpectralGrid& g = d.rho.grid;
  FluidState s(g, tag);
  const std::size_t k0 = g.mode_of({0, 0, 0});
  s.u = d.u;
  leray(g, s.u.c.data());
  // well-prepared data carry rho = -theta (Boussinesq), as built for the kinetic state
  for (std::size_t k = 0; k < g.nk(); ++k) {
    const auto rho = d.well_prepared ? -d.theta.c[k] : d.rho.c[k];
    s.theta.c[k] = 0.6 * d.theta.c[k] - 0.4 * rho;
  }
  s.theta.c[k0] = 0.0;
  s.n = d.n;
  s.n.c[k0] = 0.0;
  if (tag == RegimeTag::NSW) {
    s.B = d.B;
    const auto hb = helmholtz_decompose(s.B);
    const auto he = helmholtz_decompose(d.E);
    const auto ge = grad_inverse_laplacian(s.n);
    for (int i = 0; i < 3; ++i)
      for (std::size_t k = 0; k < g.nk(); ++k) {
        s.B.c[i][k] = hb.divergence_free_part.c[i][k];
        s.E.c[i][k] = he.divergence_free_part.c[i][k] + ge.c[i][k];
      }
    for (int i = 0; i < 3; ++i) {
      const int a = (i + 1) % 3, b = (i + 2) % 3;
      const double exb = integral_product(s.E.c[a], s.B.c[b], g) - integral_product(s.E.c[b], s.B.c[a], g);
      s.u.c[i][k0] = -exb / g.volume();
    }
  } else {
    for (int i = 0; i < 3; ++i) s.u.c[i][k0] = 0.0;
    if (tag == RegimeTag::NSP) s.E = grad_inverse_laplacian(s.n);
  }
  symmetrize(s.u);
  symmetrize(s.theta);
  symmetrize(s.n);
  symmetrize(s.E);
  symmetrize(s.B);
  return s;
}

struct FluidSolver::Exps {
  // per mode: diagonal factors for u, theta, n and the 6x6 (E, B) block (NSW)
  std::vector<double> eu, et, en;
  std::vector<Eigen::Matrix<cplx, 6, 6>> eb;
};

FluidSolver::FluidSolver(const FluidRegimeConfig& cfg) : cfg_(cfg), xs_(std::make_unique<XSpace>(cfg.grid)) {
  cfg_.validate();
}

FluidSolver::~FluidSolver() = default;

const FluidSolver::Exps& FluidSolver::exps(double tau) {
  auto& slot = exps_[tau];
  if (slot) return *slot;
  slot = std::make_unique<Exps>();
  Exps& e = *slot;
  const SpectralGrid& g = cfg_.grid;
  const auto& c = cfg_.coeffs;
  const std::size_t nk = g.nk();
  e.eu.resize(nk);
  e.et.resize(nk);
  e.en.resize(nk);
  if (cfg_.tag == RegimeTag::NSW) e.eb.resize(nk);
  const cplx I(0.0, 1.0);
  for (std::size_t k = 0; k < nk; ++k) {
    const double k2 = g.k2(k);
    e.eu[k] = std::exp(-tau * c.nu_limit * k2);
    e.et[k] = std::exp(-tau * c.kappa * k2);
    if (cfg_.tag == RegimeTag::NSF) e.en[k] = std::exp(-tau * c.sigma * k2);
    if (cfg_.tag == RegimeTag::NSP) e.en[k] = std::exp(-tau * c.sigma * (k2 + 1.0));
    if (cfg_.tag == RegimeTag::NSW) {
      e.en[k] = 1.0;
      const auto kv = g.kvec(k);
      Eigen::Matrix<cplx, 6, 6> m = Eigen::Matrix<cplx, 6, 6>::Zero();
      for (int i = 0; i < 3; ++i) {
        const int a = (i + 1) % 3, b = (i + 2) % 3;
        // E_t = i k x B - sigma E - sigma k (k.E); B_t = -i k x E
        m(i, 3 + b) += I * kv[a];
        m(i, 3 + a) -= I * kv[b];
        m(3 + i, b) -= I * kv[a];
        m(3 + i, a) += I * kv[b];
        if (cfg_.ohm_coupling) {
          m(i, i) -= c.sigma;
          for (int l = 0; l < 3; ++l) m(i, l) -= c.sigma * kv[i] * kv[l];
        }
      }
      e.eb[k] = (tau * m).exp();
    }
  }
  return e;
}

std::vector<cplx> FluidSolver::pack(const FluidState& s) const {
  const std::size_t nk = cfg_.grid.nk();
  std::vector<cplx> v(nk * kVars);
  for (std::size_t k = 0; k < nk; ++k) {
    cplx* p = v.data() + k * kVars;
    for (int i = 0; i < 3; ++i) {
      p[kU + i] = s.u.c[i][k];
      p[kE + i] = s.E.c[i][k];
      p[kB + i] = s.B.c[i][k];
    }
    p[kTheta] = s.theta.c[k];
    p[kN] = s.n.c[k];
  }
  return v;
}

void FluidSolver::unpack(const std::vector<cplx>& v, FluidState& s) const {
  const std::size_t nk = cfg_.grid.nk();
  for (std::size_t k = 0; k < nk; ++k) {
    const cplx* p = v.data() + k * kVars;
    for (int i = 0; i < 3; ++i) {
      s.u.c[i][k] = p[kU + i];
      s.E.c[i][k] = p[kE + i];
      s.B.c[i][k] = p[kB + i];
    }
    s.theta.c[k] = p[kTheta];
    s.n.c[k] = p[kN];
  }
}

void FluidSolver::apply_exp(const Exps& e, std::vector<cplx>& v) const {
  const std::size_t nk = cfg_.grid.nk();
  for (std::size_t k = 0; k < nk; ++k) {
    cplx* p = v.data() + k * kVars;
    for (int i = 0; i < 3; ++i) p[kU + i] *= e.eu[k];
    p[kTheta] *= e.et[k];
    p[kN] *= e.en[k];
    if (cfg_.tag == RegimeTag::NSW) {
      Eigen::Matrix<cplx, 6, 1> x;
      for (int i = 0; i < 6; ++i) x(i) = p[kE + i];
      x = e.eb[k] * x;
      for (int i = 0; i < 6; ++i) p[kE + i] = x(i);
    }
  }
}

void FluidSolver::close(FluidState& s) const {
  const SpectralGrid& g = cfg_.grid;
  leray(g, s.u.c.data());
  if (s.tag == RegimeTag::NSP) {
    s.E = grad_inverse_laplacian(s.n);
    s.B = VectorField3(g);
  } else if (s.tag == RegimeTag::NSW) {
    s.n = div(s.E);
  } else {
    s.E = VectorField3(g);
    s.B = VectorField3(g);
  }
}

std::vector<cplx> FluidSolver::nonlinear(const std::vector<cplx>& v, FluidState& s) {
  unpack(v, s);
  close(s);
  const SpectralGrid& g = cfg_.grid;
  const std::size_t nk = g.nk(), np = xs_->npts();
  const double sigma = cfg_.coeffs.sigma;
  const bool nsw = cfg_.tag == RegimeTag::NSW, nsp = cfg_.tag == RegimeTag::NSP;
  // slots: u 0-2, d_j u_i 3+3i+j, theta 12, grad theta 13-15, n 16, grad n 17-19, E 20-22, B 23-25
  constexpr std::size_t nf = 26;
  std::vector<cplx> spec(nk * nf), phys(np * nf);
  const cplx I(0.0, 1.0);
  for (std::size_t k = 0; k < nk; ++k) {
    const auto kv = g.kvec(k);
    cplx* p = spec.data() + k * nf;
    for (int i = 0; i < 3; ++i) {
      p[i] = s.u.c[i][k];
      for (int j = 0; j < 3; ++j) p[3 + 3 * i + j] = I * kv[j] * s.u.c[i][k];
      p[13 + i] = I * kv[i] * s.theta.c[k];
      p[17 + i] = I * kv[i] * s.n.c[k];
      p[20 + i] = s.E.c[i][k];
      p[23 + i] = s.B.c[i][k];
    }
    p[12] = s.theta.c[k];
    p[16] = s.n.c[k];
  }
  xs_->to_physical(spec.data(), nf, phys.data());
  // products: momentum forcing 0-2, theta advection 3, n advection 4, Ampere source 5-7
  constexpr std::size_t no = 8;
  std::vector<cplx> prod(np * no);
  for (std::size_t p = 0; p < np; ++p) {
    double q[nf];
    for (std::size_t i = 0; i < nf; ++i) q[i] = phys[p * nf + i].real();
    const double* u = q;
    const double* E = q + 20;
    const double* B = q + 23;
    const double n = q[16];
    double uxb[3], jv[3] = {0, 0, 0};
    for (int i = 0; i < 3; ++i) uxb[i] = u[(i + 1) % 3] * B[(i + 2) % 3] - u[(i + 2) % 3] * B[(i + 1) % 3];
    if (nsw && cfg_.ohm_coupling)
      for (int i = 0; i < 3; ++i) jv[i] = sigma * (E[i] + uxb[i] - q[17 + i]) + n * u[i];
    cplx* o = prod.data() + p * no;
    for (int i = 0; i < 3; ++i) {
      double adv = 0.0;
      for (int j = 0; j < 3; ++j) adv += u[j] * q[3 + 3 * i + j];
      double force = 0.0;
      if (nsp || nsw) force += n * E[i];
      if (nsw) force += jv[(i + 1) % 3] * B[(i + 2) % 3] - jv[(i + 2) % 3] * B[(i + 1) % 3];
      o[i] = force - adv;
      o[5 + i] = (nsw && cfg_.ohm_coupling) ? -(sigma * uxb[i] + n * u[i]) : 0.0;
    }
    o[3] = -(u[0] * q[13] + u[1] * q[14] + u[2] * q[15]);
    o[4] = -(u[0] * q[17] + u[1] * q[18] + u[2] * q[19]);
  }
  std::vector<cplx> ns(nk * no);
  xs_->to_spectral(prod.data(), no, ns.data());
  std::vector<cplx> out(nk * kVars);
  std::vector<cplx> uu[3] = {std::vector<cplx>(nk), std::vector<cplx>(nk), std::vector<cplx>(nk)};
  for (std::size_t k = 0; k < nk; ++k)
    for (int i = 0; i < 3; ++i) uu[i][k] = ns[k * no + i];
  leray(g, uu);
  for (std::size_t k = 0; k < nk; ++k) {
    cplx* p = out.data() + k * kVars;
    for (int i = 0; i < 3; ++i) {
      p[kU + i] = uu[i][k];
      p[kE + i] = ns[k * no + 5 + i];
    }
    p[kTheta] = ns[k * no + 3];
    p[kN] = nsw ? cplx{} : ns[k * no + 4];
  }
  return out;
}

void FluidSolver::step(FluidState& s, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("step_fluid: dt must be positive");
  require_same(s.grid(), cfg_.grid, "step_fluid");
  if (s.tag != cfg_.tag) throw FluidError("step_fluid: state and config regimes differ");
  const Exps& a = exps(0.5 * h);
  FluidState scratch = s;
  close(s);
  const std::vector<cplx> u0 = pack(s);
  const std::size_t n = u0.size();
  // Lawson RK4 with a = exp(hL/2):
  //   U2 = a (u + h/2 N1), U3 = a u + h/2 N2, U4 = a (a u + h N3)
  //   u+ = a (a (u + h/6 N1) + h/3 (N2 + N3)) + h/6 N4
  const auto n1 = nonlinear(u0, scratch);
  std::vector<cplx> x(n), au = u0;
  apply_exp(a, au);
  for (std::size_t i = 0; i < n; ++i) x[i] = u0[i] + 0.5 * h * n1[i];
  apply_exp(a, x);
  const auto n2 = nonlinear(x, scratch);
  for (std::size_t i = 0; i < n; ++i) x[i] = au[i] + 0.5 * h * n2[i];
  const auto n3 = nonlinear(x, scratch);
  for (std::size_t i = 0; i < n; ++i) x[i] = au[i] + h * n3[i];
  apply_exp(a, x);
  const auto n4 = nonlinear(x, scratch);
  for (std::size_t i = 0; i < n; ++i) x[i] = u0[i] + h / 6.0 * n1[i];
  apply_exp(a, x);
  for (std::size_t i = 0; i < n; ++i) x[i] += h / 3.0 * (n2[i] + n3[i]);
  apply_exp(a, x);
  for (std::size_t i = 0; i < n; ++i) x[i] += h / 6.0 * n4[i];
  for (const auto& c : x)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw FluidError("fluid integration diverged at t = " + std::to_string(s.t + h));
  unpack(x, s);
  close(s);
  s.t += h;
}

FluidState step_fluid(const FluidState& s, const FluidRegimeConfig& cfg, double dt) {
  FluidSolver solver(cfg);
  FluidState out = s;
  solver.step(out, dt);
  return out;
}

FluidEnergy energy_balance(const FluidState& s, const FluidRegimeConfig& cfg) {
  const SpectralGrid& g = s.grid();
  FluidEnergy e;
  for (int i = 0; i < 3; ++i) {
    e.kinetic += 0.5 * sq_norm(s.u.c[i], g, false);
    e.viscous_dissipation += cfg.coeffs.nu_limit * sq_norm(s.u.c[i], g, true);
  }
  e.thermal = 0.5 * sq_norm(s.theta.c, g, false);
  e.thermal_dissipation = cfg.coeffs.kappa * sq_norm(s.theta.c, g, true);
  e.charge = 0.5 * sq_norm(s.n.c, g, false);
  if (s.tag == RegimeTag::NSW || s.tag == RegimeTag::NSP) {
    for (int i = 0; i < 3; ++i) e.electromagnetic += 0.5 * (sq_norm(s.E.c[i], g, false) + sq_norm(s.B.c[i], g, false));
  }
  if (s.tag == RegimeTag::NSW && cfg.ohm_coupling) {
    const auto j = ohm_current(s, cfg);
    for (int i = 0; i < 3; ++i) e.joule += integral_product(j.c[i], s.E.c[i], g);
  }
  return e;
}

}  // namespace vmb
