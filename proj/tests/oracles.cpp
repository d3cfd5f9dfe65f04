#include "oracles.hpp"

#include <cmath>
#include <complex>
#include <cstring>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "vmb/diagnostics.hpp"
#include "vmb/fluid.hpp"

namespace vmb::oracle {

void gauss_hermite(int n, std::vector<double>& x, std::vector<double>& w) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) J(i, i - 1) = J(i - 1, i) = std::sqrt(static_cast<double>(i));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    x[i] = es.eigenvalues()(i);
    w[i] = es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
  }
}

std::array<double, 3> bgk_coefficients_quadrature(int nodes) {
  std::vector<double> x, w;
  gauss_hermite(nodes, x, w);
  double aa = 0, bb = 0, vv = 0;
  for (int a = 0; a < nodes; ++a)
    for (int b = 0; b < nodes; ++b)
      for (int c = 0; c < nodes; ++c) {
        const double v[3] = {x[a], x[b], x[c]};
        const double wt = w[a] * w[b] * w[c];
        const double v2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) {
            const double A = v[i] * v[j] - (i == j ? v2 / 3.0 : 0.0);
            aa += wt * A * A;
          }
        for (int i = 0; i < 3; ++i) {
          const double B = 0.5 * v[i] * (v2 - 5.0);
          bb += wt * B * B;
        }
        vv += wt * v2;
      }
  return {aa / 15.0, 2.0 * bb / 15.0, vv / 3.0};
}

namespace {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

struct ModeProblem {
  SpectralGrid grid;
  ScalingRegime regime;
  CollisionBackend backend;
  std::size_t k = 0;
  CMat A;
  CVec x0;
};

ModeProblem make_problem(unsigned seed) {
  ModeProblem p{};
  p.grid.dx = 1;
  p.grid.nx = 4;
  p.grid.nv = 4;
  p.regime = ScalingRegime::preset(RegimeTag::NSW, 0.5);
  p.backend = CollisionBackend::parse("bgk", {});
  p.k = p.grid.mode_of({1, 0, 0});
  ImplicitSolver solver(p.grid, p.backend, p.regime);
  const std::size_t m = solver.mode_size();
  p.A.resize(m, m);
  std::vector<cplx> e(m), col(m);
  for (std::size_t j = 0; j < m; ++j) {
    std::fill(e.begin(), e.end(), cplx{});
    e[j] = 1.0;
    solver.apply_mode(p.k, e.data(), col.data());
    for (std::size_t i = 0; i < m; ++i) p.A(i, j) = col[i];
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  p.x0.resize(m);
  for (std::size_t i = 0; i < m; ++i) p.x0(i) = cplx(nd(rng), nd(rng)) / std::sqrt(static_cast<double>(m));
  return p;
}

KineticState to_state(const ModeProblem& p, const CVec& x) {
  KineticState s(p.grid);
  std::vector<cplx> v(x.data(), x.data() + x.size());
  scatter_mode(v.data(), p.k, s);
  std::vector<cplx> vc(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) vc[i] = std::conj(v[i]);
  scatter_mode(vc.data(), p.grid.conj_mode(p.k), s);
  return s;
}

CVec from_state(const ModeProblem& p, const KineticState& s) {
  std::vector<cplx> v(2 * p.grid.nh() + 6);
  gather_mode(s, p.k, v.data());
  return Eigen::Map<CVec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

OrderStudy imex_order(Scheme scheme, double T, double dt0, int levels) {
  const auto p = make_problem(11);
  const CMat expA = (-T * p.A).exp();
  const CVec exact = expA * p.x0;
  IntegratorOptions opt;
  opt.scheme = scheme;
  opt.lorentz = false;
  opt.gamma = false;
  opt.clean_every = 0;
  Integrator integ(p.grid, p.backend, p.regime, opt);
  OrderStudy out;
  double dt = dt0;
  for (int l = 0; l < levels; ++l, dt *= 0.5) {
    KineticState s = to_state(p, p.x0);
    const long n = std::lround(T / dt);
    for (long i = 0; i < n; ++i) integ.step(s, dt);
    out.dt.push_back(dt);
    out.err.push_back((from_state(p, s) - exact).norm() / exact.norm());
  }
  out.slope = fit_slope(out.dt, out.err);
  return out;
}

double jtilde_halving_ratio(double dt) {
  const auto p = make_problem(13);
  const double T = 0.5;
  auto residual = [&](double h) {
    const CVec cur = (-T * p.A).exp() * p.x0;
    const CVec prev = (-(T - h) * p.A).exp() * p.x0;
    const auto r = jtilde_balance(to_state(p, prev), to_state(p, cur), p.regime, p.backend, h);
    double s = 0;
    for (const auto& c : r.c)
      for (const auto& z : c) s += std::norm(z);
    return std::sqrt(s);
  };
  return residual(dt) / residual(0.5 * dt);
}

double fluid_decay_error(const char* kind, double dt, int steps) {
  const bool heat = std::strcmp(kind, "heat") == 0;
  if (!heat && std::strcmp(kind, "charge") != 0) throw std::invalid_argument("fluid_decay_error: unknown kind");
  SpectralGrid g;
  g.dx = 1;
  g.nx = 16;
  g.nv = 4;
  FluidRegimeConfig cfg;
  cfg.tag = heat ? RegimeTag::NSF : RegimeTag::NSP;
  cfg.coeffs = transport_coefficients(CollisionBackend::parse("bgk", {}), 8);
  cfg.grid = g;
  cfg.dt = dt;
  cfg.t_end = dt * steps;
  FluidSolver solver(cfg);
  FluidState s = fluid_initial(make_profile(g, heat ? "heat-mode" : "charge-mode", 0.01), cfg.tag);
  const std::size_t k = g.mode_of({1, 0, 0});
  const double k2 = g.k2(k);
  const double rate = heat ? cfg.coeffs.kappa * k2 : cfg.coeffs.sigma * k2 + cfg.coeffs.sigma;
  const cplx a0 = heat ? s.theta.c[k] : s.n.c[k];
  double worst = 0;
  for (int i = 1; i <= steps; ++i) {
    solver.step(s, dt);
    const cplx a = heat ? s.theta.c[k] : s.n.c[k];
    const cplx ref = a0 * std::exp(-rate * i * dt);
    worst = std::max(worst, std::abs(a - ref) / std::abs(ref));
  }
  return worst;
}

}  // namespace vmb::oracle
