#include "vmb/state.hpp"

#include <cmath>

namespace vmb {

namespace {

void axpy_vec(double a, const std::vector<cplx>& x, std::vector<cplx>& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

double sumsq(const std::vector<cplx>& x) {
  double s = 0.0;
  for (const auto& v : x) s += std::norm(v);
  return s;
}

bool finite(const std::vector<cplx>& x) {
  for (const auto& v : x)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

std::size_t zero_mode(const SpectralGrid& g) { return g.mode_of({0, 0, 0}); }

}  // namespace

void axpy(double a, const KineticState& x, KineticState& y) {
  axpy_vec(a, x.f.c, y.f.c);
  axpy_vec(a, x.g.c, y.g.c);
  for (int i = 0; i < 3; ++i) {
    axpy_vec(a, x.E.c[i], y.E.c[i]);
    axpy_vec(a, x.B.c[i], y.B.c[i]);
  }
}

double l2_norm(const KineticState& s) {
  double t = sumsq(s.f.c) + sumsq(s.g.c);
  for (int i = 0; i < 3; ++i) t += sumsq(s.E.c[i]) + sumsq(s.B.c[i]);
  return std::sqrt(t * s.grid().volume());
}

std::string first_nonfinite(const KineticState& s) {
  if (!finite(s.f.c)) return "f";
  if (!finite(s.g.c)) return "g";
  for (int i = 0; i < 3; ++i) {
    if (!finite(s.E.c[i])) return "E";
    if (!finite(s.B.c[i])) return "B";
  }
  return {};
}

double integral_product(const std::vector<cplx>& a, const std::vector<cplx>& b, const SpectralGrid& g) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] * std::conj(b[k])).real();
  return s * g.volume();
}

GaussResiduals gauss_residuals(const KineticState& s, const ScalingRegime& r) {
  const SpectralGrid& g = s.grid();
  const double q = r.alpha / r.epsilon;
  const auto de = div(s.E);
  const auto db = div(s.B);
  double se = 0.0, sb = 0.0;
  for (std::size_t k = 0; k < g.nk(); ++k) {
    se += std::norm(de.c[k] - q * s.g.at(k, 0));
    sb += std::norm(db.c[k]);
  }
  return {std::sqrt(se * g.volume()), std::sqrt(sb * g.volume())};
}

GaussResiduals enforce_gauss(KineticState& s, const ScalingRegime& r, GaussMode mode) {
  if (mode == GaussMode::clean) {
    const SpectralGrid& g = s.grid();
    ScalarField n(g);
    for (std::size_t k = 0; k < g.nk(); ++k) n.c[k] = (r.alpha / r.epsilon) * s.g.at(k, 0);
    const auto target = grad_inverse_laplacian(n);
    const auto he = helmholtz_decompose(s.E);
    const auto hb = helmholtz_decompose(s.B);
    for (int i = 0; i < 3; ++i)
      for (std::size_t k = 0; k < g.nk(); ++k) {
        s.E.c[i][k] += target.c[i][k] - he.gradient_part.c[i][k];
        s.B.c[i][k] -= hb.gradient_part.c[i][k];
      }
  }
  return gauss_residuals(s, r);
}

InitialData make_profile(const SpectralGrid& g, const std::string& name, double a, bool well_prepared) {
  InitialData d;
  d.profile = name;
  d.amplitude = a;
  d.well_prepared = well_prepared;
  d.rho = ScalarField(g);
  d.theta = ScalarField(g);
  d.n = ScalarField(g);
  d.u = VectorField3(g);
  d.E = VectorField3(g);
  d.B = VectorField3(g);
  const std::array<int, 3> k1{1, 0, 0}, k2{2, 0, 0};
  if (name == "equilibrium") {
  } else if (name == "shear-mode") {
    d.u.c[1] = sin_mode(g, k1, a).c;
  } else if (name == "charge-mode") {
    d.n = cos_mode(g, k1, a);
  } else if (name == "heat-mode") {
    d.theta = cos_mode(g, k1, a);
  } else if (name == "mixed") {
    d.u.c[1] = sin_mode(g, k1, a).c;
    d.u.c[2] = cos_mode(g, k2, 0.5 * a).c;
    d.theta = cos_mode(g, k1, 0.5 * a);
    d.n = sin_mode(g, k1, 0.5 * a);
    d.E.c[1] = cos_mode(g, k1, 0.5 * a).c;
    d.B.c[2] = sin_mode(g, k2, 0.5 * a).c;
  } else {
    throw std::invalid_argument("unknown initial-data profile '" + name + "'");
  }
  if (!well_prepared && name != "equilibrium") d.rho = sin_mode(g, k2, 0.3 * a);
  return d;
}

KineticState build_initial_state(const InitialData& d, const ScalingRegime& r) {
  const SpectralGrid& g = d.rho.grid;
  KineticState s(g);
  const std::size_t k0 = zero_mode(g);
  auto rho = d.rho, theta = d.theta, n = d.n;
  auto u = d.u, E = d.E, B = d.B;
  if (!r.limit_has_fields()) {
    E = VectorField3(g);
    B = VectorField3(g);
  }
  // 1. zero means of rho, n, B
  rho.c[k0] = 0.0;
  n.c[k0] = 0.0;
  for (int i = 0; i < 3; ++i) B.c[i][k0] = 0.0;
  // 2. Gauss: div B = 0, gradient part of E from n
  {
    KineticState tmp(g);
    tmp.E = E;
    tmp.B = B;
    for (std::size_t k = 0; k < g.nk(); ++k) tmp.g.at(k, 0) = n.c[k];
    enforce_gauss(tmp, r, GaussMode::clean);
    E = tmp.E;
    B = tmp.B;
  }
  if (d.well_prepared) {
    const auto hu = helmholtz_decompose(u);
    for (int i = 0; i < 3; ++i)
      for (std::size_t k = 0; k < g.nk(); ++k) u.c[i][k] -= hu.gradient_part.c[i][k];
  }
  // 3. momentum: mean u = -gamma mean(E x B)
  const double vol = g.volume();
  for (int i = 0; i < 3; ++i) {
    const int a = (i + 1) % 3, b = (i + 2) % 3;
    const double exb = integral_product(E.c[a], B.c[b], g) - integral_product(E.c[b], B.c[a], g);
    u.c[i][k0] = -r.gamma * exb / vol;
  }
  // 4. energy: mean theta = -eps mean(|E|^2 + |B|^2)/3
  double em = 0.0;
  for (int i = 0; i < 3; ++i) em += integral_product(E.c[i], E.c[i], g) + integral_product(B.c[i], B.c[i], g);
  theta.c[k0] = -r.epsilon * em / (3.0 * vol);
  if (d.well_prepared)
    for (std::size_t k = 0; k < g.nk(); ++k)
      if (k != k0) rho.c[k] = -theta.c[k];

  const std::size_t e[3] = {g.hidx(1, 0, 0), g.hidx(0, 1, 0), g.hidx(0, 0, 1)};
  const std::size_t e2[3] = {g.hidx(2, 0, 0), g.hidx(0, 2, 0), g.hidx(0, 0, 2)};
  const double t2 = std::sqrt(2.0) / 2.0;  // theta (|v|^2-3)/2 = theta (sqrt2/2) sum psi_{2e_i}
  for (std::size_t k = 0; k < g.nk(); ++k) {
    s.f.at(k, 0) = rho.c[k];
    for (int i = 0; i < 3; ++i) {
      s.f.at(k, e[i]) = u.c[i][k];
      s.f.at(k, e2[i]) = t2 * theta.c[k];
    }
    s.g.at(k, 0) = n.c[k];
  }
  s.E = E;
  s.B = B;
  symmetrize(s.f);
  symmetrize(s.g);
  symmetrize(s.E);
  symmetrize(s.B);
  return s;
}

}  // namespace vmb
