#include "vmb/diagnostics.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "vmb/integrator.hpp"
#include "vmb/ladder.hpp"

namespace vmb {

namespace {

double kpow(double k2, int i) { return i == 0 ? 1.0 : std::pow(k2, i); }

// |T| sum_k k2^m Re(a . conj b)
double wdot(const VectorField3& a, const VectorField3& b, int m) {
  const auto& g = a.grid;
  double s = 0.0;
  for (std::size_t k = 0; k < g.nk(); ++k) {
    const double w = kpow(g.k2(k), m);
    if (w == 0.0) continue;
    double d = 0.0;
    for (int i = 0; i < 3; ++i) d += std::real(a.c[i][k] * std::conj(b.c[i][k]));
    s += w * d;
  }
  return s * g.volume();
}

struct LadderSums {
  double x = 0, v = 0, hv = 0, mixed = 0;
};

// x-Sobolev energy, eps-free v part, v-ladder functional and mixed term of one distribution field
LadderSums ladder_sums(const DistributionField& f, const DiagnosticsConfig& cfg) {
  const auto& g = f.grid;
  const int s = cfg.s;
  LadderSums out;
  std::vector<double> vj(s + 1);
  std::vector<cplx> dv(g.nh());
  const double low = 8.0 * cfg.c1 / 3.0;
  for (std::size_t k = 0; k < g.nk(); ++k) {
    const cplx* c = f.mode_ptr(k);
    const double k2 = g.k2(k);
    for (int j = 0; j <= s; ++j) vj[j] = vderiv_mode_sq(g, c, j, false);
    double wx = 0.0;
    for (int i = 0; i <= s; ++i) wx += kpow(k2, i);
    out.x += wx * vj[0];
    for (int j = 1; j <= s; ++j) {
      double w = 0.0;
      for (int i = 0; i + j <= s; ++i) w += kpow(k2, i);
      out.v += w * vj[j];
    }
    for (int m = 1; m <= s; ++m) {
      double hm = vj[m];
      if (k2 != 0.0)
        for (int jv = 1; jv < m; ++jv) hm += cfg.w8 * kpow(k2, m - jv) * vj[jv];
      out.hv += (m < s ? low : 1.0) * hm;
    }
    if (k2 == 0.0) continue;
    const auto kv = g.kvec(k);
    double cross = 0.0;
    for (int i = 0; i < 3; ++i) {
      if (kv[i] == 0.0) continue;
      std::fill(dv.begin(), dv.end(), cplx{});
      ladder::lower(g.nv, i, c, dv.data(), 1.0);
      double d = 0.0;
      for (std::size_t h = 0; h < g.nh(); ++h) d += std::real(cplx(0.0, kv[i]) * c[h] * std::conj(dv[h]));
      cross += d;
    }
    double wm = 0.0;
    for (int i = 1; i <= s; ++i) wm += kpow(k2, i - 1);
    out.mixed += wm * cross;
  }
  const double vol = g.volume();
  out.x *= vol, out.v *= vol, out.hv *= vol, out.mixed *= vol;
  return out;
}

DistributionField minus(const DistributionField& a, const DistributionField& b) {
  DistributionField r = a;
  for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
  return r;
}

NormPair norms(const ScalarField& a, int s) {
  return {std::sqrt(sobolev_norm_sq(a, 0)), std::sqrt(sobolev_norm_sq(a, std::max(s - 1, 0)))};
}

NormPair norms(const VectorField3& a, int s) {
  return {std::sqrt(sobolev_norm_sq(a, 0)), std::sqrt(sobolev_norm_sq(a, std::max(s - 1, 0)))};
}

VectorField3 diff(const VectorField3& a, const VectorField3& b) {
  VectorField3 r = a;
  for (int i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < r.c[i].size(); ++k) r.c[i][k] -= b.c[i][k];
  return r;
}

}  // namespace

void DiagnosticsConfig::validate() const {
  if (s < 1) throw std::invalid_argument("diagnostics: s must be >= 1");
  if (!(b4 > 0.0 && b5 > 0.0 && c1 > 0.0 && w8 > 0.0))
    throw std::invalid_argument("diagnostics: weights b4, b5, c1, w8 must be positive");
}

std::array<double, 9> Conserved::flat() const {
  return {momentum[0], momentum[1], momentum[2], energy, rho, n, B[0], B[1], B[2]};
}

Conserved conserved_quantities(const KineticState& s, const ScalingRegime& r) {
  const auto& g = s.grid();
  const std::size_t k0 = g.mode_of({0, 0, 0});
  const double vol = g.volume();
  const std::size_t nv = g.nv;
  const std::size_t e[3] = {nv * nv, nv, 1};
  const cplx* f0 = s.f.mode_ptr(k0);
  Conserved c;
  double em = 0.0;
  for (int i = 0; i < 3; ++i) {
    const int a = (i + 1) % 3, b = (i + 2) % 3;
    const double exb = integral_product(s.E.c[a], s.B.c[b], g) - integral_product(s.E.c[b], s.B.c[a], g);
    c.momentum[i] = vol * std::real(f0[e[i]]) + r.gamma * exb;
    c.B[i] = vol * std::real(s.B.c[i][k0]);
    em += integral_product(s.E.c[i], s.E.c[i], g) + integral_product(s.B.c[i], s.B.c[i], g);
  }
  const double theta0 = std::sqrt(2.0) / 3.0 * std::real(f0[2 * e[0]] + f0[2 * e[1]] + f0[2 * e[2]]);
  c.energy = vol * theta0 + r.epsilon * em / 3.0;
  c.rho = vol * std::real(f0[0]);
  c.n = vol * std::real(s.g.mode_ptr(k0)[0]);
  return c;
}

EnergyParts energy_functionals(const KineticState& st, const ScalingRegime& r, const CollisionBackend& b,
                               const DiagnosticsConfig& cfg, bool dissipation) {
  cfg.validate();
  const int s = cfg.s;
  const double eps = r.epsilon, eps2 = eps * eps;
  EnergyParts e;
  const auto lf = ladder_sums(st.f, cfg), lg = ladder_sums(st.g, cfg);
  e.x_part = lf.x + lg.x + sobolev_norm_sq(st.E, s) + sobolev_norm_sq(st.B, s);
  e.v_part = eps2 * (lf.v + lg.v);
  e.H_eps_s = e.x_part + e.v_part;
  e.hv = lf.hv + lg.hv;
  e.mixed_term = eps * (lf.mixed + lg.mixed);

  // field functional of order s - 1
  const auto m = moments(b, st.f, st.g);
  const double sigma = 1.0 / b.rate(1);
  const auto cE = curl(st.E), cB = curl(st.B), cJ = curl(m.jt);
  double em = wdot(st.E, st.E, 0) + wdot(st.B, st.B, 0) - 2.0 * r.alpha * wdot(m.jt, st.E, 0);
  const double eb = r.gamma * r.alpha * r.alpha * sigma / (4.0 * eps2);
  for (int k = 0; k <= s - 2; ++k) {
    em += wdot(cE, cE, k) + wdot(cB, cB, k) - 2.0 * r.alpha * wdot(cJ, cE, k);
    em -= eb * wdot(st.E, cB, k);
  }
  e.em_energy = em;
  e.em_negative = em < 0.0;
  e.H_tilde = cfg.b5 * e.x_part + cfg.b4 * (e.em_energy + e.mixed_term) + eps2 * e.hv;
  if (!dissipation) return e;

  // dissipation bundle
  e.D_lambda = sobolev_norm_sq(st.f, s, NormMode::lambda_mixed) + sobolev_norm_sq(st.g, s, NormMode::lambda_mixed);
  e.D_em = (r.alpha * r.alpha / eps2) * (sobolev_norm_sq(st.E, s - 1) + sobolev_norm_sq(st.B, s - 1));
  e.f_perp = sobolev_norm_sq(minus(st.f, project_P_L(st.f)), s, NormMode::lambda_x);
  e.g_perp = sobolev_norm_sq(minus(st.g, project_P_Lsf(st.g)), s, NormMode::lambda_x);
  e.D_micro = (e.f_perp + e.g_perp) / eps2;
  e.D_eps = e.D_lambda + e.D_em + e.D_micro;
  return e;
}

EquivalenceConstants sample_equivalence(const SpectralGrid& g, const ScalingRegime& r, const CollisionBackend& b,
                                        const DiagnosticsConfig& cfg, int samples, unsigned seed, double amplitude) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  EquivalenceConstants out;
  out.c_l = INFINITY;
  out.c_u = 0.0;
  for (int n = 0; n < samples; ++n) {
    KineticState st(g);
    // random spectral decay rates so that both x- and v-derivatives can dominate
    const double ax = 0.2 + 1.5 * ud(rng), av = 0.2 + 1.5 * ud(rng);
    const double wf = ud(rng), wg = ud(rng), we = ud(rng), wb = ud(rng);
    for (std::size_t k = 0; k < g.nk(); ++k) {
      const double kx = std::sqrt(g.k2(k));
      for (std::size_t h = 0; h < g.nh(); ++h) {
        const auto mi = g.hmulti(h);
        const double w = amplitude * std::exp(-ax * kx - av * (mi[0] + mi[1] + mi[2]));
        st.f.c[k * g.nh() + h] = wf * w * cplx(nd(rng), nd(rng));
        st.g.c[k * g.nh() + h] = wg * w * cplx(nd(rng), nd(rng));
      }
      for (int i = 0; i < 3; ++i) {
        const double w = amplitude * std::exp(-ax * kx);
        st.E.c[i][k] = we * w * cplx(nd(rng), nd(rng));
        st.B.c[i][k] = wb * w * cplx(nd(rng), nd(rng));
      }
    }
    symmetrize(st.f);
    symmetrize(st.g);
    symmetrize(st.E);
    symmetrize(st.B);
    const auto e = energy_functionals(st, r, b, cfg, false);
    if (!(e.H_eps_s > 0.0)) continue;
    const double q = e.H_tilde / e.H_eps_s;
    out.c_l = std::min(out.c_l, q);
    out.c_u = std::max(out.c_u, q);
    ++out.samples;
  }
  return out;
}

VectorField3 jtilde_balance(const KineticState& prev, const KineticState& cur, const ScalingRegime& r,
                            const CollisionBackend& b, double dt, const DistributionField* ng) {
  require_same(prev.grid(), cur.grid(), "jtilde_balance");
  if (!(dt > 0.0)) throw std::invalid_argument("jtilde_balance: dt must be positive");
  const auto& g = cur.grid();
  const double eps = r.epsilon, lam = b.rate(1), sigma = 1.0 / lam;
  const std::size_t nv = g.nv;
  const std::size_t e[3] = {nv * nv, nv, 1};
  VectorField3 res(g);
  for (std::size_t k = 0; k < g.nk(); ++k) {
    const cplx* gc = cur.g.mode_ptr(k);
    const cplx* gp = prev.g.mode_ptr(k);
    const auto kv = g.kvec(k);
    for (int i = 0; i < 3; ++i) {
      cplx flux{};
      for (int l = 0; l < 3; ++l) {
        if (kv[l] == 0.0) continue;
        const cplx vv = i == l ? std::sqrt(2.0) * gc[2 * e[i]] + gc[0] : gc[e[i] + e[l]];
        flux += cplx(0.0, kv[l]) * vv / lam;
      }
      cplx rr = (gc[e[i]] - gp[e[i]]) / (lam * dt) + flux / eps - sigma * r.alpha / (eps * eps) * cur.E.c[i][k] +
                gc[e[i]] / (eps * eps);
      if (ng) rr -= ng->mode_ptr(k)[e[i]] / lam;
      res.c[i][k] = rr;
    }
  }
  return res;
}

LimitRelations limit_relations(const MomentSet& m, const VectorField3& E, const VectorField3& B,
                               const ScalingRegime& r, const TransportCoefficients& c, int s) {
  LimitRelations out;
  const double eps = r.epsilon;
  const auto ohm = ohm_current(m.u, m.n, E, B, c.sigma, r.alpha / eps, r.beta);
  VectorField3 res(m.u.grid);
  for (int i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < res.c[i].size(); ++k) res.c[i][k] = m.j.c[i][k] / eps - ohm.c[i][k];
  out.ohm = norms(res, s);
  out.div_u = norms(div(m.u), s);
  ScalarField rt = m.rho;
  for (std::size_t k = 0; k < rt.c.size(); ++k) rt.c[k] += m.theta.c[k];
  out.rho_theta = norms(rt, s);
  return out;
}

LimitResiduals limit_residuals(const MomentSet& m, const VectorField3& E, const VectorField3& B,
                               const FluidState& fluid, const ScalingRegime& r, const TransportCoefficients& c,
                               int s) {
  require_same(m.u.grid, fluid.grid(), "limit_residuals");
  LimitResiduals out;
  out.rel = limit_relations(m, E, B, r, c, s);
  const auto& g = m.u.grid;
  const std::size_t k0 = g.mode_of({0, 0, 0});
  const auto h = helmholtz_decompose(m.u);
  VectorField3 pu = h.divergence_free_part;
  for (int i = 0; i < 3; ++i) pu.c[i][k0] = m.u.c[i][k0];
  out.u = norms(diff(pu, fluid.u), s);
  ScalarField th(g), dn(g);
  for (std::size_t k = 0; k < g.nk(); ++k) {
    th.c[k] = 0.6 * m.theta.c[k] - 0.4 * m.rho.c[k] - fluid.theta.c[k];
    dn.c[k] = m.n.c[k] - fluid.n.c[k];
  }
  out.theta = norms(th, s);
  out.n = norms(dn, s);
  out.E = norms(diff(E, fluid.E), s);
  out.B = norms(diff(B, fluid.B), s);
  out.E_kin = norms(E, s);
  out.B_kin = norms(B, s);
  return out;
}

ConvergenceReport fit_convergence(const std::vector<double>& eps, const std::vector<double>& errors) {
  if (eps.size() != errors.size()) throw DataError("fit_convergence: eps and error tables differ in length");
  if (eps.size() < 3) throw DataError("fit_convergence: at least three eps values are required");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0.0)) throw DataError("fit_convergence: eps values must be positive");
    if (!(errors[i] > 0.0) || !std::isfinite(errors[i])) {
      std::ostringstream os;
      os.precision(17);
      os << "fit_convergence: error at eps = " << eps[i] << " is not positive (" << errors[i] << ")";
      throw DataError(os.str());
    }
    if (i > 0 && !(eps[i] < eps[i - 1])) throw DataError("fit_convergence: eps values must strictly decrease");
  }
  const std::size_t n = eps.size();
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = std::log(eps[i]), y[i] = std::log(errors[i]);
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) sxx += (x[i] - mx) * (x[i] - mx), sxy += (x[i] - mx) * (y[i] - my);
  ConvergenceReport rep;
  rep.eps = eps;
  rep.errors = errors;
  rep.order = sxy / sxx;
  rep.intercept = my - rep.order * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = y[i] - (rep.intercept + rep.order * x[i]);
    ss += d * d;
  }
  rep.residual = std::sqrt(ss / n);
  return rep;
}

const std::vector<std::string>& record_columns() {
  static const std::vector<std::string> cols = {
      "t",          "step",        "cons_mom_x",  "cons_mom_y",    "cons_mom_z",  "cons_energy", "cons_rho",
      "cons_n",     "cons_B_x",    "cons_B_y",    "cons_B_z",      "H_eps_s",     "H_x",         "H_v",
      "H_tilde",    "em_energy",   "mixed_term",  "hv",            "D_lambda",    "D_em",        "D_micro",
      "D_eps",      "f_perp_lx",   "g_perp_lx",   "gauss_E",       "gauss_B",     "ohm_residual", "div_u",
      "rho_theta",  "jtilde_balance", "em_negative"};
  return cols;
}

std::vector<double> record_values(const DiagnosticRecord& r) {
  const auto& e = r.energy;
  const auto c = r.cons.flat();
  std::vector<double> v = {r.t, static_cast<double>(r.step)};
  v.insert(v.end(), c.begin(), c.end());
  const double rest[] = {e.H_eps_s,   e.x_part,   e.v_part,   e.H_tilde,         e.em_energy,     e.mixed_term,
                         e.hv,        e.D_lambda, e.D_em,     e.D_micro,         e.D_eps,         e.f_perp,
                         e.g_perp,    r.gauss.div_e, r.gauss.div_b, r.rel.ohm.l2, r.rel.div_u.l2, r.rel.rho_theta.l2,
                         r.jtilde_balance, e.em_negative ? 1.0 : 0.0};
  v.insert(v.end(), std::begin(rest), std::end(rest));
  return v;
}

DiagnosticRecord make_record(Integrator& integ, const KineticState& s, long step, const DiagnosticsConfig& cfg,
                             const TransportCoefficients& coeffs, const KineticState* prev, double dt_prev) {
  const auto& r = integ.regime();
  const auto& b = integ.backend();
  DiagnosticRecord rec;
  rec.t = s.t;
  rec.step = step;
  rec.cons = conserved_quantities(s, r);
  rec.energy = energy_functionals(s, r, b, cfg);
  rec.gauss = gauss_residuals(s, r);
  rec.rel = limit_relations(moments(b, s.f, s.g), s.E, s.B, r, coeffs, cfg.s);
  if (prev && dt_prev > 0.0) {
    KineticState n(s.grid());
    integ.explicit_rhs(s, n);
    const auto res = jtilde_balance(*prev, s, r, b, dt_prev, &n.g);
    rec.jtilde_balance = std::sqrt(sobolev_norm_sq(res, 0));
  }
  return rec;
}

}  // namespace vmb
