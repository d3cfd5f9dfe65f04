#include "vmb/integrator.hpp"

#include <cmath>
#include <sstream>

namespace vmb {

Scheme parse_scheme(const std::string& s) {
  if (s == "IMEX1" || s == "imex1") return Scheme::imex1;
  if (s == "IMEX2" || s == "imex2") return Scheme::imex2;
  throw std::invalid_argument("unknown scheme '" + s + "' (expected IMEX1 or IMEX2)");
}

std::string to_string(Scheme s) { return s == Scheme::imex1 ? "IMEX1" : "IMEX2"; }

Integrator::Integrator(const SpectralGrid& g, const CollisionBackend& b, const ScalingRegime& r,
                       IntegratorOptions opt)
    : grid_(g), backend_(b), regime_(r), opt_(opt), solver_(g, b, r), col_(g, opt.quad_nodes) {
  g.validate();
}

void Integrator::explicit_rhs(const KineticState& s, KineticState& out) {
  if (out.grid() != grid_) out = KineticState(grid_);
  for (int i = 0; i < 3; ++i) {
    std::fill(out.E.c[i].begin(), out.E.c[i].end(), cplx{});
    std::fill(out.B.c[i].begin(), out.B.c[i].end(), cplx{});
  }
  out.t = s.t;
  if (!opt_.lorentz && !opt_.gamma) {
    std::fill(out.f.c.begin(), out.f.c.end(), cplx{});
    std::fill(out.g.c.begin(), out.g.c.end(), cplx{});
    return;
  }
  col_.nonlinear(s.f, s.g, opt_.lorentz ? &s.E : nullptr, opt_.lorentz ? &s.B : nullptr, regime_.alpha,
                 regime_.beta, opt_.gamma, out.f, out.g);
  const double inv = 1.0 / regime_.epsilon;
  for (auto& v : out.f.c) v *= inv;
  for (auto& v : out.g.c) v *= inv;
}

KineticState Integrator::rhs_kinetic(const KineticState& s) {
  KineticState n(grid_), a(grid_);
  explicit_rhs(s, n);
  solver_.apply(s, a);
  axpy(-1.0, a, n);
  return n;
}

namespace {

double sup_bound(const std::vector<cplx>& c) {
  double s = 0.0;
  for (const auto& v : c) s += std::abs(v);
  return s;
}

double sup_bound_dist(const DistributionField& f) {
  double s = 0.0;
  for (std::size_t k = 0; k < f.grid.nk(); ++k) {
    double m = 0.0;
    const cplx* p = f.mode_ptr(k);
    for (std::size_t h = 0; h < f.grid.nh(); ++h) m += std::norm(p[h]);
    s += std::sqrt(m);
  }
  return s;
}

}  // namespace

double Integrator::explicit_rate(const KineticState& s) {
  double e = 0.0, b = 0.0;
  for (int i = 0; i < 3; ++i) {
    e = std::max(e, sup_bound(s.E.c[i]));
    b = std::max(b, sup_bound(s.B.c[i]));
  }
  const double vmax = std::sqrt(4.0 * grid_.nv + 2.0);
  double rate = 0.0;
  if (opt_.lorentz) rate += regime_.alpha * e * vmax + regime_.beta * b * 2.0 * vmax;
  if (opt_.gamma) rate += std::max(sup_bound_dist(s.f), sup_bound_dist(s.g));
  return rate / regime_.epsilon;
}

void Integrator::check_cfl(const KineticState& s, double dt) {
  const double r = explicit_rate(s);
  if (dt * r > opt_.cfl) {
    std::ostringstream os;
    os << "dt = " << dt << " violates the explicit stability bound dt * rate <= " << opt_.cfl << " (rate " << r
       << ")";
    throw CflError(os.str());
  }
}

void Integrator::step(KineticState& s, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
  const double t0 = s.t;
  if (opt_.scheme == Scheme::imex1) {
    KineticState n(grid_);
    explicit_rhs(s, n);
    axpy(dt, n, s);
    solver_.solve(dt, s);
  } else {
    const double a = 0.25 * dt, c = dt / 3.0;
    KineticState n1(grid_), n2(grid_), n3(grid_);
    // stage 1
    KineticState y1 = s;
    solver_.solve(a, y1);
    KineticState k1 = s;  // A Y1 = (rhs - Y1) / a
    axpy(-1.0, y1, k1);
    explicit_rhs(y1, n1);
    // stage 2
    KineticState r2 = s;
    axpy(0.5 * dt, n1, r2);
    KineticState y2 = r2;
    solver_.solve(a, y2);
    KineticState k2 = r2;
    axpy(-1.0, y2, k2);
    explicit_rhs(y2, n2);
    // stage 3: rhs = X + dt (N1 + N2)/2 - dt (A Y1 + A Y2)/3
    KineticState y3 = s;
    axpy(0.5 * dt, n1, y3);
    axpy(0.5 * dt, n2, y3);
    axpy(-dt / (3.0 * a), k1, y3);
    axpy(-dt / (3.0 * a), k2, y3);
    solver_.solve(c, y3);
    explicit_rhs(y3, n3);
    // X^{n+1} = Y3 + dt (-N1/6 - N2/6 + N3/3)
    axpy(-dt / 6.0, n1, y3);
    axpy(-dt / 6.0, n2, y3);
    axpy(dt / 3.0, n3, y3);
    s = std::move(y3);
  }
  s.t = t0 + dt;
  const auto bad = first_nonfinite(s);
  if (!bad.empty()) throw DivergenceError(s.t, bad);
}

RunResult run(Integrator& integ, KineticState state, double t_end, double dt, long cadence, const Observer& obs) {
  if (!(dt > 0.0)) throw std::invalid_argument("run: dt must be positive");
  if (t_end < state.t) throw std::invalid_argument("run: t_end precedes the initial time");
  if (cadence < 1) cadence = 1;
  RunResult res;
  const auto& opt = integ.options();
  if (obs) obs(state, 0);
  const double tol = 1e-12 * std::max(1.0, std::abs(t_end));
  long step = 0;
  while (state.t < t_end - tol) {
    const double h = std::min(dt, t_end - state.t);
    integ.step(state, h);
    ++step;
    if (opt.clean_every > 0 && step % opt.clean_every == 0) enforce_gauss(state, integ.regime(), GaussMode::clean);
    const bool last = !(state.t < t_end - tol);
    if (obs && (step % cadence == 0 || last)) obs(state, step);
  }
  res.steps = step;
  res.final_state = std::move(state);
  return res;
}

}  // namespace vmb
