// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "vmb/config.hpp"
#include "vmb/diagnostics.hpp"
#include "vmb/integrator.hpp"
#include "vmb/runner.hpp"

using namespace vmb;

namespace {

// pinned tolerances
constexpr double kOperatorTol = 1e-12;      // self-adjointness, kernel, orthogonality defects
constexpr double kCoercivityMin = 1.0 - 1e-12;
constexpr double kCoefficientTol = 1e-10;
constexpr double kConservationTol = 1e-8;   // |dQ| / (sqrt|T| ||X0||)
constexpr double kGaussTol = 1e-10;
constexpr double kHTildeTol = 1e-10;        // per-step increase relative to H-tilde(0)
constexpr double kBoundC = 2.0;             // sup_t H / H(0) over every sweep member
constexpr double kOrderMin = 0.8;
constexpr double kMicroSpread = 1.5;        // max / min of f_perp_time / eps within a sweep
constexpr double kImex1Slope = 1.0, kImex1Tol = 0.1;
constexpr double kImex2Slope = 2.0, kImex2Tol = 0.2;
constexpr double kHalvingTol = 0.2;         // |ratio - 2|
constexpr double kFluidDecayTol = 1e-6;

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("%s  [%d] %s  %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

const std::vector<double> kEps = {0.1, 0.05, 0.025, 0.0125};

SweepPlan sweep_plan(const char* regime) {
  SweepPlan p;
  p.base.regime = regime;
  p.base.profile = "mixed";
  p.base.dt = 0.01;
  p.base.t_end = 0.5;
  p.base.cadence = 25;
  p.base.equivalence_samples = 10;
  p.eps = kEps;
  return p;
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void operator_suite() {
  bool ok = true;
  std::string detail;
  for (const auto& b : {CollisionBackend::bgk(), CollisionBackend::spectral_diagonal({1.0, 1.5, 2.0, 2.5})}) {
    for (const auto& p : check_collision(b, 12)) {
      const bool coercive = p.name == "local coercivity";
      const bool good = p.passed && (coercive ? p.value >= kCoercivityMin : p.value <= kOperatorTol);
      if (!good) {
        ok = false;
        detail += b.name() + ": " + p.name + " " + fmt("%.3e; ", p.value);
      }
    }
  }
  report(1, "operator contract suite", ok, ok ? "bgk and spectral-diagonal, all properties" : detail);
}

void coefficients() {
  const auto q = oracle::bgk_coefficients_quadrature();
  const auto c = transport_coefficients(CollisionBackend::bgk(), 12);
  const double d = std::max({std::abs(c.nu - q[0]), std::abs(c.kappa - q[1]), std::abs(c.sigma - q[2]),
                             std::abs(c.nu - 2.0 / 3.0), std::abs(c.kappa - 1.0), std::abs(c.sigma - 1.0)});
  report(2, "transport coefficients", d <= kCoefficientTol,
         fmt("nu=%.15f ", c.nu) + fmt("kappa=%.15f ", c.kappa) + fmt("sigma=%.15f ", c.sigma) +
             fmt("max deviation %.2e", d));
}

void conservation() {
  RunConfig c;
  c.regime = "NSW";
  c.epsilon = 0.1;
  c.profile = "mixed";
  c.amplitude = 1e-3;
  c.dt = 0.05;
  c.t_end = 10.0;
  c.cadence = 40;
  c.equivalence_samples = 0;
  const auto r = run_kinetic(c, false);
  report(3, "conservation over 10 time units (NSW, IMEX2)", r.max_drift <= kConservationTol,
         fmt("max relative drift %.3e", r.max_drift) + fmt(" over %.0f steps", static_cast<double>(r.steps)));
}

void gauss(const std::vector<SweepResult>& sweeps) {
  double cleaned = 0;
  for (const auto& sw : sweeps)
    for (const auto& m : sw.members)
      for (const auto& rec : m.run.records) cleaned = std::max(cleaned, std::max(rec.gauss.div_e, rec.gauss.div_b));

  // monitor-only run, residual every step
  RunConfig c;
  c.regime = "NSW";
  c.epsilon = 0.1;
  c.profile = "mixed";
  auto opt = c.integrator_options();
  opt.clean_every = 0;
  const auto regime = c.scaling();
  Integrator integ(c.grid, c.collision(), regime, opt);
  KineticState s = build_initial_state(make_profile(c.grid, c.profile, c.amplitude), regime);
  std::vector<double> steps, res;
  const long n = 100;
  for (long i = 1; i <= n; ++i) {
    integ.step(s, 0.02);
    const auto g = gauss_residuals(s, regime);
    if (i >= 10) {
      steps.push_back(static_cast<double>(i));
      res.push_back(std::max(std::max(g.div_e, g.div_b), 1e-300));
    }
  }
  const double growth = slope(steps, res);
  const bool ok = cleaned <= kGaussTol && growth < 1.0;
  report(4, "Gauss constraints", ok,
         fmt("cleaned max %.3e", cleaned) + fmt(", uncleaned residual at step 100 %.3e", res.back()) +
             fmt(", growth exponent %.3f", growth));
}

void boundedness(const std::vector<SweepResult>& sweeps) {
  double C = 0, inc = 0;
  for (const auto& sw : sweeps)
    for (const auto& m : sw.members) {
      C = std::max(C, m.run.sup_H_ratio);
      inc = std::max(inc, m.run.h_tilde_max_increase);
    }
  report(5, "eps-uniform boundedness and H-tilde monotonicity", C <= kBoundC && inc <= kHTildeTol,
         fmt("C = %.6f over 3 regimes x 4 eps", C) + fmt(", max H-tilde increase %.3e", inc));
}

void limits(const std::vector<SweepResult>& sweeps, const char* const* names) {
  bool ok = true;
  std::string detail;
  for (std::size_t i = 0; i < sweeps.size(); ++i) {
    const auto& rep = sweeps[i].report;
    detail += std::string(names[i]) + ":";
    for (const auto& [q, f] : rep["fits"].items()) {
      const double order = f.contains("order") ? f["order"].get<double>() : 0.0;
      ok = ok && order >= kOrderMin;
      detail += " " + q + fmt("=%.2f", order);
    }
    for (const auto& [q, d] : rep["decreasing"].items()) {
      if (q == "f_perp_time") continue;
      const bool dec = d["strictly_decreasing"].get<bool>();
      ok = ok && dec;
      detail += " " + q + (dec ? " decreasing" : " NOT decreasing");
    }
    if (i + 1 < sweeps.size()) detail += "; ";
  }
  report(6, "limit convergence", ok, detail);
}

void micro(const std::vector<SweepResult>& sweeps, const char* const* names) {
  bool ok = true;
  std::string detail;
  for (std::size_t i = 0; i < sweeps.size(); ++i) {
    std::vector<double> v, scaled;
    for (const auto& m : sweeps[i].members) {
      v.push_back(m.run.f_perp_time);
      scaled.push_back(m.run.f_perp_time / m.eps);
    }
    bool dec = true;
    for (std::size_t k = 1; k < v.size(); ++k) dec = dec && v[k] < v[k - 1];
    const auto [lo, hi] = std::minmax_element(scaled.begin(), scaled.end());
    const double spread = *hi / *lo;
    ok = ok && dec && spread <= kMicroSpread;
    detail += std::string(names[i]) + (dec ? " decreasing" : " NOT decreasing") + fmt(", scaled in [%.4f, ", *lo) +
              fmt("%.4f]", *hi) + (i + 1 < sweeps.size() ? "; " : "");
  }
  report(7, "microscopic collapse", ok, detail);
}

void oracles() {
  const auto o1 = oracle::imex_order(Scheme::imex1);
  const auto o2 = oracle::imex_order(Scheme::imex2);
  const double ratio = oracle::jtilde_halving_ratio();
  const double heat = oracle::fluid_decay_error("heat"), charge = oracle::fluid_decay_error("charge");
  const bool ok = std::abs(o1.slope - kImex1Slope) <= kImex1Tol && std::abs(o2.slope - kImex2Slope) <= kImex2Tol &&
                  std::abs(ratio - 2.0) <= kHalvingTol && heat <= kFluidDecayTol && charge <= kFluidDecayTol;
  report(8, "manufactured and oracle checks", ok,
         fmt("IMEX1 slope %.3f", o1.slope) + fmt(", IMEX2 slope %.3f", o2.slope) +
             fmt(", j-tilde halving ratio %.3f", ratio) + fmt(", heat decay err %.1e", heat) +
             fmt(", charge decay err %.1e", charge));
}

}  // namespace

int main() {
  static const char* const names[] = {"NSF", "NSP", "NSW"};
  try {
    operator_suite();
    coefficients();
    conservation();
    std::vector<SweepResult> sweeps;
    for (const char* n : names) sweeps.push_back(run_sweep(sweep_plan(n), false));
    gauss(sweeps);
    boundedness(sweeps);
    limits(sweeps, names);
    micro(sweeps, names);
    oracles();
  } catch (const std::exception& e) {
    std::printf("FAIL  acceptance aborted: %s\n", e.what());
    return 1;
  }
  return failures == 0 ? 0 : 1;
}
