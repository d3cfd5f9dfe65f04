#include "vmb/runner.hpp"

#include <cmath>
#include <algorithm>
#include <filesystem>
#include <map>
#include <mutex>
#include <thread>

#include "vmb/checkpoint.hpp"
#include "vmb/integrator.hpp"
#include "vmb/output.hpp"

namespace vmb {

using nlohmann::ordered_json;

namespace {

ordered_json record_json(const DiagnosticRecord& r) {
  ordered_json j;
  const auto& cols = record_columns();
  const auto vals = record_values(r);
  for (std::size_t i = 0; i < cols.size(); ++i) j[cols[i]] = vals[i];
  return j;
}

double perp_sq(const DistributionField& f, bool is_f, int s) {
  DistributionField d = f;
  const auto p = is_f ? project_P_L(f) : project_P_Lsf(f);
  for (std::size_t i = 0; i < d.c.size(); ++i) d.c[i] -= p.c[i];
  return sobolev_norm_sq(d, s, NormMode::lambda_x);
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return true;
}

}  // namespace

KineticRunResult run_kinetic(const RunConfig& cfg, bool write) {
  cfg.validate();
  if (write) prepare_output_dir(cfg.out_dir);
  const auto regime = cfg.scaling();
  const auto backend = cfg.collision();
  const auto coeffs = transport_coefficients(backend, cfg.grid.nv);
  const auto& dc = cfg.diag;
  const double vol = cfg.grid.volume();

  KineticRunResult res;
  const auto data = make_profile(cfg.grid, cfg.profile, cfg.amplitude, cfg.well_prepared);
  KineticState s = build_initial_state(data, regime);
  res.initial = s;
  Integrator integ(cfg.grid, backend, regime, cfg.integrator_options());
  integ.check_cfl(s, cfg.dt);

  std::unique_ptr<CsvWriter> csv;
  if (write) csv = std::make_unique<CsvWriter>(cfg.out_dir + "/diagnostics.csv", record_columns());
  const double x0 = l2_norm(s);
  const double norm0 = std::sqrt(vol) * x0;
  const auto e0 = energy_functionals(s, regime, backend, dc, false);
  const auto c0 = conserved_quantities(s, regime).flat();

  auto record = [&](const KineticState& st, long step, const KineticState* prev, double h) {
    auto rec = make_record(integ, st, step, dc, coeffs, prev, h);
    const auto c = rec.cons.flat();
    for (std::size_t i = 0; i < c.size(); ++i) {
      const double d = std::abs(c[i] - c0[i]);
      const double rel = norm0 > 0.0 ? d / norm0 : d;
      res.drift[i] = std::max(res.drift[i], rel);
      res.max_drift = std::max(res.max_drift, rel);
    }
    res.gauss_max = std::max(res.gauss_max, rec.gauss.div_e);
    if (!res.records.empty()) {
      const auto& pr = res.records.back();
      res.dissipation_integral += 0.5 * (st.t - pr.t) * (pr.energy.D_eps + rec.energy.D_eps);
    }
    if (csv) {
      csv->row(record_values(rec));
      csv->flush();
    }
    res.records.push_back(rec);
  };

  record(s, 0, nullptr, 0.0);
  double h_prev = e0.H_tilde, fp_prev = perp_sq(s.f, true, dc.s), gp_prev = perp_sq(s.g, false, dc.s);
  double fp_int = 0.0, gp_int = 0.0;
  const double tol = 1e-12 * std::max(1.0, cfg.t_end);
  long step = 0;
  KineticState prev;
  while (s.t < cfg.t_end - tol) {
    const double h = std::min(cfg.dt, cfg.t_end - s.t);
    prev = s;
    integ.step(s, h);
    ++step;
    if (cfg.clean_every > 0 && step % cfg.clean_every == 0) enforce_gauss(s, regime, GaussMode::clean);
    const auto e = energy_functionals(s, regime, backend, dc, false);
    if (e0.H_tilde > 0.0) res.h_tilde_max_increase = std::max(res.h_tilde_max_increase, (e.H_tilde - h_prev) / e0.H_tilde);
    if (e0.H_eps_s > 0.0) res.sup_H_ratio = std::max(res.sup_H_ratio, e.H_eps_s / e0.H_eps_s);
    h_prev = e.H_tilde;
    const double fp = perp_sq(s.f, true, dc.s), gp = perp_sq(s.g, false, dc.s);
    fp_int += 0.5 * h * (fp + fp_prev);
    gp_int += 0.5 * h * (gp + gp_prev);
    fp_prev = fp, gp_prev = gp;
    const bool last = !(s.t < cfg.t_end - tol);
    if (step % cfg.cadence == 0 || last) record(s, step, &prev, h);
  }
  res.steps = step;
  res.f_perp_time = std::sqrt(fp_int);
  res.g_perp_time = std::sqrt(gp_int);
  if (cfg.equivalence_samples > 0)
    res.equivalence = sample_equivalence(cfg.grid, regime, backend, dc, cfg.equivalence_samples, cfg.seed);

  ordered_json j = artifact_header(cfg, "run-kinetic");
  j["config"] = cfg.to_json();
  j["sobolev_order_below_theory"] = dc.s < 3;
  j["coefficients"] = {{"nu", coeffs.nu}, {"kappa", coeffs.kappa}, {"sigma", coeffs.sigma}, {"nu_limit", coeffs.nu_limit}};
  j["steps"] = step;
  j["t_final"] = s.t;
  j["initial"] = record_json(res.records.front());
  j["final"] = record_json(res.records.back());
  const char* names[9] = {"mom_x", "mom_y", "mom_z", "energy", "rho", "n", "B_x", "B_y", "B_z"};
  ordered_json dr;
  for (int i = 0; i < 9; ++i) dr[names[i]] = res.drift[i];
  j["conservation_drift"] = dr;
  j["conservation_drift_normalization"] = "|Q(t) - Q(0)| / (sqrt(|T|) ||X(0)||_{L^2})";
  j["max_conservation_drift"] = res.max_drift;
  j["h_tilde_max_increase"] = res.h_tilde_max_increase;
  j["h_tilde_monotone"] = res.h_tilde_max_increase <= 1e-10;
  j["sup_H_ratio"] = res.sup_H_ratio;
  j["dissipation_integral"] = res.dissipation_integral;
  j["f_perp_time"] = res.f_perp_time;
  j["g_perp_time"] = res.g_perp_time;
  j["gauss_max"] = res.gauss_max;
  j["equivalence"] = {{"samples", res.equivalence.samples},
                      {"c_l", res.equivalence.c_l},
                      {"c_u", res.equivalence.c_u},
                      {"weights", {{"b4", dc.b4}, {"b5", dc.b5}, {"c1", dc.c1}, {"w8", dc.w8}}}};
  j["em_negative_seen"] = std::any_of(res.records.begin(), res.records.end(),
                                      [](const DiagnosticRecord& r) { return r.energy.em_negative; });
  res.summary = j;
  res.final_state = s;
  if (write) {
    write_json(cfg.out_dir + "/summary.json", j);
    ordered_json meta = {{"config_hash", cfg.hash()}, {"steps", step}};
    write_checkpoint(cfg.out_dir + "/final.ckpt", s, meta);
  }
  return res;
}

FluidRunResult run_fluid(const RunConfig& cfg, bool write) {
  cfg.validate();
  if (write) prepare_output_dir(cfg.out_dir);
  FluidRunResult res;
  res.coeffs = transport_coefficients(cfg.collision(), cfg.grid.nv);
  const auto fc = cfg.fluid_config(res.coeffs);
  fc.validate();
  const auto data = make_profile(cfg.grid, cfg.profile, cfg.amplitude, cfg.well_prepared);
  FluidState s = fluid_initial(data, fc.tag);
  res.initial = s;
  FluidSolver solver(fc);
  std::unique_ptr<CsvWriter> csv;
  if (write) csv = std::make_unique<CsvWriter>(cfg.out_dir + "/fluid.csv", fluid_columns());
  auto record = [&](const FluidState& st) {
    if (!csv) return;
    const auto e = energy_balance(st, fc);
    csv->row({st.t, e.kinetic, e.thermal, e.charge, e.electromagnetic, e.viscous_dissipation, e.thermal_dissipation,
              e.joule, e.total(), std::sqrt(sobolev_norm_sq(st.u, 0)), std::sqrt(sobolev_norm_sq(st.theta, 0)),
              std::sqrt(sobolev_norm_sq(st.n, 0)), std::sqrt(sobolev_norm_sq(st.E, 0)),
              std::sqrt(sobolev_norm_sq(st.B, 0))});
  };
  record(s);
  const double tol = 1e-12 * std::max(1.0, cfg.t_end);
  long step = 0;
  while (s.t < cfg.t_end - tol) {
    const double h = std::min(fc.dt, cfg.t_end - s.t);
    solver.step(s, h);
    ++step;
    const bool last = !(s.t < cfg.t_end - tol);
    if (step % cfg.cadence == 0 || last) record(s);
  }
  res.steps = step;
  res.final_state = s;
  const auto e0 = energy_balance(res.initial, fc), e1 = energy_balance(s, fc);
  ordered_json j = artifact_header(cfg, "run-fluid");
  j["config"] = cfg.to_json();
  j["limit_system"] = to_string(fc.tag);
  j["coefficients"] = {{"nu_limit", res.coeffs.nu_limit}, {"kappa", res.coeffs.kappa}, {"sigma", res.coeffs.sigma}};
  j["steps"] = step;
  j["t_final"] = s.t;
  j["energy_initial"] = e0.total();
  j["energy_final"] = e1.total();
  res.summary = j;
  if (write) write_json(cfg.out_dir + "/summary.json", j);
  return res;
}

SweepResult run_sweep(const SweepPlan& plan, bool write) {
  plan.validate();
  if (write) prepare_output_dir(plan.base.out_dir);
  const RegimeTag tag = parse_regime_tag(plan.base.regime);
  SweepResult out;
  out.members.resize(plan.eps.size());

  // reference fluid run, shared by every member
  RunConfig fcfg = plan.base;
  fcfg.out_dir = plan.base.out_dir + "/fluid";
  const auto fluid = run_fluid(fcfg, write);

  std::mutex mu;
  std::exception_ptr failure;
  std::size_t next = 0;
  auto worker = [&] {
    for (;;) {
      std::size_t i;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (failure || next >= plan.eps.size()) return;
        i = next++;
      }
      try {
        const RunConfig mc = plan.member(i);
        auto run = run_kinetic(mc, write);
        const auto& fs = run.final_state;
        const auto m = moments(mc.collision(), fs.f, fs.g);
        SweepMember sm;
        sm.eps = plan.eps[i];
        sm.res = limit_residuals(m, fs.E, fs.B, fluid.final_state, mc.scaling(), fluid.coeffs, mc.diag.s);
        sm.run = std::move(run);
        std::lock_guard<std::mutex> lock(mu);
        out.members[i] = std::move(sm);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < plan.jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  std::map<std::string, std::vector<double>> col;
  for (const auto& m : out.members) {
    const auto& r = m.res;
    const auto& k = m.run;
    std::vector<double> row = {m.eps,
                               r.u.l2,
                               r.theta.l2,
                               r.n.l2,
                               r.E.l2,
                               r.B.l2,
                               r.u.hs,
                               r.theta.hs,
                               r.n.hs,
                               r.E.hs,
                               r.B.hs,
                               r.E_kin.l2,
                               r.B_kin.l2,
                               r.rel.ohm.l2,
                               r.rel.div_u.l2,
                               r.rel.rho_theta.l2,
                               k.f_perp_time,
                               k.g_perp_time,
                               k.f_perp_time / m.eps,
                               k.sup_H_ratio,
                               k.dissipation_integral,
                               k.h_tilde_max_increase,
                               k.max_drift,
                               k.equivalence.c_l,
                               k.equivalence.c_u};
    const auto& names = sweep_columns();
    for (std::size_t c = 0; c < names.size(); ++c) col[names[c]].push_back(row[c]);
    out.table.push_back(std::move(row));
  }

  // tracked quantities per limit
  std::vector<std::string> fitted = {"u_err", "theta_err"};
  std::vector<std::string> decreasing = {"f_perp_time"};
  if (tag == RegimeTag::NSF) decreasing.insert(decreasing.end(), {"E_norm", "B_norm"});
  if (tag == RegimeTag::NSP) {
    fitted.push_back("n_err");
    decreasing.insert(decreasing.end(), {"E_err", "B_norm"});
  }
  if (tag == RegimeTag::NSW) {
    fitted.insert(fitted.end(), {"n_err", "E_err", "B_err"});
    decreasing.push_back("ohm_residual");
  }
  ordered_json fits;
  bool all_orders = true;
  for (const auto& q : fitted) {
    ordered_json f;
    try {
      const auto rep = fit_convergence(plan.eps, col[q]);
      f["order"] = rep.order;
      f["residual"] = rep.residual;
      f["errors"] = rep.errors;
      f["passes_0_8"] = rep.order >= 0.8;
      all_orders = all_orders && rep.order >= 0.8;
    } catch (const DataError& e) {
      f["error"] = e.what();
      f["errors"] = col[q];
      all_orders = false;
    }
    fits[q] = f;
  }
  ordered_json dec;
  bool all_dec = true;
  for (const auto& q : decreasing) {
    const bool d = strictly_decreasing(col[q]);
    dec[q] = {{"values", col[q]}, {"strictly_decreasing", d}};
    all_dec = all_dec && d;
  }
  const auto& ms = col["micro_scaled"];
  const auto& sh = col["sup_H_ratio"];
  const double single_c = *std::max_element(sh.begin(), sh.end());
  ordered_json j = artifact_header(plan.base, "sweep");
  j["sweep_hash"] = plan.hash();
  j["plan"] = plan.to_json();
  j["limit_system"] = to_string(tag);
  j["eps"] = plan.eps;
  j["fits"] = fits;
  j["decreasing"] = dec;
  j["micro_scaled"] = {{"values", ms},
                       {"max", *std::max_element(ms.begin(), ms.end())},
                       {"min", *std::min_element(ms.begin(), ms.end())}};
  j["boundedness"] = {{"sup_H_ratio", sh}, {"C", single_c}};
  j["h_tilde_max_increase"] = col["H_tilde_max_increase"];
  j["all_orders_at_least_0_8"] = all_orders;
  j["all_tracked_decreasing"] = all_dec;
  out.report = j;
  if (write) {
    CsvWriter csv(plan.base.out_dir + "/sweep.csv", sweep_columns());
    for (const auto& row : out.table) csv.row(row);
    write_json(plan.base.out_dir + "/convergence.json", j);
  }
  return out;
}

}  // namespace vmb
