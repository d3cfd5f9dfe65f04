// vmbsim: kinetic and fluid runs, eps-sweeps, collision checks and coefficient tables.
// Exit codes: 0 success, 2 validation, 3 divergence, 4 property-suite failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "vmb/checkpoint.hpp"
#include "vmb/config.hpp"
#include "vmb/integrator.hpp"
#include "vmb/output.hpp"
#include "vmb/runner.hpp"

using namespace vmb;
using nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kValidation = 2, kDivergence = 3, kProperty = 4 };

int fail(const char* kind, const std::string& msg, int code) {
  ordered_json j = {{"error", kind}, {"message", msg}, {"exit_code", code}};
  std::cerr << j.dump() << '\n';
  return code;
}

struct Overrides {
  std::optional<std::string> regime, backend, profile, scheme, out;
  std::optional<double> eps, alpha, beta, gamma, dt, t_end, amplitude, fluid_dt;
  std::optional<int> nx, nv, dx, s, clean_every, samples;
  std::optional<long> cadence;
  std::vector<double> lambda;

  void add(CLI::App* app) {
    app->add_option("--regime", regime, "NSW, NSP, NSF or custom");
    app->add_option("--eps", eps, "Knudsen number");
    app->add_option("--alpha", alpha, "custom regime alpha");
    app->add_option("--beta", beta, "custom regime beta");
    app->add_option("--gamma", gamma, "custom regime gamma");
    app->add_option("--backend", backend, "bgk, spectral-diagonal, spectral-linear");
    app->add_option("--lambda", lambda, "spectral-diagonal rates per degree");
    app->add_option("--profile", profile, "equilibrium, shear-mode, charge-mode, heat-mode, mixed");
    app->add_option("--amplitude", amplitude, "initial amplitude");
    app->add_option("--scheme", scheme, "IMEX1 or IMEX2");
    app->add_option("--dt", dt, "time step");
    app->add_option("--t-end", t_end, "final time");
    app->add_option("--fluid-dt", fluid_dt, "fluid reference time step");
    app->add_option("--nx", nx, "Fourier modes per direction");
    app->add_option("--nv", nv, "Hermite modes per velocity direction");
    app->add_option("--dx", dx, "spatial dimension");
    app->add_option("--s", s, "Sobolev order of the functionals");
    app->add_option("--cadence", cadence, "steps between diagnostic records");
    app->add_option("--clean-every", clean_every, "Gauss cleaning cadence (0 = monitor only)");
    app->add_option("--equivalence-samples", samples, "random states for the equivalence constants");
    app->add_option("--out", out, "output directory");
  }

  void apply(RunConfig& c) const {
    if (regime) c.regime = *regime;
    if (eps) c.epsilon = *eps;
    if (alpha) c.alpha = *alpha;
    if (beta) c.beta = *beta;
    if (gamma) c.gamma = *gamma;
    if (backend) c.backend = *backend;
    if (!lambda.empty()) c.lambda = lambda;
    if (profile) c.profile = *profile;
    if (amplitude) c.amplitude = *amplitude;
    if (scheme) c.scheme = *scheme;
    if (dt) c.dt = *dt;
    if (t_end) c.t_end = *t_end;
    if (fluid_dt) c.fluid_dt = *fluid_dt;
    if (nx) c.grid.nx = *nx;
    if (nv) c.grid.nv = *nv;
    if (dx) c.grid.dx = *dx;
    if (s) c.diag.s = *s;
    if (cadence) c.cadence = *cadence;
    if (clean_every) c.clean_every = *clean_every;
    if (samples) c.equivalence_samples = *samples;
    if (out) c.out_dir = *out;
  }
};

RunConfig load(const std::string& path, const Overrides& ov) {
  RunConfig c = path.empty() ? RunConfig{} : load_config(path);
  ov.apply(c);
  c.validate();
  return c;
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw OutputError("cannot read '" + path + "'");
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

int cmd_report_data(const std::string& dir, const std::string& out) {
  const auto rows = read_csv(dir + "/sweep.csv");
  if (rows.empty()) throw OutputError("empty sweep table in '" + dir + "'");
  std::ifstream in(dir + "/convergence.json");
  if (!in) throw OutputError("cannot read '" + dir + "/convergence.json'");
  const auto conv = nlohmann::ordered_json::parse(in);
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "report-data";
  j["code_version"] = VMB_VERSION;
  j["config_hash"] = conv.value("config_hash", "");
  j["sweep_hash"] = conv.value("sweep_hash", "");
  j["limit_system"] = conv.value("limit_system", "");
  // cells are copied as text so every number stays bit-identical to the table
  j["columns"] = rows.front();
  ordered_json body = ordered_json::array();
  for (std::size_t i = 1; i < rows.size(); ++i) body.push_back(rows[i]);
  j["rows"] = body;
  j["fits"] = conv.value("fits", ordered_json::object());
  j["decreasing"] = conv.value("decreasing", ordered_json::object());
  write_json(out.empty() ? dir + "/report_data.json" : out, j);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-species Vlasov-Maxwell-Boltzmann simulator with fluid-limit references"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(VMB_VERSION));

  std::string config_path, plan_path, sweep_dir, report_out, json_out;
  Overrides ov;
  auto* rk = app.add_subcommand("run-kinetic", "kinetic run: diagnostics.csv, summary.json, final.ckpt");
  rk->add_option("--config", config_path, "JSON config file");
  ov.add(rk);
  auto* rf = app.add_subcommand("run-fluid", "limit-system run: fluid.csv, summary.json");
  rf->add_option("--config", config_path, "JSON config file");
  ov.add(rf);

  auto* sw = app.add_subcommand("sweep", "eps-sweep against the fluid reference");
  std::vector<double> sweep_eps;
  std::optional<int> jobs;
  sw->add_option("--plan", plan_path, "JSON sweep plan (base config plus eps list)");
  sw->add_option("--eps-list", sweep_eps, "strictly decreasing eps values");
  sw->add_option("--jobs", jobs, "concurrent members");
  Overrides sov;
  sov.add(sw);

  std::string backend_name = "bgk";
  std::vector<double> lambda;
  int nv = 12;
  auto* cc = app.add_subcommand("check-collision", "operator property suite of a backend");
  cc->add_option("--backend", backend_name, "bgk, spectral-diagonal, spectral-linear, broken-kernel");
  cc->add_option("--lambda", lambda, "spectral-diagonal rates per degree");
  cc->add_option("--nv", nv, "Hermite modes per direction");
  cc->add_option("--json", json_out, "also write the report as JSON");
  auto* co = app.add_subcommand("coefficients", "transport coefficients (nu, kappa, sigma) as JSON");
  co->add_option("--backend", backend_name, "collision backend");
  co->add_option("--lambda", lambda, "spectral-diagonal rates per degree");
  co->add_option("--nv", nv, "Hermite modes per direction");

  auto* rd = app.add_subcommand("report-data", "collect a sweep directory into report_data.json");
  rd->add_option("--sweep-dir", sweep_dir, "sweep output directory")->required();
  rd->add_option("--out", report_out, "output file (default <sweep-dir>/report_data.json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kValidation;
  }

  try {
    if (*rk) {
      const auto cfg = load(config_path, ov);
      const auto r = run_kinetic(cfg);
      std::cout << r.summary.dump(2) << '\n';
      return kOk;
    }
    if (*rf) {
      const auto cfg = load(config_path, ov);
      const auto r = run_fluid(cfg);
      std::cout << r.summary.dump(2) << '\n';
      return kOk;
    }
    if (*sw) {
      SweepPlan plan = plan_path.empty() ? SweepPlan{} : load_sweep_plan(plan_path);
      sov.apply(plan.base);
      if (!sweep_eps.empty()) plan.eps = sweep_eps;
      if (jobs) plan.jobs = *jobs;
      plan.validate();
      const auto r = run_sweep(plan);
      std::cout << r.report.dump(2) << '\n';
      return kOk;
    }
    if (*cc) {
      const auto b = CollisionBackend::parse(backend_name, lambda);
      const auto props = check_collision(b, nv);
      bool ok = true;
      ordered_json arr = ordered_json::array();
      for (const auto& p : props) {
        std::printf("%s  %s  value=%.3e tol=%.1e%s%s\n", p.passed ? "PASS" : "FAIL", p.name.c_str(), p.value, p.tol,
                    p.detail.empty() ? "" : "  ", p.detail.c_str());
        ok = ok && p.passed;
        arr.push_back({{"name", p.name}, {"passed", p.passed}, {"value", p.value}, {"tol", p.tol}, {"detail", p.detail}});
      }
      if (!json_out.empty()) {
        ordered_json j = {{"schema_version", kSchemaVersion},
                          {"kind", "check-collision"},
                          {"code_version", VMB_VERSION},
                          {"backend", b.name()},
                          {"properties", arr}};
        write_json(json_out, j);
      }
      if (!ok) {
        std::string violated;
        for (const auto& p : props)
          if (!p.passed) violated += (violated.empty() ? "" : "; ") + p.name;
        return fail("property", "violated: " + violated, kProperty);
      }
      return kOk;
    }
    if (*co) {
      const auto b = CollisionBackend::parse(backend_name, lambda);
      const auto c = transport_coefficients(b, nv);
      ordered_json j = {{"schema_version", kSchemaVersion},
                        {"kind", "coefficients"},
                        {"code_version", VMB_VERSION},
                        {"backend", b.name()},
                        {"nv", nv},
                        {"nu", c.nu},
                        {"kappa", c.kappa},
                        {"sigma", c.sigma},
                        {"nu_limit", c.nu_limit}};
      std::cout << j.dump(2) << '\n';
      return kOk;
    }
    if (*rd) return cmd_report_data(sweep_dir, report_out);
  } catch (const DivergenceError& e) {
    return fail("divergence", e.what(), kDivergence);
  } catch (const FluidError& e) {
    return fail("divergence", e.what(), kDivergence);
  } catch (const std::invalid_argument& e) {
    return fail("validation", e.what(), kValidation);
  } catch (const std::exception& e) {
    return fail("runtime", e.what(), 1);
  }
  return kOk;
}
