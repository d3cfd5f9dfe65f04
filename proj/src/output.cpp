#include "vmb/output.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

namespace vmb {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns)
    : ncol_(columns.size()), path_(path) {
  fp_ = std::fopen(path.c_str(), "w");
  if (!fp_) throw OutputError("cannot write '" + path + "'");
  for (std::size_t i = 0; i < columns.size(); ++i) std::fprintf(fp_, "%s%s", i ? "," : "", columns[i].c_str());
  std::fputc('\n', fp_);
}

CsvWriter::~CsvWriter() {
  if (fp_) std::fclose(fp_);
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != ncol_) throw OutputError("csv row width differs from the header in '" + path_ + "'");
  for (std::size_t i = 0; i < values.size(); ++i)
    std::fprintf(fp_, "%s%s", i ? "," : "", format_double(values[i]).c_str());
  std::fputc('\n', fp_);
}

void CsvWriter::flush() { std::fflush(fp_); }

void prepare_output_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("output dir '" + dir + "' cannot be created: " + ec.message());
  const auto probe = std::filesystem::path(dir) / ".write_probe";
  {
    std::ofstream o(probe);
    if (!o) throw ConfigError("output dir '" + dir + "' is not writable");
  }
  std::filesystem::remove(probe, ec);
}

nlohmann::ordered_json artifact_header(const RunConfig& cfg, const std::string& kind) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = kind;
  j["code_version"] = VMB_VERSION;
  j["config_hash"] = cfg.hash();
  j["grid"] = {{"dx", cfg.grid.dx}, {"nx", cfg.grid.nx}, {"nv", cfg.grid.nv}, {"lx", cfg.grid.lx}};
  nlohmann::ordered_json reg;
  reg["tag"] = cfg.regime;
  try {
    const auto r = cfg.scaling();
    reg["epsilon"] = r.epsilon;
    reg["alpha"] = r.alpha;
    reg["beta"] = r.beta;
    reg["gamma"] = r.gamma;
  } catch (const std::exception&) {
    reg["epsilon"] = cfg.epsilon;
  }
  j["regime"] = reg;
  j["backend"] = cfg.backend;
  return j;
}

void write_json(const std::string& path, const nlohmann::ordered_json& j) {
  std::ofstream o(path, std::ios::trunc);
  if (!o) throw OutputError("cannot write '" + path + "'");
  o << j.dump(2) << '\n';
  if (!o) throw OutputError("write failed for '" + path + "'");
}

const std::vector<std::string>& fluid_columns() {
  static const std::vector<std::string> cols = {
      "t",     "kinetic", "thermal", "charge", "electromagnetic", "viscous_dissipation", "thermal_dissipation",
      "joule", "total",   "u_l2",    "theta_l2", "n_l2",          "E_l2",                "B_l2"};
  return cols;
}

const std::vector<std::string>& sweep_columns() {
  static const std::vector<std::string> cols = {
      "eps",       "u_err",      "theta_err",  "n_err",        "E_err",         "B_err",
      "u_err_hs",  "theta_err_hs", "n_err_hs", "E_err_hs",     "B_err_hs",      "E_norm",
      "B_norm",    "ohm_residual", "div_u",    "rho_theta",    "f_perp_time",   "g_perp_time",
      "micro_scaled", "sup_H_ratio", "dissipation_integral", "H_tilde_max_increase", "max_conservation_drift",
      "c_l",       "c_u"};
  return cols;
}

}  // namespace vmb
