#pragma once
// CSV time series (fixed column order, %.17g) and JSON summaries with a schema version.

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "vmb/config.hpp"

namespace vmb {

inline constexpr int kSchemaVersion = 1;

struct OutputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& columns);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;
  void row(const std::vector<double>& values);
  void flush();

 private:
  std::FILE* fp_ = nullptr;
  std::size_t ncol_;
  std::string path_;
};

// Shortest text that reads back to the same double (17 significant digits).
std::string format_double(double v);

// Creates the directory (and parents) and checks that a file can be written there.
void prepare_output_dir(const std::string& dir);

// schema_version, code version, config hash, grid, regime and backend of a run
nlohmann::ordered_json artifact_header(const RunConfig& cfg, const std::string& kind);

void write_json(const std::string& path, const nlohmann::ordered_json& j);

// Columns of the fluid time series and of the per-eps sweep table.
const std::vector<std::string>& fluid_columns();
const std::vector<std::string>& sweep_columns();

}  // namespace vmb
