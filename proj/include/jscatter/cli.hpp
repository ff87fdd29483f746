#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "jscatter/model.hpp"
#include "jscatter/wavefield.hpp"

namespace jscatter::cli {

enum ExitCode : int { ok = 0, config_error = 2, numerical_failure = 3, acceptance_failure = 4 };

struct ConvergenceSettings {
  std::vector<int> N_values{100, 1000, 10000};
  std::optional<Window> window;
};

struct RunConfig {
  PhysicalParams physical;  // energy filled per sweep point
  RegularizationParams regularization;
  std::vector<double> sigma;
  int N = 120;
  PotentialSpec potential;
  std::string directory = "jscatter_out";
  int precision = 17;
  ConvergenceSettings convergence;
  nlohmann::json raw;
};

// Throws ConfigError on malformed input or unknown keys.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

// Parameter checks for every sweep point; throws the model's domain errors.
std::vector<DerivedParams> validate(const RunConfig& cfg, Warnings* warnings);

// --- output ------------------------------------------------------------------

std::string format_number(double x, int precision);

class CsvWriter {
 public:
  CsvWriter(std::vector<std::string> header, int precision);
  CsvWriter& cell(double x);
  CsvWriter& cell(long long x);
  CsvWriter& cell(int x) { return cell(static_cast<long long>(x)); }
  CsvWriter& cell(const std::string& s);
  CsvWriter& cell(bool b);
  void end_row();
  std::string str() const { return buf_; }
  // Throws IoError.
  void write(const std::string& path) const;

 private:
  std::vector<std::string> header_;
  int precision_;
  std::string buf_;
  std::string row_;
  size_t cells_ = 0;
};

struct Manifest {
  std::string command;
  nlohmann::json config;
  std::string status = "ok";
  std::optional<std::string> error_kind;
  std::optional<std::string> error_message;
  std::optional<std::string> error_stage;
  Warnings warnings;
  std::vector<std::string> outputs;
  double wall_time_seconds = 0.0;
  nlohmann::json summary = nlohmann::json::object();
};

void write_manifest(const Manifest& m, const std::string& path);

// --- commands ----------------------------------------------------------------

struct RunOptions {
  int jobs = 0;  // 0: hardware concurrency
  std::optional<std::string> out_dir;
};

const std::vector<std::string>& command_names();

// Returns the process exit code; diagnostics go to `log`.
int run(const std::string& command, const std::string& config_path, const RunOptions& opt, std::ostream& log);

}  // namespace jscatter::cli
