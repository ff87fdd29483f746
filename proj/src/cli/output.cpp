#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "jscatter/cli.hpp"

namespace jscatter::cli {

std::string format_number(double x, int precision) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // no "-0"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, x);
  return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> header, int precision) : header_(std::move(header)), precision_(precision) {
  for (size_t i = 0; i < header_.size(); ++i) {
    if (i) buf_ += ',';
    buf_ += header_[i];
  }
  buf_ += '\n';
}

CsvWriter& CsvWriter::cell(double x) { return cell(format_number(x, precision_)); }

CsvWriter& CsvWriter::cell(long long x) { return cell(std::to_string(x)); }

CsvWriter& CsvWriter::cell(bool b) { return cell(std::string(b ? "true" : "false")); }

CsvWriter& CsvWriter::cell(const std::string& s) {
  if (cells_++) row_ += ',';
  row_ += s;
  return *this;
}

void CsvWriter::end_row() {
  if (cells_ != header_.size())
    throw IoError("CsvWriter: row has " + std::to_string(cells_) + " cells, header has " +
                  std::to_string(header_.size()));
  buf_ += row_;
  buf_ += '\n';
  row_.clear();
  cells_ = 0;
}

void CsvWriter::write(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << buf_;
  if (!out) throw IoError("write to '" + path + "' failed");
}

void write_manifest(const Manifest& m, const std::string& path) {
  nlohmann::json j;
  j["command"] = m.command;
  j["version"] = JSCATTER_VERSION;
  j["config"] = m.config;
  j["status"] = m.status;
  if (m.error_kind) {
    j["error"] = {{"kind", *m.error_kind}, {"message", m.error_message.value_or("")},
                  {"stage", m.error_stage.value_or("")}};
  }
  j["warnings"] = m.warnings;
  j["outputs"] = m.outputs;
  j["wall_time_seconds"] = m.wall_time_seconds;
  j["summary"] = m.summary;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace jscatter::cli
