#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "madelung/profiles.hpp"
#include "madelung/serialize.hpp"

namespace madelung::cli {

// 17 significant digits; inf, -inf and nan spelled out.
std::string format_number(double v);

// Comma-separated table with a fixed header.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  void add_row(const std::vector<double>& values);
  std::string str() const;

 private:
  std::size_t columns_;
  std::string body_;
};

// Writes through a temporary file in the same directory and renames it into place.
void write_atomic(const std::filesystem::path& path, std::string_view content);

std::filesystem::path resolve_out_dir(const std::string& flag);

std::string utc_timestamp();

// r,u,du,rho,omega at the solver nodes.
CsvTable radial_profile_table(const RadialProfile& profile);

// Collects output files and writes the manifest last.
class RunRecorder {
 public:
  RunRecorder(std::string command, std::filesystem::path dir);
  void write(const std::string& name, std::string_view content);
  RunManifest& manifest() { return manifest_; }
  // Fills timing and kernel fields, writes manifest.json and returns its path.
  std::filesystem::path finish();

 private:
  std::filesystem::path dir_;
  RunManifest manifest_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace madelung::cli
