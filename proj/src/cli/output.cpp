#include "output.hpp"

#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include <fmt/format.h>

#include "madelung/analysis.hpp"
#include "madelung/kernels.hpp"

namespace madelung::cli {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", v);
}

CsvTable::CsvTable(std::vector<std::string> header) : columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) body_ += ',';
    body_ += header[i];
  }
  body_ += '\n';
}

void CsvTable::add_row(const std::vector<double>& values) {
  if (values.size() != columns_) throw std::logic_error("csv row width mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) body_ += ',';
    body_ += format_number(values[i]);
  }
  body_ += '\n';
}

std::string CsvTable::str() const { return body_; }

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::filesystem::path resolve_out_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("MADELUNG_OUT_DIR"); env && *env) return env;
  return ".";
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

CsvTable radial_profile_table(const RadialProfile& profile) {
  CsvTable t({"r", "u", "du", "rho", "omega"});
  const std::vector<double> omega = angular_velocity_at_nodes(profile);
  for (std::size_t j = 0; j < profile.nodes().size(); ++j) {
    t.add_row({profile.nodes()[j], profile.u()[j], profile.du()[j], profile.rho()[j], omega[j]});
  }
  return t;
}

RunRecorder::RunRecorder(std::string command, std::filesystem::path dir)
    : dir_(std::move(dir)), start_(std::chrono::steady_clock::now()) {
  manifest_.command = std::move(command);
  std::filesystem::create_directories(dir_);
}

void RunRecorder::write(const std::string& name, std::string_view content) {
  write_atomic(dir_ / name, content);
  manifest_.outputs.push_back(name);
}

std::filesystem::path RunRecorder::finish() {
  manifest_.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  manifest_.kernels = std::string(kernels::to_string(kernels::active().isa));
  manifest_.created_utc = utc_timestamp();
  const auto path = dir_ / "manifest.json";
  write_atomic(path, json(manifest_).dump(2) + "\n");
  return path;
}

}  // namespace madelung::cli
