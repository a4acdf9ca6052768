#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "madelung/analysis.hpp"
#include "madelung/integrator.hpp"
#include "madelung/params.hpp"
#include "madelung/profiles.hpp"
#include "madelung/residual.hpp"
#include "madelung/sweep.hpp"

// JSON forms with snake_case keys. Non-finite numbers are written as the
// strings "inf", "-inf" and "nan" and read back exactly.
namespace madelung {

using nlohmann::json;

constexpr int kFormatVersion = 1;

json number_to_json(double v);
double number_from_json(const json& j);
json numbers_to_json(const std::vector<double>& v);
std::vector<double> numbers_from_json(const json& j);

struct RunManifest {
  int format_version = kFormatVersion;
  std::string command;
  json parameters = json::object();
  StepControl solver{};
  std::vector<std::string> outputs;
  json residuals = json::object();
  json observables = json::object();
  double wall_clock_seconds = 0.0;
  std::string kernels;
  std::string created_utc;

  friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

void to_json(json& j, const StepControl& v);
void from_json(const json& j, StepControl& v);
void to_json(json& j, const Trajectory& v);
void from_json(const json& j, Trajectory& v);
void to_json(json& j, const Observables& v);
void from_json(const json& j, Observables& v);
void to_json(json& j, const SincLimit& v);
void from_json(const json& j, SincLimit& v);
void to_json(json& j, const GridGeometry& v);
void from_json(const json& j, GridGeometry& v);
void to_json(json& j, const SupportBox& v);
void from_json(const json& j, SupportBox& v);
void to_json(json& j, const ResidualNorms& v);
void from_json(const json& j, ResidualNorms& v);
void to_json(json& j, const FieldSample& v);
void from_json(const json& j, FieldSample& v);
void to_json(json& j, const SweepRow& v);
void from_json(const json& j, SweepRow& v);
void to_json(json& j, const SweepSummary& v);
void from_json(const json& j, SweepSummary& v);
void to_json(json& j, const ConvergenceRow& v);
void from_json(const json& j, ConvergenceRow& v);
void to_json(json& j, const RunManifest& v);
void from_json(const json& j, RunManifest& v);
void to_json(json& j, LaplacianVariant v);
void from_json(const json& j, LaplacianVariant& v);

}  // namespace madelung

// Types without a default constructor.
namespace nlohmann {

template <>
struct adl_serializer<madelung::PhysicalParams> {
  static madelung::PhysicalParams from_json(const json& j);
  static void to_json(json& j, const madelung::PhysicalParams& v);
};
template <>
struct adl_serializer<madelung::AxisProfile> {
  static madelung::AxisProfile from_json(const json& j);
  static void to_json(json& j, const madelung::AxisProfile& v);
};
template <>
struct adl_serializer<madelung::RadialProfile> {
  static madelung::RadialProfile from_json(const json& j);
  static void to_json(json& j, const madelung::RadialProfile& v);
};
// The separable source a grid may carry is not serialized.
template <>
struct adl_serializer<madelung::Grid2D> {
  static madelung::Grid2D from_json(const json& j);
  static void to_json(json& j, const madelung::Grid2D& v);
};

}  // namespace nlohmann
