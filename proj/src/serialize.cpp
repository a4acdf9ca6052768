#include "madelung/serialize.hpp"

#include <cmath>
#include <limits>

#include "madelung/errors.hpp"

namespace madelung {

json number_to_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double number_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw ValidationError("json", "expected a number, \"inf\", \"-inf\" or \"nan\"");
}

json numbers_to_json(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(number_to_json(x));
  return a;
}

std::vector<double> numbers_from_json(const json& j) {
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(number_from_json(x));
  return out;
}

namespace {

double num(const json& j, const char* key) { return number_from_json(j.at(key)); }

}  // namespace

void to_json(json& j, LaplacianVariant v) { j = std::string(to_string(v)); }
void from_json(const json& j, LaplacianVariant& v) {
  v = parse_variant(j.get<std::string>());
}

void to_json(json& j, const StepControl& v) {
  j = json{{"rel_tol", v.rel_tol},
           {"abs_tol", v.abs_tol},
           {"h_init", v.h_init},
           {"h_min", v.h_min},
           {"blowup_threshold",
            v.blowup_threshold ? number_to_json(*v.blowup_threshold) : json(nullptr)},
           {"max_steps", v.max_steps}};
}
void from_json(const json& j, StepControl& v) {
  v.rel_tol = num(j, "rel_tol");
  v.abs_tol = num(j, "abs_tol");
  v.h_init = num(j, "h_init");
  v.h_min = num(j, "h_min");
  const json& t = j.at("blowup_threshold");
  v.blowup_threshold = t.is_null() ? std::nullopt : std::optional(number_from_json(t));
  v.max_steps = j.at("max_steps").get<std::size_t>();
  v.validate();
}

void to_json(json& j, const Trajectory& v) {
  json states = json::array();
  for (const auto& s : v.states) states.push_back(numbers_to_json(s));
  j = json{{"nodes", numbers_to_json(v.nodes)},
           {"states", states},
           {"stop_reason", std::string(to_string(v.stop_reason))}};
}
void from_json(const json& j, Trajectory& v) {
  v.nodes = numbers_from_json(j.at("nodes"));
  v.states.clear();
  for (const auto& s : j.at("states")) v.states.push_back(numbers_from_json(s));
  if (v.states.size() != v.nodes.size()) throw ValidationError("states", "length mismatch");
  const auto reason = j.at("stop_reason").get<std::string>();
  for (auto r : {StopReason::reached_end, StopReason::blowup_detected, StopReason::step_underflow,
                 StopReason::max_steps}) {
    if (to_string(r) == reason) {
      v.stop_reason = r;
      return;
    }
  }
  throw ValidationError("stop_reason", "unknown value " + reason);
}

void to_json(json& j, const Observables& v) {
  j = json{{"z", number_to_json(v.z)},
           {"log_z", number_to_json(v.log_z)},
           {"u_bar", v.u_bar},
           {"k_bar", v.k_bar},
           {"k_bar_quadrature", v.k_bar_quadrature},
           {"entropy", v.entropy},
           {"r2_bar", v.r2_bar},
           {"energy", v.energy},
           {"r_m", number_to_json(v.r_m)}};
}
void from_json(const json& j, Observables& v) {
  v.z = num(j, "z");
  v.log_z = num(j, "log_z");
  v.u_bar = num(j, "u_bar");
  v.k_bar = num(j, "k_bar");
  v.k_bar_quadrature = num(j, "k_bar_quadrature");
  v.entropy = num(j, "entropy");
  v.r2_bar = num(j, "r2_bar");
  v.energy = num(j, "energy");
  v.r_m = num(j, "r_m");
  v.validate();
}

void to_json(json& j, const SincLimit& v) {
  j = json{{"k", v.k}, {"r_inf", v.r_inf}, {"a", v.a}, {"s0", v.s0}, {"energy", v.energy}};
}
void from_json(const json& j, SincLimit& v) {
  v.k = num(j, "k");
  v.r_inf = num(j, "r_inf");
  v.a = num(j, "a");
  v.s0 = num(j, "s0");
  v.energy = num(j, "energy");
  v.validate();
}

void to_json(json& j, const GridGeometry& v) {
  j = json{{"h", v.h}, {"origin_x", v.origin_x}, {"origin_y", v.origin_y}, {"nx", v.nx},
           {"ny", v.ny}};
}
void from_json(const json& j, GridGeometry& v) {
  v.h = num(j, "h");
  v.origin_x = num(j, "origin_x");
  v.origin_y = num(j, "origin_y");
  v.nx = j.at("nx").get<std::size_t>();
  v.ny = j.at("ny").get<std::size_t>();
}

void to_json(json& j, const SupportBox& v) {
  j = json{{"half_x", number_to_json(v.half_x)},
           {"half_y", number_to_json(v.half_y)},
           {"theta", v.theta}};
}
void from_json(const json& j, SupportBox& v) {
  v.half_x = num(j, "half_x");
  v.half_y = num(j, "half_y");
  v.theta = num(j, "theta");
}

void to_json(json& j, const ResidualNorms& v) {
  j = json{{"pde_abs", v.pde_abs},
           {"pde_scaled", v.pde_scaled},
           {"self_consistency", v.self_consistency},
           {"samples", v.samples},
           {"h", v.h}};
}
void from_json(const json& j, ResidualNorms& v) {
  v.pde_abs = num(j, "pde_abs");
  v.pde_scaled = num(j, "pde_scaled");
  v.self_consistency = num(j, "self_consistency");
  v.samples = j.at("samples").get<std::size_t>();
  v.h = num(j, "h");
}

void to_json(json& j, const FieldSample& v) {
  j = json{{"x", v.x},
           {"y", v.y},
           {"omega", number_to_json(v.omega)},
           {"vx", number_to_json(v.vx)},
           {"vy", number_to_json(v.vy)},
           {"stationarity_residual", number_to_json(v.stationarity_residual)},
           {"in_support", v.in_support}};
}
void from_json(const json& j, FieldSample& v) {
  v.x = num(j, "x");
  v.y = num(j, "y");
  v.omega = num(j, "omega");
  v.vx = num(j, "vx");
  v.vy = num(j, "vy");
  v.stationarity_residual = num(j, "stationarity_residual");
  v.in_support = j.at("in_support").get<bool>();
}

void to_json(json& j, const SweepRow& v) {
  j = json{{"beta", v.beta},
           {"u0", v.u0},
           {"ok", v.ok},
           {"error", v.error},
           {"r_m", number_to_json(v.r_m)},
           {"r2_bar", number_to_json(v.r2_bar)},
           {"z", number_to_json(v.z)},
           {"log_z", number_to_json(v.log_z)},
           {"u_bar", number_to_json(v.u_bar)},
           {"k_bar_quadrature", number_to_json(v.k_bar_quadrature)},
           {"k_bar_closed_form", number_to_json(v.k_bar_closed_form)},
           {"energy", number_to_json(v.energy)},
           {"entropy", number_to_json(v.entropy)}};
}
void from_json(const json& j, SweepRow& v) {
  v.beta = num(j, "beta");
  v.u0 = num(j, "u0");
  v.ok = j.at("ok").get<bool>();
  v.error = j.at("error").get<std::string>();
  v.r_m = num(j, "r_m");
  v.r2_bar = num(j, "r2_bar");
  v.z = num(j, "z");
  v.log_z = num(j, "log_z");
  v.u_bar = num(j, "u_bar");
  v.k_bar_quadrature = num(j, "k_bar_quadrature");
  v.k_bar_closed_form = num(j, "k_bar_closed_form");
  v.energy = num(j, "energy");
  v.entropy = num(j, "entropy");
}

void to_json(json& j, const SweepSummary& v) {
  j = json{{"r_m_nondecreasing", v.r_m_nondecreasing},
           {"r2_bar_nondecreasing", v.r2_bar_nondecreasing},
           {"k_bar_strictly_decreasing", v.k_bar_strictly_decreasing},
           {"u_bar_nonincreasing", v.u_bar_nonincreasing},
           {"r_m_flattening", v.r_m_flattening},
           {"r2_bar_flattening", v.r2_bar_flattening},
           {"failed_rows", v.failed_rows}};
}
void from_json(const json& j, SweepSummary& v) {
  v.r_m_nondecreasing = j.at("r_m_nondecreasing").get<bool>();
  v.r2_bar_nondecreasing = j.at("r2_bar_nondecreasing").get<bool>();
  v.k_bar_strictly_decreasing = j.at("k_bar_strictly_decreasing").get<bool>();
  v.u_bar_nonincreasing = j.at("u_bar_nonincreasing").get<bool>();
  v.r_m_flattening = j.at("r_m_flattening").get<bool>();
  v.r2_bar_flattening = j.at("r2_bar_flattening").get<bool>();
  v.failed_rows = j.at("failed_rows").get<std::size_t>();
}

void to_json(json& j, const ConvergenceRow& v) {
  j = json{{"beta", v.beta}, {"r_m", v.r_m}, {"sup_distance", v.sup_distance}};
}
void from_json(const json& j, ConvergenceRow& v) {
  v.beta = num(j, "beta");
  v.r_m = num(j, "r_m");
  v.sup_distance = num(j, "sup_distance");
}

void to_json(json& j, const RunManifest& v) {
  j = json{{"format_version", v.format_version},
           {"command", v.command},
           {"parameters", v.parameters},
           {"solver", v.solver},
           {"outputs", v.outputs},
           {"residuals", v.residuals},
           {"observables", v.observables},
           {"wall_clock_seconds", v.wall_clock_seconds},
           {"kernels", v.kernels},
           {"created_utc", v.created_utc}};
}
void from_json(const json& j, RunManifest& v) {
  v.format_version = j.at("format_version").get<int>();
  v.command = j.at("command").get<std::string>();
  v.parameters = j.at("parameters");
  v.solver = j.at("solver").get<StepControl>();
  v.outputs = j.at("outputs").get<std::vector<std::string>>();
  v.residuals = j.at("residuals");
  v.observables = j.at("observables");
  v.wall_clock_seconds = num(j, "wall_clock_seconds");
  v.kernels = j.at("kernels").get<std::string>();
  v.created_utc = j.at("created_utc").get<std::string>();
}

}  // namespace madelung

namespace nlohmann {

using madelung::number_from_json;
using madelung::number_to_json;

madelung::PhysicalParams adl_serializer<madelung::PhysicalParams>::from_json(const json& j) {
  madelung::PhysicalParams p(number_from_json(j.at("mass")), number_from_json(j.at("hbar")),
                             number_from_json(j.at("beta")),
                             j.at("laplacian_variant").get<madelung::LaplacianVariant>());
  if (j.contains("lambda_sq") && number_from_json(j.at("lambda_sq")) != p.lambda_sq()) {
    throw madelung::ValidationError("lambda_sq", "inconsistent with mass, hbar and beta");
  }
  return p;
}
void adl_serializer<madelung::PhysicalParams>::to_json(json& j, const madelung::PhysicalParams& v) {
  j = json{{"mass", v.mass()},
           {"hbar", v.hbar()},
           {"beta", v.beta()},
           {"lambda_sq", v.lambda_sq()},
           {"laplacian_variant", v.variant()}};
}

madelung::AxisProfile adl_serializer<madelung::AxisProfile>::from_json(const json& j) {
  madelung::AxisProfile p(j.at("params").get<madelung::PhysicalParams>(),
                          madelung::numbers_from_json(j.at("nodes")),
                          madelung::numbers_from_json(j.at("u")),
                          madelung::numbers_from_json(j.at("du")),
                          number_from_json(j.at("half_width")),
                          j.at("extrapolated").get<bool>());
  return p;
}
void adl_serializer<madelung::AxisProfile>::to_json(json& j, const madelung::AxisProfile& v) {
  j = json{{"params", v.params()},
           {"nodes", madelung::numbers_to_json(v.nodes())},
           {"u", madelung::numbers_to_json(v.u())},
           {"du", madelung::numbers_to_json(v.du())},
           {"u0", v.u0()},
           {"half_width", number_to_json(v.half_width())},
           {"extrapolated", v.extrapolated()}};
}

madelung::RadialProfile adl_serializer<madelung::RadialProfile>::from_json(const json& j) {
  return madelung::RadialProfile(
      j.at("params").get<madelung::PhysicalParams>(), madelung::numbers_from_json(j.at("nodes")),
      madelung::numbers_from_json(j.at("u")), madelung::numbers_from_json(j.at("du")),
      madelung::numbers_from_json(j.at("rho")), number_from_json(j.at("z")),
      number_from_json(j.at("log_z")), number_from_json(j.at("r_m")));
}
void adl_serializer<madelung::RadialProfile>::to_json(json& j,
                                                      const madelung::RadialProfile& v) {
  j = json{{"params", v.params()},
           {"nodes", madelung::numbers_to_json(v.nodes())},
           {"u", madelung::numbers_to_json(v.u())},
           {"du", madelung::numbers_to_json(v.du())},
           {"rho", madelung::numbers_to_json(v.rho())},
           {"u0", v.u0()},
           {"z", number_to_json(v.z())},
           {"log_z", number_to_json(v.log_z())},
           {"r_m", number_to_json(v.r_m())}};
}

madelung::Grid2D adl_serializer<madelung::Grid2D>::from_json(const json& j) {
  return madelung::Grid2D(j.at("params").get<madelung::PhysicalParams>(),
                          j.at("geometry").get<madelung::GridGeometry>(),
                          j.at("support").get<madelung::SupportBox>(),
                          madelung::numbers_from_json(j.at("u")),
                          madelung::numbers_from_json(j.at("rho")));
}
void adl_serializer<madelung::Grid2D>::to_json(json& j, const madelung::Grid2D& v) {
  j = json{{"params", v.params()},
           {"geometry", v.geometry()},
           {"support", v.support()},
           {"u", madelung::numbers_to_json(v.u())},
           {"rho", madelung::numbers_to_json(v.rho())}};
}

}  // namespace nlohmann
