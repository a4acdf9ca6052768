#include "madelung/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "madelung/errors.hpp"

namespace madelung {

namespace {

constexpr double kSpanLengths = 1e3;
constexpr double kMinResolvedMargin = 1e-9;

double natural_length(const PhysicalParams& p, double u0) {
  return p.hbar() / std::sqrt(p.mass() * u0);
}

struct HalfLineSolution {
  std::vector<double> nodes, u, du;
  double support;
};

HalfLineSolution integrate_half_line(const SolveRequest& req, double c) {
  const PhysicalParams& p = req.params;
  const double u0 = req.u0;
  const OdeSystem sys = potential_system(p, c);

  StepControl control = req.control;
  if (!control.blowup_threshold) control.blowup_threshold = default_blowup_threshold(p, u0);
  if (!(*control.blowup_threshold > u0)) {
    throw ValidationError("blowup_threshold", "must exceed u0");
  }
  // Past this the density cut-off is lost in the rounding of U.
  if (*control.blowup_threshold - u0 < kMinResolvedMargin * u0) {
    throw SolverError("beta too large: U rises by less than 1e-9 u0 before the density cut-off",
                      Trajectory{});
  }

  const double lambda = std::sqrt(p.lambda_sq());
  const double span_end =
      kSpanLengths * std::max(natural_length(p, u0), 1.0 / lambda);

  double t0 = 0.0;
  State y0{u0, 0.0};
  if (c != 0.0) {
    const OriginSeries s = origin_series(p, u0, c);
    t0 = series_switch_point(p, u0);
    y0 = series_start(sys, y0, [&](double t) {
      const double t2 = t * t;
      return State{u0 + s.a * t2 + s.b * t2 * t2, 2.0 * s.a * t + 4.0 * s.b * t2 * t};
    }, t0);
  }
  if (!(y0[0] < *control.blowup_threshold)) {
    throw SolverError("series start already beyond the blow-up threshold (beta too small)",
                      Trajectory{});
  }

  Trajectory traj = integrate(sys, y0, {t0, span_end}, control, std::size_t{0});
  if (!in_blowup_state(traj, p)) {
    const std::string why = "integration stopped before blow-up (" +
                            std::string(to_string(traj.stop_reason)) + ")";
    throw SolverError(why, std::move(traj));
  }
  const double support = estimate_support(traj, p);

  HalfLineSolution out;
  out.support = support;
  const std::size_t n = traj.size() + (c != 0.0 ? 1 : 0);
  out.nodes.reserve(n);
  out.u.reserve(n);
  out.du.reserve(n);
  if (c != 0.0) {
    out.nodes.push_back(0.0);
    out.u.push_back(u0);
    out.du.push_back(0.0);
  }
  for (std::size_t i = 0; i < traj.size(); ++i) {
    out.nodes.push_back(traj.nodes[i]);
    out.u.push_back(traj.states[i][0]);
    out.du.push_back(traj.states[i][1]);
  }
  return out;
}

}  // namespace

void SolveRequest::validate() const {
  if (!(u0 >= 0.0) || !std::isfinite(u0)) {
    throw ValidationError("u0", "must be a nonnegative finite number");
  }
  control.validate();
}

SolveRequest radial_request(const PhysicalParams& params, double u0) {
  return SolveRequest{params, u0, StepControl{}, Geometry::radial};
}

SolveRequest cartesian_request(const PhysicalParams& params, double u0) {
  return SolveRequest{params, u0, StepControl{}, Geometry::cartesian_factor};
}

double default_blowup_threshold(const PhysicalParams& params, double u0) {
  return u0 + kBlowupMargin / params.beta();
}

double series_switch_point(const PhysicalParams& params, double u0) {
  const double inv_lambda = 1.0 / std::sqrt(params.lambda_sq());
  return 1e-4 * std::min(natural_length(params, u0), inv_lambda);
}

OriginSeries origin_series(const PhysicalParams& params, double u0, double c) {
  const double l2 = params.lambda_sq();
  const double a = l2 * u0 / (2.0 * (1.0 + c));
  const double b = (2.0 * params.beta() * a * a + l2 * a) / (12.0 + 4.0 * c);
  return {a, b};
}

OdeSystem potential_system(const PhysicalParams& params, double c) {
  const double half_beta = 0.5 * params.beta();
  const double l2 = params.lambda_sq();
  OdeSystem sys;
  sys.dimension = 2;
  sys.singular_origin = c != 0.0;
  sys.rhs = [half_beta, l2, c](double r, std::span<const double> y, std::span<double> dy) {
    dy[0] = y[1];
    dy[1] = half_beta * y[1] * y[1] + l2 * y[0] - (c == 0.0 ? 0.0 : (c / r) * y[1]);
  };
  return sys;
}

AxisProfile solve_cartesian_factor(const SolveRequest& req) {
  req.validate();
  if (req.geometry != Geometry::cartesian_factor) {
    throw ValidationError("geometry", "solve_cartesian_factor needs cartesian-factor geometry");
  }
  if (req.u0 == 0.0) {
    return AxisProfile(req.params, {0.0}, {0.0}, {0.0},
                       std::numeric_limits<double>::infinity(), false);
  }
  HalfLineSolution s = integrate_half_line(req, 0.0);
  const bool extrapolated = s.support > s.nodes.back();
  return AxisProfile(req.params, std::move(s.nodes), std::move(s.u), std::move(s.du), s.support,
                     extrapolated);
}

RadialProfile solve_radial(const SolveRequest& req) {
  req.validate();
  if (req.geometry != Geometry::radial) {
    throw ValidationError("geometry", "solve_radial needs radial geometry");
  }
  if (req.u0 == 0.0) return RadialProfile::unsupported(req.params);
  HalfLineSolution s = integrate_half_line(req, req.params.radial_coefficient());
  return RadialProfile::from_potential(req.params, std::move(s.nodes), std::move(s.u),
                                       std::move(s.du), s.support);
}

bool in_blowup_state(const Trajectory& traj, const PhysicalParams& params) {
  if (traj.size() < 2 || traj.back().size() < 2) return false;
  if (traj.stop_reason == StopReason::blowup_detected) return true;
  if (traj.stop_reason != StopReason::step_underflow) return false;
  const double r = traj.nodes.back();
  const double u = traj.back()[0], du = traj.back()[1];
  if (!(du > 0.0)) return false;
  const double quad = 0.5 * params.beta() * du * du;
  const double rest = params.radial_coefficient() / r * du + params.lambda_sq() * std::abs(u);
  return rest <= 0.05 * quad;
}

double estimate_support(const Trajectory& traj, const PhysicalParams& params) {
  if (!in_blowup_state(traj, params)) {
    throw std::logic_error("estimate_support: trajectory did not end in blow-up");
  }
  const double r_stop = traj.nodes.back();
  const double du = traj.back()[1];
  return r_stop + 2.0 / (params.beta() * du);
}

RadialProfile density_from_potential(const RadialProfile& profile) {
  if (!profile.has_support()) return profile;
  for (double u : profile.u()) {
    if (!std::isfinite(u)) throw ValidationError("u", "non-finite potential");
  }
  return RadialProfile::from_potential(profile.params(), profile.nodes(), profile.u(),
                                       profile.du(), profile.r_m());
}

}  // namespace madelung
