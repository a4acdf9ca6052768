#pragma once

#include <stdexcept>
#include <string>

#include "madelung/integrator.hpp"
#include "madelung/params.hpp"
#include "madelung/profiles.hpp"

namespace madelung {

enum class Geometry { cartesian_factor, radial };

// Boundary data U(0) = u0, U'(0) = 0 for one solve. control.blowup_threshold
// defaults to u0 + 40 / beta (relative density e^-40 at the last node).
struct SolveRequest {
  PhysicalParams params;
  double u0 = 1.0;
  StepControl control{};
  Geometry geometry = Geometry::radial;

  void validate() const;
};

SolveRequest radial_request(const PhysicalParams& params, double u0 = 1.0);
SolveRequest cartesian_request(const PhysicalParams& params, double u0 = 1.0);

// Integration failed before the blow-up of U; carries what was integrated.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, Trajectory partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const Trajectory& partial() const noexcept { return partial_; }

 private:
  Trajectory partial_;
};

constexpr double kBlowupMargin = 40.0;

double default_blowup_threshold(const PhysicalParams& params, double u0);

// Start of the integration away from the origin: 1e-4 of the shorter of the
// two natural lengths hbar / sqrt(m u0) and 1 / Lambda.
double series_switch_point(const PhysicalParams& params, double u0);

// Coefficients of U(r) = u0 + a r^2 + b r^4 near the origin for the
// first-derivative coefficient c.
struct OriginSeries {
  double a;
  double b;
};
OriginSeries origin_series(const PhysicalParams& params, double u0, double c);

// y = (U, U'), y' = (U', U'') for first-derivative coefficient c.
OdeSystem potential_system(const PhysicalParams& params, double c);

// U'' = (beta/2) U'^2 + Lambda^2 U on the half line.
AxisProfile solve_cartesian_factor(const SolveRequest& req);

// U'' + (c/r) U' - (beta/2) U'^2 - (4m / (hbar^2 beta)) U = 0, c = 2 or 1.
RadialProfile solve_radial(const SolveRequest& req);

// True when the last state of a (U, U') trajectory is in the blow-up regime
// U'' ~ (beta/2) U'^2: either the threshold stop fired, or the step size
// underflowed while the quadratic term dominates the others by 20x.
bool in_blowup_state(const Trajectory& traj, const PhysicalParams& params);

// r_m = r_stop + 2 / (beta U'(r_stop)), from U ~ -(2/beta) ln(r_m - r).
double estimate_support(const Trajectory& traj, const PhysicalParams& params);

// Recomputes rho and Z for the profile's potential and support.
RadialProfile density_from_potential(const RadialProfile& profile);

}  // namespace madelung
