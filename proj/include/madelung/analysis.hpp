#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "madelung/profiles.hpp"

namespace madelung {

// Normalization, averages, entropy and moments of a solved radial profile,
// integrated over [0, r_m) with the Hermite-corrected rule on the solver nodes.
// Throws ValidationError when the profile has no finite support or its
// density does not integrate to 1 within 1e-8.
Observables observables(const RadialProfile& profile);

// omega(r) = sqrt(U'(r) / (r m)) on 0 <= r < r_m; at r = 0 the limit
// sqrt(U''(0) / m). Throws OutOfSupportError outside the support.
double angular_velocity(const RadialProfile& profile, double r);
// omega at every solver node from the stored slopes.
std::vector<double> angular_velocity_at_nodes(const RadialProfile& profile);

struct FieldSample {
  double x = 0.0;
  double y = 0.0;
  double omega = 0.0;
  double vx = 0.0;
  double vy = 0.0;
  // m r omega^2 - dU/dr
  double stationarity_residual = 0.0;
  bool in_support = false;

  friend bool operator==(const FieldSample&, const FieldSample&) = default;
};

// Rigid-rotation velocity v = (-omega y, omega x). Positions outside the
// support come back with in_support = false and NaN fields.
std::vector<FieldSample> velocity_field(const RadialProfile& profile,
                                        std::span<const std::pair<double, double>> positions);

struct DivergenceReport {
  double sup_abs = 0.0;
  // |div v| over |d(vx)/dx| + |d(vy)/dy| + omega, the size of the velocity gradient.
  double sup_scaled = 0.0;
  std::size_t samples = 0;
  double h = 0.0;
};

// Central-difference divergence of the velocity field on the square grid of
// spacing h through the origin, over points whose stencil stays within
// (1 - margin) r_m.
DivergenceReport velocity_divergence(const RadialProfile& profile, double h = 1e-3,
                                     double margin = 0.05);

// Line integral of v around the centred circle of radius r: 2 pi r^2 omega(r).
double circulation(const RadialProfile& profile, double r);

}  // namespace madelung
