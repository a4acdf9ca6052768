#pragma once

#include <optional>

#include "madelung/interpolant.hpp"
#include "madelung/profiles.hpp"

namespace madelung {

// Continuous evaluation of a solved profile: quintic Hermite interpolation on
// the integrator nodes (slope and curvature from the profile and the ODE),
// and the logarithmic blow-up form U ~ -(2/beta) ln(r_m - r) on the short
// stretch between the last node and the support edge.
class AxisField {
 public:
  explicit AxisField(const AxisProfile& profile);

  // U_i(|x|); +inf at or beyond the half-width.
  double value(double x) const;
  // dU_i/d|x|.
  double slope(double x) const;
  double half_width() const noexcept { return half_width_; }
  double beta() const noexcept { return beta_; }
  double u0() const noexcept { return u0_; }

 private:
  std::optional<QuinticHermite> interp_;
  double beta_, u0_, half_width_, x_stop_, u_stop_;
};

class RadialField {
 public:
  explicit RadialField(const RadialProfile& profile);

  double value(double r) const;
  double slope(double r) const;
  // Normalized density; 0 at or beyond r_m.
  double density(double r) const;
  double r_m() const noexcept { return r_m_; }

 private:
  std::optional<QuinticHermite> interp_;
  double beta_, u0_, log_z_, r_m_, r_stop_, u_stop_;
};

}  // namespace madelung
