#pragma once

#include "madelung/fields.hpp"
#include "madelung/profiles.hpp"

namespace madelung {

// The pair of axis factors a separable grid was assembled from.
class SeparableSource {
 public:
  SeparableSource(AxisProfile ux, AxisProfile uy);

  const AxisProfile& ux() const noexcept { return ux_; }
  const AxisProfile& uy() const noexcept { return uy_; }
  // U(x, y) = U_x(|x|) + U_y(|y|); +inf outside the support rectangle.
  double potential(double x, double y) const;

 private:
  AxisProfile ux_, uy_;
  AxisField fx_, fy_;
};

struct GridSpec {
  double h = 0.01;
};

// Samples U = U_x + U_y on the grid points strictly inside the support
// rectangle, rho = rho_x rho_y renormalized so that sum(rho) h^2 = 1.
Grid2D assemble_2d(const AxisProfile& ux, const AxisProfile& uy, const GridSpec& spec);

enum class Resampling {
  automatic,  // profile when the grid has a source, bilinear otherwise
  bilinear,
  profile,
};

// New grid on the same points holding the field rotated by theta:
// U'(q) = U(R(-theta) q). Points whose source lies outside the support get
// U = +inf, rho = 0. rho is renormalized on the grid.
Grid2D rotate_grid(const Grid2D& grid, double theta, Resampling mode = Resampling::automatic);

}  // namespace madelung
