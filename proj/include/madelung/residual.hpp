#pragma once

#include <cstddef>

#include "madelung/profiles.hpp"

namespace madelung {

struct ResidualOptions {
  // Sample spacing for profiles; grids use their own spacing.
  double h = 1e-3;
  // Band next to the support edge left out, as a fraction of r_m (or of each
  // half-width), and at least min_cells samples wide.
  double margin = 0.05;
  std::size_t min_cells = 2;
};

// Sup-norms over the interior samples.
//   pde_abs           |Lap U - (beta/2)|grad U|^2 - Lambda^2 U|
//   pde_scaled        the same divided by the sum of the four term magnitudes
//   self_consistency  |-(hbar^2/2m) Lap sqrt(rho) / sqrt(rho) - U|
// All derivatives are second-order central differences.
struct ResidualNorms {
  double pde_abs = 0.0;
  double pde_scaled = 0.0;
  double self_consistency = 0.0;
  std::size_t samples = 0;
  double h = 0.0;

  bool passes(double threshold = 1e-4) const {
    return pde_scaled < threshold && self_consistency < threshold;
  }
};

ResidualNorms maxent_residual(const RadialProfile& profile, const ResidualOptions& opts = {});
ResidualNorms maxent_residual(const AxisProfile& profile, const ResidualOptions& opts = {});
ResidualNorms maxent_residual(const Grid2D& grid, const ResidualOptions& opts = {});

// Sup of the centred mixed difference d2U/dxdy over interior grid points.
double mixed_difference_norm(const Grid2D& grid, const ResidualOptions& opts = {});

}  // namespace madelung
