#include "madelung/residual.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "madelung/errors.hpp"
#include "madelung/fields.hpp"
#include "madelung/kernels.hpp"

namespace madelung {

namespace {

template <class Field>
ResidualNorms line_residual(const Field& field, const PhysicalParams& p, double support,
                            double u0, double c, const ResidualOptions& opts) {
  if (!(opts.h > 0.0)) throw ValidationError("h", "must be positive");
  ResidualNorms out;
  out.h = opts.h;
  if (!std::isfinite(support)) return out;

  const double limit = std::min((1.0 - opts.margin) * support,
                                support - static_cast<double>(opts.min_cells) * opts.h);
  const auto count = static_cast<std::size_t>(std::floor(limit / opts.h));
  if (count < 2) return out;
  const std::size_t n = count + 1;  // samples 0..count, residual at 1..count-1

  std::vector<double> r(n), u(n), amp(n), res(n), scale(n), rebuilt(n);
  const double beta = p.beta();
  for (std::size_t j = 0; j < n; ++j) {
    r[j] = opts.h * static_cast<double>(j);
    u[j] = field.value(r[j]);
    amp[j] = std::exp(-0.5 * beta * (u[j] - u0));
  }
  const auto& kt = kernels::active();
  kt.line_residual(u.data(), r.data(), n, opts.h, 0.5 * beta, p.lambda_sq(), c, res.data(),
                   scale.data());
  kt.line_laplace_ratio(amp.data(), r.data(), n, opts.h, c, p.kinetic_prefactor(),
                        rebuilt.data());
  for (std::size_t j = 1; j + 1 < n; ++j) {
    const double a = std::abs(res[j]);
    out.pde_abs = std::max(out.pde_abs, a);
    out.pde_scaled = std::max(out.pde_scaled, scale[j] > 0.0 ? a / scale[j] : 0.0);
    out.self_consistency = std::max(out.self_consistency, std::abs(rebuilt[j] - u[j]));
  }
  out.samples = n - 2;
  return out;
}

// Interior test for grid point (x, y): inside the rotated support box by at
// least the margin along both axes of the box.
struct InteriorMask {
  explicit InteriorMask(const Grid2D& g, const ResidualOptions& opts)
      : c(std::cos(g.support().theta)),
        s(std::sin(g.support().theta)),
        hx(g.support().half_x),
        hy(g.support().half_y) {
    const double cells = static_cast<double>(opts.min_cells) * g.geometry().h;
    bx = std::max(opts.margin * hx, cells);
    by = std::max(opts.margin * hy, cells);
  }
  bool operator()(double x, double y) const {
    const double xs = c * x + s * y, ys = -s * x + c * y;
    return hx - std::abs(xs) >= bx && hy - std::abs(ys) >= by;
  }
  double c, s, hx, hy, bx, by;
};

}  // namespace

ResidualNorms maxent_residual(const RadialProfile& profile, const ResidualOptions& opts) {
  if (!profile.has_support()) {
    ResidualNorms out;
    out.h = opts.h;
    return out;
  }
  return line_residual(RadialField(profile), profile.params(), profile.r_m(), profile.u0(),
                       profile.radial_coefficient(), opts);
}

ResidualNorms maxent_residual(const AxisProfile& profile, const ResidualOptions& opts) {
  return line_residual(AxisField(profile), profile.params(), profile.half_width(),
                       profile.u0(), 0.0, opts);
}

ResidualNorms maxent_residual(const Grid2D& grid, const ResidualOptions& opts) {
  const GridGeometry& geo = grid.geometry();
  const PhysicalParams& p = grid.params();
  ResidualNorms out;
  out.h = geo.h;
  if (geo.nx < 3 || geo.ny < 3) return out;

  const InteriorMask interior(grid, opts);
  std::vector<double> amp(geo.nx * geo.ny);
  for (std::size_t k = 0; k < amp.size(); ++k) amp[k] = std::sqrt(grid.rho()[k]);

  const auto& kt = kernels::active();
  std::vector<double> res(geo.nx), scale(geo.nx), rebuilt(geo.nx);
  for (std::size_t j = 1; j + 1 < geo.ny; ++j) {
    const double* up = grid.u().data() + (j + 1) * geo.nx;
    const double* mid = grid.u().data() + j * geo.nx;
    const double* dn = grid.u().data() + (j - 1) * geo.nx;
    kt.plane_residual_row(up, mid, dn, geo.nx, geo.h, 0.5 * p.beta(), p.lambda_sq(),
                          res.data(), scale.data());
    kt.plane_laplace_ratio_row(amp.data() + (j + 1) * geo.nx, amp.data() + j * geo.nx,
                               amp.data() + (j - 1) * geo.nx, geo.nx, geo.h,
                               p.kinetic_prefactor(), rebuilt.data());
    for (std::size_t i = 1; i + 1 < geo.nx; ++i) {
      if (!interior(geo.x(i), geo.y(j))) continue;
      if (!std::isfinite(res[i]) || !std::isfinite(rebuilt[i])) continue;
      const double a = std::abs(res[i]);
      out.pde_abs = std::max(out.pde_abs, a);
      out.pde_scaled = std::max(out.pde_scaled, scale[i] > 0.0 ? a / scale[i] : 0.0);
      out.self_consistency = std::max(out.self_consistency, std::abs(rebuilt[i] - mid[i]));
      ++out.samples;
    }
  }
  return out;
}

double mixed_difference_norm(const Grid2D& grid, const ResidualOptions& opts) {
  const GridGeometry& geo = grid.geometry();
  if (geo.nx < 3 || geo.ny < 3) return 0.0;
  const InteriorMask interior(grid, opts);
  std::vector<double> mixed(geo.nx);
  double worst = 0.0;
  for (std::size_t j = 1; j + 1 < geo.ny; ++j) {
    kernels::active().mixed_difference_row(grid.u().data() + (j + 1) * geo.nx,
                                           grid.u().data() + (j - 1) * geo.nx, geo.nx, geo.h,
                                           mixed.data());
    for (std::size_t i = 1; i + 1 < geo.nx; ++i) {
      if (!interior(geo.x(i), geo.y(j)) || !std::isfinite(mixed[i])) continue;
      worst = std::max(worst, std::abs(mixed[i]));
    }
  }
  return worst;
}

}  // namespace madelung
