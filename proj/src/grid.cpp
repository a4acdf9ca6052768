#include "madelung/grid.hpp"

#include <cmath>
#include <limits>
#include <memory>

#include "madelung/errors.hpp"
#include "madelung/kernels.hpp"

namespace madelung {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Number of grid points on each side of 0 strictly inside (-w, w).
std::size_t points_inside(double half_width, double h) {
  double n = std::ceil(half_width / h) - 1.0;
  if (n < 0.0) n = 0.0;
  auto k = static_cast<std::size_t>(n);
  while (static_cast<double>(k + 1) * h < half_width) ++k;
  while (k > 0 && static_cast<double>(k) * h >= half_width) --k;
  return k;
}

void normalize_rho(std::vector<double>& rho, double h) {
  const auto& kt = kernels::active();
  const double total = kt.sum(rho.data(), rho.size()) * h * h;
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw ValidationError("rho", "grid density has no positive mass");
  }
  const double inv = 1.0 / total;
  kt.scaled_product(1.0, rho.data(), inv, rho.data(), rho.size());
}

double bilinear(const Grid2D& g, const std::vector<double>& plane, double x, double y) {
  const GridGeometry& geo = g.geometry();
  double fx = (x - geo.origin_x) / geo.h;
  double fy = (y - geo.origin_y) / geo.h;
  // Snap rounding noise so grid-aligned rotations hit grid points exactly.
  if (std::abs(fx - std::round(fx)) < 1e-9) fx = std::round(fx);
  if (std::abs(fy - std::round(fy)) < 1e-9) fy = std::round(fy);
  if (fx < 0.0 || fy < 0.0) return kInf;
  auto i = static_cast<std::size_t>(std::floor(fx));
  auto j = static_cast<std::size_t>(std::floor(fy));
  if (i >= geo.nx || j >= geo.ny) return kInf;
  // Points exactly on the last row or column.
  if (i == geo.nx - 1) {
    if (fx - static_cast<double>(i) > 1e-9) return kInf;
    if (i == 0) return kInf;
    --i;
  }
  if (j == geo.ny - 1) {
    if (fy - static_cast<double>(j) > 1e-9) return kInf;
    if (j == 0) return kInf;
    --j;
  }
  const double s = fx - static_cast<double>(i), t = fy - static_cast<double>(j);
  const std::size_t nx = geo.nx;
  const double v00 = plane[j * nx + i], v10 = plane[j * nx + i + 1];
  const double v01 = plane[(j + 1) * nx + i], v11 = plane[(j + 1) * nx + i + 1];
  // Corner weights that vanish are skipped so grid-aligned samples next to
  // the support edge stay finite.
  double acc = 0.0;
  const double w[4] = {(1 - s) * (1 - t), s * (1 - t), (1 - s) * t, s * t};
  const double v[4] = {v00, v10, v01, v11};
  for (int k = 0; k < 4; ++k) {
    if (w[k] == 0.0) continue;
    if (!std::isfinite(v[k])) return kInf;
    acc += w[k] * v[k];
  }
  return acc;
}

}  // namespace

SeparableSource::SeparableSource(AxisProfile ux, AxisProfile uy)
    : ux_(std::move(ux)), uy_(std::move(uy)), fx_(ux_), fy_(uy_) {}

double SeparableSource::potential(double x, double y) const {
  const double a = fx_.value(x);
  if (!std::isfinite(a)) return kInf;
  const double b = fy_.value(y);
  if (!std::isfinite(b)) return kInf;
  return a + b;
}

Grid2D assemble_2d(const AxisProfile& ux, const AxisProfile& uy, const GridSpec& spec) {
  if (!(ux.params() == uy.params())) {
    throw ValidationError("params", "axis factors were solved with different parameters");
  }
  if (!ux.has_support() || !uy.has_support()) {
    throw ValidationError("u0", "axis factors without finite support cannot be gridded");
  }
  if (!(spec.h > 0.0)) throw ValidationError("grid_h", "must be positive");
  const double h = spec.h;
  const std::size_t kx = points_inside(ux.half_width(), h);
  const std::size_t ky = points_inside(uy.half_width(), h);

  GridGeometry geo;
  geo.h = h;
  geo.nx = 2 * kx + 1;
  geo.ny = 2 * ky + 1;
  geo.origin_x = -static_cast<double>(kx) * h;
  geo.origin_y = -static_cast<double>(ky) * h;

  auto source = std::make_shared<const SeparableSource>(ux, uy);
  const AxisField fx(ux), fy(uy);
  const double beta = ux.params().beta();

  std::vector<double> uxs(geo.nx), wx(geo.nx), uys(geo.ny), wy(geo.ny);
  for (std::size_t i = 0; i < geo.nx; ++i) {
    uxs[i] = fx.value(geo.x(i));
    wx[i] = std::exp(-beta * (uxs[i] - ux.u0()));
  }
  for (std::size_t j = 0; j < geo.ny; ++j) {
    uys[j] = fy.value(geo.y(j));
    wy[j] = std::exp(-beta * (uys[j] - uy.u0()));
  }

  const auto& kt = kernels::active();
  const double mass = kt.sum(wx.data(), wx.size()) * kt.sum(wy.data(), wy.size()) * h * h;
  const double inv = 1.0 / mass;

  std::vector<double> u(geo.nx * geo.ny), rho(geo.nx * geo.ny);
  for (std::size_t j = 0; j < geo.ny; ++j) {
    double* urow = u.data() + j * geo.nx;
    for (std::size_t i = 0; i < geo.nx; ++i) urow[i] = uxs[i] + uys[j];
    kt.scaled_product(wy[j], wx.data(), inv, rho.data() + j * geo.nx, geo.nx);
  }
  SupportBox box{ux.half_width(), uy.half_width(), 0.0};
  return Grid2D(ux.params(), geo, box, std::move(u), std::move(rho), std::move(source));
}

Grid2D rotate_grid(const Grid2D& grid, double theta, Resampling mode) {
  if (mode == Resampling::automatic) {
    mode = grid.source() ? Resampling::profile : Resampling::bilinear;
  }
  if (mode == Resampling::profile && !grid.source()) {
    throw ValidationError("resampling", "profile resampling needs a grid assembled from profiles");
  }
  const GridGeometry& geo = grid.geometry();
  const SupportBox& box = grid.support();
  const double beta = grid.params().beta();
  const double c = std::cos(theta), s = std::sin(theta);
  // Profile mode samples the unrotated source frame, which sits at box.theta.
  const double ct = std::cos(theta + box.theta), st = std::sin(theta + box.theta);

  double u_ref = kInf;
  std::vector<double> u(geo.nx * geo.ny), rho(geo.nx * geo.ny);
  for (std::size_t j = 0; j < geo.ny; ++j) {
    for (std::size_t i = 0; i < geo.nx; ++i) {
      const double x = geo.x(i), y = geo.y(j);
      double value;
      if (mode == Resampling::profile) {
        value = grid.source()->potential(ct * x + st * y, -st * x + ct * y);
      } else {
        value = bilinear(grid, grid.u(), c * x + s * y, -s * x + c * y);
      }
      u[j * geo.nx + i] = value;
      if (value < u_ref) u_ref = value;
    }
  }
  if (!std::isfinite(u_ref)) throw ValidationError("theta", "rotated grid lost the support");
  if (mode == Resampling::profile) {
    for (std::size_t k = 0; k < u.size(); ++k) {
      rho[k] = std::isfinite(u[k]) ? std::exp(-beta * (u[k] - u_ref)) : 0.0;
    }
  } else {
    for (std::size_t j = 0; j < geo.ny; ++j) {
      for (std::size_t i = 0; i < geo.nx; ++i) {
        const std::size_t k = j * geo.nx + i;
        if (!std::isfinite(u[k])) {
          rho[k] = 0.0;
          continue;
        }
        const double r = bilinear(grid, grid.rho(), c * geo.x(i) + s * geo.y(j),
                                  -s * geo.x(i) + c * geo.y(j));
        rho[k] = std::isfinite(r) ? r : 0.0;
      }
    }
  }
  normalize_rho(rho, geo.h);
  SupportBox rotated{box.half_x, box.half_y, box.theta + theta};
  return Grid2D(grid.params(), geo, rotated, std::move(u), std::move(rho), grid.source());
}

}  // namespace madelung
