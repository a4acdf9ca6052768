#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "madelung/params.hpp"

namespace madelung {

// U'' implied by the quantum-potential equation at (r, U, U') for a
// first-derivative coefficient c (0 for a Cartesian factor). At r = 0 the
// removable limit U''(0) = lambda_sq U / (1 + c) is used.
double ode_curvature(const PhysicalParams& p, double c, double r, double u, double du);

// One separable Cartesian factor U_i on the half line [0, i_stop], evenly
// extended to negative coordinates.
class AxisProfile {
 public:
  AxisProfile(PhysicalParams params, std::vector<double> nodes, std::vector<double> u,
              std::vector<double> du, double half_width, bool extrapolated);

  const PhysicalParams& params() const noexcept { return params_; }
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& u() const noexcept { return u_; }
  const std::vector<double>& du() const noexcept { return du_; }
  double u0() const noexcept { return u_.front(); }
  // i_m; +inf for the zero solution.
  double half_width() const noexcept { return half_width_; }
  bool extrapolated() const noexcept { return extrapolated_; }
  bool has_support() const noexcept;

  std::vector<double> curvature() const;

  friend bool operator==(const AxisProfile&, const AxisProfile&) = default;

 private:
  PhysicalParams params_;
  std::vector<double> nodes_, u_, du_;
  double half_width_;
  bool extrapolated_;
};

// Rotationally symmetric solution on [0, r_stop] with the normalized density
// rho = exp(-beta U) / Z on the disk of radius r_m.
class RadialProfile {
 public:
  RadialProfile(PhysicalParams params, std::vector<double> nodes, std::vector<double> u,
                std::vector<double> du, std::vector<double> rho, double z, double log_z,
                double r_m);

  // Computes rho, Z from U by quadrature over [0, r_m).
  static RadialProfile from_potential(PhysicalParams params, std::vector<double> nodes,
                                      std::vector<double> u, std::vector<double> du, double r_m);
  // Zero solution: U = 0, no finite support.
  static RadialProfile unsupported(PhysicalParams params);

  const PhysicalParams& params() const noexcept { return params_; }
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& u() const noexcept { return u_; }
  const std::vector<double>& du() const noexcept { return du_; }
  const std::vector<double>& rho() const noexcept { return rho_; }
  double z() const noexcept { return z_; }
  // ln Z, finite even when Z itself under- or overflows.
  double log_z() const noexcept { return log_z_; }
  double r_m() const noexcept { return r_m_; }
  double u0() const noexcept { return u_.front(); }
  double r_stop() const noexcept { return nodes_.back(); }
  bool has_support() const noexcept;
  double radial_coefficient() const noexcept { return params_.radial_coefficient(); }

  std::vector<double> curvature() const;

  friend bool operator==(const RadialProfile&, const RadialProfile&) = default;

 private:
  PhysicalParams params_;
  std::vector<double> nodes_, u_, du_, rho_;
  double z_, log_z_, r_m_;
};

struct Observables {
  double z = 0.0;
  double log_z = 0.0;
  double u_bar = 0.0;
  // Closed form m/beta; the quadrature value is k_bar_quadrature.
  double k_bar = 0.0;
  double k_bar_quadrature = 0.0;
  double entropy = 0.0;
  double r2_bar = 0.0;
  double energy = 0.0;
  double r_m = 0.0;

  void validate() const;
  friend bool operator==(const Observables&, const Observables&) = default;
};

// Infinite-beta limit: psi = a sin(k r) / r on r < r_inf = pi / k.
struct SincLimit {
  double k = 0.0;
  double r_inf = 0.0;
  double a = 0.0;
  double s0 = 0.0;
  double energy = 0.0;

  void validate() const;
  double psi(double r) const;
  double density(double r) const;
  friend bool operator==(const SincLimit&, const SincLimit&) = default;
};

class SeparableSource;

struct GridGeometry {
  double h = 0.0;
  double origin_x = 0.0;
  double origin_y = 0.0;
  std::size_t nx = 0;
  std::size_t ny = 0;

  double x(std::size_t i) const { return origin_x + h * static_cast<double>(i); }
  double y(std::size_t j) const { return origin_y + h * static_cast<double>(j); }
  friend bool operator==(const GridGeometry&, const GridGeometry&) = default;
};

// Support rectangle [-half_x, half_x] x [-half_y, half_y] rotated by theta.
struct SupportBox {
  double half_x = 0.0;
  double half_y = 0.0;
  double theta = 0.0;
  friend bool operator==(const SupportBox&, const SupportBox&) = default;
};

// Uniform grid holding U and rho planes (row-major, row j at y(j)). Points
// outside the support hold U = +inf and rho = 0.
class Grid2D {
 public:
  Grid2D(PhysicalParams params, GridGeometry geometry, SupportBox support,
         std::vector<double> u, std::vector<double> rho,
         std::shared_ptr<const SeparableSource> source = nullptr);

  const PhysicalParams& params() const noexcept { return params_; }
  const GridGeometry& geometry() const noexcept { return geometry_; }
  const SupportBox& support() const noexcept { return support_; }
  const std::vector<double>& u() const noexcept { return u_; }
  const std::vector<double>& rho() const noexcept { return rho_; }
  const std::shared_ptr<const SeparableSource>& source() const noexcept { return source_; }

  double u_at(std::size_t i, std::size_t j) const { return u_[j * geometry_.nx + i]; }
  double rho_at(std::size_t i, std::size_t j) const { return rho_[j * geometry_.nx + i]; }
  std::span<const double> u_row(std::size_t j) const {
    return {u_.data() + j * geometry_.nx, geometry_.nx};
  }
  std::span<const double> rho_row(std::size_t j) const {
    return {rho_.data() + j * geometry_.nx, geometry_.nx};
  }

  // Distance of (x, y) inside the (rotated) support box to its edge; negative outside.
  double depth(double x, double y) const;

 private:
  PhysicalParams params_;
  GridGeometry geometry_;
  SupportBox support_;
  std::vector<double> u_, rho_;
  std::shared_ptr<const SeparableSource> source_;
};

}  // namespace madelung
