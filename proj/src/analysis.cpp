#include "madelung/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "madelung/errors.hpp"
#include "madelung/fields.hpp"
#include "madelung/quadrature.hpp"

namespace madelung {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double omega_from_slope(double du, double r, double mass) {
  return std::sqrt(std::max(du, 0.0) / (r * mass));
}

}  // namespace

Observables observables(const RadialProfile& profile) {
  if (!profile.has_support()) {
    throw ValidationError("profile", "observables need a finite support");
  }
  const PhysicalParams& p = profile.params();
  const double beta = p.beta();
  const auto& x = profile.nodes();
  const auto& u = profile.u();
  const auto& du = profile.du();
  const auto& rho = profile.rho();
  const std::vector<double> d2u = profile.curvature();
  const std::size_t n = x.size();

  // Each integrand f r-weighted, with its exact slope from rho' = -beta U' rho.
  std::vector<double> f(n), df(n);
  auto integrate = [&](auto&& fill) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto [v, s] = fill(x[j], u[j], du[j], d2u[j], rho[j]);
      f[j] = v;
      df[j] = s;
    }
    return 2.0 * std::numbers::pi * hermite_integral(x, f, df, profile.r_m());
  };

  const double mass = integrate([&](double r, double, double up, double, double q) {
    return std::pair{q * r, q * (1.0 - beta * up * r)};
  });
  if (!(std::abs(mass - 1.0) <= 1e-8)) {
    throw ValidationError("rho", "profile density is not normalized");
  }

  Observables o;
  o.z = profile.z();
  o.log_z = profile.log_z();
  o.r_m = profile.r_m();
  o.u_bar = integrate([&](double r, double v, double up, double, double q) {
    return std::pair{v * q * r, q * (up * r + v * (1.0 - beta * up * r))};
  });
  // m pi int r^2 U' rho dr = (m/2) * 2 pi int r^2 U' rho dr
  o.k_bar_quadrature = 0.5 * p.mass() * integrate([&](double r, double, double up, double upp, double q) {
    return std::pair{r * r * up * q, q * (2.0 * r * up + r * r * upp - beta * r * r * up * up)};
  });
  o.r2_bar = integrate([&](double r, double, double up, double, double q) {
    return std::pair{r * r * r * q, q * r * r * (3.0 - beta * r * up)};
  });
  // -rho ln rho r with ln rho = -beta U - ln Z.
  o.entropy = integrate([&](double r, double v, double up, double, double q) {
    const double lr = -beta * v - profile.log_z();
    return std::pair{-q * lr * r, -(q * lr + r * q * (-beta * up) * (lr + 1.0))};
  });
  o.k_bar = p.mass() / beta;
  o.energy = o.u_bar + o.k_bar;
  return o;
}

double angular_velocity(const RadialProfile& profile, double r) {
  if (!(r >= 0.0)) throw OutOfSupportError("negative radius");
  if (!(r < profile.r_m())) throw OutOfSupportError("radius outside the support");
  const double mass = profile.params().mass();
  if (!profile.has_support()) return 0.0;
  if (r == 0.0) return std::sqrt(std::max(profile.curvature().front(), 0.0) / mass);
  return omega_from_slope(RadialField(profile).slope(r), r, mass);
}

std::vector<double> angular_velocity_at_nodes(const RadialProfile& profile) {
  const auto& x = profile.nodes();
  std::vector<double> out(x.size());
  const double mass = profile.params().mass();
  const double d2u0 = profile.curvature().front();
  for (std::size_t j = 0; j < x.size(); ++j) {
    out[j] = x[j] == 0.0 ? std::sqrt(std::max(d2u0, 0.0) / mass)
                         : omega_from_slope(profile.du()[j], x[j], mass);
  }
  return out;
}

std::vector<FieldSample> velocity_field(const RadialProfile& profile,
                                        std::span<const std::pair<double, double>> positions) {
  const RadialField field(profile);
  const double mass = profile.params().mass();
  const double omega0 = profile.has_support() ? angular_velocity(profile, 0.0) : 0.0;
  std::vector<FieldSample> out;
  out.reserve(positions.size());
  for (const auto& [x, y] : positions) {
    FieldSample s;
    s.x = x;
    s.y = y;
    const double r = std::hypot(x, y);
    if (!(r < profile.r_m())) {
      s.omega = s.vx = s.vy = s.stationarity_residual = kNaN;
      out.push_back(s);
      continue;
    }
    s.in_support = true;
    const double du = field.slope(r);
    s.omega = r == 0.0 ? omega0 : omega_from_slope(du, r, mass);
    s.vx = -s.omega * y;
    s.vy = s.omega * x;
    s.stationarity_residual = r == 0.0 ? 0.0 : mass * r * s.omega * s.omega - du;
    out.push_back(s);
  }
  return out;
}

DivergenceReport velocity_divergence(const RadialProfile& profile, double h, double margin) {
  if (!(h > 0.0)) throw ValidationError("h", "must be positive");
  DivergenceReport rep;
  rep.h = h;
  if (!profile.has_support()) return rep;
  const RadialField field(profile);
  const double mass = profile.params().mass();
  const double omega0 = angular_velocity(profile, 0.0);
  const double limit = (1.0 - margin) * profile.r_m();
  const auto half = static_cast<long>(std::floor(limit / h));
  const std::size_t width = static_cast<std::size_t>(2 * half + 1);

  auto omega_row = [&](long j, std::vector<double>& row) {
    const double y = h * static_cast<double>(j);
    for (long i = -half; i <= half; ++i) {
      const double x = h * static_cast<double>(i);
      const double r = std::hypot(x, y);
      double w = 0.0;
      if (r == 0.0) {
        w = omega0;
      } else if (r <= limit) {
        w = omega_from_slope(field.slope(r), r, mass);
      }
      row[static_cast<std::size_t>(i + half)] = w;
    }
  };

  std::vector<double> down(width), mid(width), up(width);
  omega_row(-half, down);
  omega_row(-half + 1, mid);
  for (long j = -half + 1; j < half; ++j) {
    omega_row(j + 1, up);
    const double y = h * static_cast<double>(j);
    for (long i = -half + 1; i < half; ++i) {
      const double x = h * static_cast<double>(i);
      // Keep the whole stencil inside the sampled disk.
      if (std::hypot(std::abs(x) + h, std::abs(y) + h) > limit) continue;
      const auto k = static_cast<std::size_t>(i + half);
      const double dvx = (-mid[k + 1] * y + mid[k - 1] * y) / (2.0 * h);
      const double dvy = (up[k] * x - down[k] * x) / (2.0 * h);
      const double div = std::abs(dvx + dvy);
      rep.sup_abs = std::max(rep.sup_abs, div);
      rep.sup_scaled = std::max(rep.sup_scaled, div / (std::abs(dvx) + std::abs(dvy) + mid[k]));
      ++rep.samples;
    }
    std::swap(down, mid);
    std::swap(mid, up);
  }
  return rep;
}

double circulation(const RadialProfile& profile, double r) {
  return 2.0 * std::numbers::pi * r * r * angular_velocity(profile, r);
}

}  // namespace madelung
