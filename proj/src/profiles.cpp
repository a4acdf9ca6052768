#include "madelung/profiles.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "madelung/errors.hpp"
#include "madelung/fields.hpp"
#include "madelung/quadrature.hpp"

namespace madelung {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_samples(const std::vector<double>& nodes, const std::vector<double>& u,
                   const std::vector<double>& du) {
  if (nodes.empty()) throw ValidationError("nodes", "must not be empty");
  if (u.size() != nodes.size() || du.size() != nodes.size()) {
    throw ValidationError("u", "u, du and nodes must have equal length");
  }
  if (nodes.front() != 0.0) throw ValidationError("nodes", "must start at 0");
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (!(nodes[i] > nodes[i - 1])) throw ValidationError("nodes", "must be strictly ascending");
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!std::isfinite(u[i]) || !std::isfinite(du[i])) {
      throw ValidationError("u", "non-finite potential sample");
    }
  }
  if (du.front() != 0.0) throw ValidationError("du", "must vanish at the origin");
}

// Unnormalized weight exp(-beta (U - U0)) r^k and its slope, on the nodes.
struct Weighted {
  std::vector<double> f, df;
};

}  // namespace

double ode_curvature(const PhysicalParams& p, double c, double r, double u, double du) {
  if (r == 0.0) return p.lambda_sq() * u / (1.0 + c);
  return 0.5 * p.beta() * du * du + p.lambda_sq() * u - (c / r) * du;
}

AxisProfile::AxisProfile(PhysicalParams params, std::vector<double> nodes,
                         std::vector<double> u, std::vector<double> du, double half_width,
                         bool extrapolated)
    : params_(params),
      nodes_(std::move(nodes)),
      u_(std::move(u)),
      du_(std::move(du)),
      half_width_(half_width),
      extrapolated_(extrapolated) {
  check_samples(nodes_, u_, du_);
  if (!(half_width_ >= nodes_.back())) {
    throw ValidationError("half_width", "must not precede the last node");
  }
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    const double tol = 1e-9 * (1.0 + std::abs(du_[i - 1]));
    if (u_[i] < u_[i - 1] - 1e-12 * (1.0 + std::abs(u_[i - 1])) || du_[i] < du_[i - 1] - tol) {
      throw ValidationError("u", "axis potential must be nondecreasing and convex");
    }
  }
}

bool AxisProfile::has_support() const noexcept { return std::isfinite(half_width_); }

std::vector<double> AxisProfile::curvature() const {
  std::vector<double> out(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    out[i] = ode_curvature(params_, 0.0, nodes_[i], u_[i], du_[i]);
  }
  return out;
}

RadialProfile::RadialProfile(PhysicalParams params, std::vector<double> nodes,
                             std::vector<double> u, std::vector<double> du,
                             std::vector<double> rho, double z, double log_z, double r_m)
    : params_(params),
      nodes_(std::move(nodes)),
      u_(std::move(u)),
      du_(std::move(du)),
      rho_(std::move(rho)),
      z_(z),
      log_z_(log_z),
      r_m_(r_m) {
  check_samples(nodes_, u_, du_);
  if (rho_.size() != nodes_.size()) throw ValidationError("rho", "length mismatch");
  for (double d : du_) {
    if (d < 0.0) throw ValidationError("du", "radial slope must be nonnegative");
  }
  if (!has_support()) {
    for (double r : rho_) {
      if (r != 0.0) throw ValidationError("rho", "must vanish without finite support");
    }
    return;
  }
  if (!(r_m_ >= nodes_.back())) throw ValidationError("r_m", "must not precede the last node");
  if (!std::isfinite(log_z_)) throw ValidationError("log_z", "must be finite");
  const double beta = params_.beta();
  for (std::size_t j = 0; j < rho_.size(); ++j) {
    const double expect = std::exp(-beta * u_[j] - log_z_);
    // The exponent is the difference of two large numbers when beta U is large.
    const double cond = 8.0 * std::numeric_limits<double>::epsilon() *
                        (std::abs(beta * u_[j]) + std::abs(log_z_));
    if (!(std::abs(rho_[j] - expect) <= (1e-10 + cond) * expect + 1e-300)) {
      throw ValidationError("rho", "must equal exp(-beta u) / z");
    }
  }
}

RadialProfile RadialProfile::from_potential(PhysicalParams params, std::vector<double> nodes,
                                            std::vector<double> u, std::vector<double> du,
                                            double r_m) {
  check_samples(nodes, u, du);
  if (!std::isfinite(r_m) || !(r_m >= nodes.back())) {
    throw ValidationError("r_m", "finite support radius not before the last node required");
  }
  const double beta = params.beta();
  const double u0 = u.front();
  const std::size_t n = nodes.size();
  std::vector<double> w(n), g(n), dg(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double r = nodes[j];
    w[j] = std::exp(-beta * (u[j] - u0));
    g[j] = w[j] * r;
    dg[j] = w[j] * (1.0 - beta * du[j] * r);
  }
  const double z_tilde = 2.0 * std::numbers::pi * hermite_integral(nodes, g, dg, r_m);
  if (!(z_tilde > 0.0) || !std::isfinite(z_tilde)) {
    throw ValidationError("u", "normalization integral is not positive and finite");
  }
  const double log_z = -beta * u0 + std::log(z_tilde);
  std::vector<double> rho(n);
  for (std::size_t j = 0; j < n; ++j) rho[j] = w[j] / z_tilde;
  return RadialProfile(params, std::move(nodes), std::move(u), std::move(du), std::move(rho),
                       std::exp(log_z), log_z, r_m);
}

RadialProfile RadialProfile::unsupported(PhysicalParams params) {
  return RadialProfile(params, {0.0}, {0.0}, {0.0}, {0.0}, kInf, kInf, kInf);
}

bool RadialProfile::has_support() const noexcept { return std::isfinite(r_m_); }

std::vector<double> RadialProfile::curvature() const {
  std::vector<double> out(nodes_.size());
  const double c = radial_coefficient();
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    out[i] = ode_curvature(params_, c, nodes_[i], u_[i], du_[i]);
  }
  return out;
}

void Observables::validate() const {
  if (energy != u_bar + k_bar) throw ValidationError("energy", "must equal u_bar + k_bar");
  if (!(u_bar > 0.0)) throw ValidationError("u_bar", "must be positive");
  if (!(k_bar > 0.0)) throw ValidationError("k_bar", "must be positive");
  if (!(r_m > 0.0)) throw ValidationError("r_m", "must be positive");
}

void SincLimit::validate() const {
  if (!(k > 0.0) || !std::isfinite(k)) throw ValidationError("k", "must be positive");
  if (!(a > 0.0)) throw ValidationError("a", "must be positive");
  if (std::abs(k * r_inf - std::numbers::pi) > 4.0 * std::numeric_limits<double>::epsilon()) {
    throw ValidationError("r_inf", "k * r_inf must equal pi");
  }
  if (!(energy > 0.0)) throw ValidationError("energy", "must be positive");
}

double SincLimit::psi(double r) const {
  if (r >= r_inf) return 0.0;
  if (r == 0.0) return a * k;
  return a * std::sin(k * r) / r;
}

double SincLimit::density(double r) const {
  const double p = psi(r);
  return p * p;
}

Grid2D::Grid2D(PhysicalParams params, GridGeometry geometry, SupportBox support,
               std::vector<double> u, std::vector<double> rho,
               std::shared_ptr<const SeparableSource> source)
    : params_(params),
      geometry_(geometry),
      support_(support),
      u_(std::move(u)),
      rho_(std::move(rho)),
      source_(std::move(source)) {
  if (!(geometry_.h > 0.0)) throw ValidationError("h", "grid spacing must be positive");
  if (geometry_.nx < 1 || geometry_.ny < 1) throw ValidationError("nx", "grid is empty");
  const std::size_t n = geometry_.nx * geometry_.ny;
  if (u_.size() != n || rho_.size() != n) {
    throw ValidationError("u", "U and rho planes must both have nx * ny values");
  }
  if (!(support_.half_x > 0.0) || !(support_.half_y > 0.0)) {
    throw ValidationError("support", "half widths must be positive");
  }
}

double Grid2D::depth(double x, double y) const {
  const double c = std::cos(support_.theta), s = std::sin(support_.theta);
  const double xs = c * x + s * y;
  const double ys = -s * x + c * y;
  return std::min(support_.half_x - std::abs(xs), support_.half_y - std::abs(ys));
}

// ---------------------------------------------------------------------------

AxisField::AxisField(const AxisProfile& profile)
    : beta_(profile.params().beta()),
      u0_(profile.u0()),
      half_width_(profile.half_width()),
      x_stop_(profile.nodes().back()),
      u_stop_(profile.u().back()) {
  if (profile.nodes().size() >= 2) {
    interp_.emplace(profile.nodes(), profile.u(), profile.du(), profile.curvature());
  }
}

double AxisField::value(double x) const {
  const double a = std::abs(x);
  if (!std::isfinite(half_width_)) {
    if (!interp_ || a > x_stop_) return u0_;
    return interp_->value(a);
  }
  if (a >= half_width_) return kInf;
  if (interp_ && a <= x_stop_) return interp_->value(a);
  return u_stop_ - (2.0 / beta_) * std::log((half_width_ - a) / (half_width_ - x_stop_));
}

double AxisField::slope(double x) const {
  const double a = std::abs(x);
  if (!std::isfinite(half_width_)) return (!interp_ || a > x_stop_) ? 0.0 : interp_->derivative(a);
  if (a >= half_width_) return kInf;
  if (interp_ && a <= x_stop_) return interp_->derivative(a);
  return 2.0 / (beta_ * (half_width_ - a));
}

RadialField::RadialField(const RadialProfile& profile)
    : beta_(profile.params().beta()),
      u0_(profile.u0()),
      log_z_(profile.log_z()),
      r_m_(profile.r_m()),
      r_stop_(profile.r_stop()),
      u_stop_(profile.u().back()) {
  if (profile.nodes().size() >= 2) {
    interp_.emplace(profile.nodes(), profile.u(), profile.du(), profile.curvature());
  }
}

double RadialField::value(double r) const {
  if (r < 0.0) throw OutOfSupportError("negative radius");
  if (!std::isfinite(r_m_)) return (!interp_ || r > r_stop_) ? u0_ : interp_->value(r);
  if (r >= r_m_) return kInf;
  if (interp_ && r <= r_stop_) return interp_->value(r);
  return u_stop_ - (2.0 / beta_) * std::log((r_m_ - r) / (r_m_ - r_stop_));
}

double RadialField::slope(double r) const {
  if (r < 0.0) throw OutOfSupportError("negative radius");
  if (!std::isfinite(r_m_)) return (!interp_ || r > r_stop_) ? 0.0 : interp_->derivative(r);
  if (r >= r_m_) return kInf;
  if (interp_ && r <= r_stop_) return interp_->derivative(r);
  return 2.0 / (beta_ * (r_m_ - r));
}

double RadialField::density(double r) const {
  if (!std::isfinite(r_m_) || r >= r_m_) return 0.0;
  return std::exp(-beta_ * value(r) - log_z_);
}

}  // namespace madelung
