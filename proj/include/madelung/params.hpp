#pragma once

#include <string>
#include <string_view>

namespace madelung {

// First-derivative coefficient of the rotationally symmetric equation:
// paper_radial uses 2/r, planar_radial the two-dimensional 1/r.
enum class LaplacianVariant { paper_radial, planar_radial };

std::string_view to_string(LaplacianVariant v);
LaplacianVariant parse_variant(std::string_view s);

// Mass, reduced Planck constant and the Lagrange multiplier beta of the
// maximum-entropy problem. lambda_sq = 4 m / (hbar^2 beta) is the linear
// coefficient of the quantum-potential equation.
class PhysicalParams {
 public:
  PhysicalParams(double mass, double hbar, double beta,
                 LaplacianVariant variant = LaplacianVariant::paper_radial);

  double mass() const noexcept { return mass_; }
  double hbar() const noexcept { return hbar_; }
  double beta() const noexcept { return beta_; }
  double lambda_sq() const noexcept { return lambda_sq_; }
  LaplacianVariant variant() const noexcept { return variant_; }

  // c in U'' + (c/r) U' for the radial equation.
  double radial_coefficient() const noexcept {
    return variant_ == LaplacianVariant::paper_radial ? 2.0 : 1.0;
  }

  // hbar^2 / (2 m), the prefactor of the quantum potential.
  double kinetic_prefactor() const noexcept { return hbar_ * hbar_ / (2.0 * mass_); }

  PhysicalParams with_beta(double beta) const;

  friend bool operator==(const PhysicalParams&, const PhysicalParams&) = default;

 private:
  double mass_;
  double hbar_;
  double beta_;
  double lambda_sq_;
  LaplacianVariant variant_;
};

inline double lambda_sq_for(double mass, double hbar, double beta) {
  return 4.0 * mass / (hbar * hbar * beta);
}

PhysicalParams make_params(double mass, double hbar, double beta,
                           LaplacianVariant variant = LaplacianVariant::paper_radial);

}  // namespace madelung
