#include "madelung/params.hpp"

#include <cmath>

#include "madelung/errors.hpp"

namespace madelung {

namespace {

void require_positive(const char* field, double v) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ValidationError(field, "must be a positive finite number");
  }
}

}  // namespace

std::string_view to_string(LaplacianVariant v) {
  return v == LaplacianVariant::paper_radial ? "paper-radial" : "planar-radial";
}

LaplacianVariant parse_variant(std::string_view s) {
  if (s == "paper-radial" || s == "paper") return LaplacianVariant::paper_radial;
  if (s == "planar-radial" || s == "planar") return LaplacianVariant::planar_radial;
  throw ValidationError("laplacian_variant", "unknown variant '" + std::string(s) + "'");
}

PhysicalParams::PhysicalParams(double mass, double hbar, double beta, LaplacianVariant variant)
    : mass_(mass), hbar_(hbar), beta_(beta), lambda_sq_(0.0), variant_(variant) {
  require_positive("mass", mass);
  require_positive("hbar", hbar);
  require_positive("beta", beta);
  lambda_sq_ = lambda_sq_for(mass, hbar, beta);
  if (!std::isfinite(lambda_sq_) || !(lambda_sq_ > 0.0)) {
    throw ValidationError("beta", "lambda_sq = 4m/(hbar^2 beta) is not representable");
  }
}

PhysicalParams PhysicalParams::with_beta(double beta) const {
  return PhysicalParams(mass_, hbar_, beta, variant_);
}

PhysicalParams make_params(double mass, double hbar, double beta, LaplacianVariant variant) {
  return PhysicalParams(mass, hbar, beta, variant);
}

}  // namespace madelung
