#pragma once

// Per-element formulas shared by the scalar kernels and the vector tails.
// Internal linkage only: this header is also compiled with -mavx2.

#include <cmath>
#include <cstddef>

namespace madelung::kernels::detail {

static inline void line_residual_at(const double* u, const double* r, std::size_t j,
                                    double inv2h, double invh2, double half_beta,
                                    double lambda_sq, double c, double* residual,
                                    double* scale) {
  const double up = u[j + 1], mid = u[j], dn = u[j - 1];
  const double d1 = (up - dn) * inv2h;
  const double d2 = (up - 2.0 * mid + dn) * invh2;
  const double drift = (c / r[j]) * d1;
  const double quad = (half_beta * d1) * d1;
  const double lin = lambda_sq * mid;
  residual[j] = d2 + drift - quad - lin;
  scale[j] = std::fabs(d2) + std::fabs(drift) + std::fabs(quad) + std::fabs(lin);
}

static inline void line_laplace_ratio_at(const double* a, const double* r, std::size_t j,
                                         double inv2h, double invh2, double c,
                                         double prefactor, double* out) {
  const double up = a[j + 1], mid = a[j], dn = a[j - 1];
  const double d1 = (up - dn) * inv2h;
  const double d2 = (up - 2.0 * mid + dn) * invh2;
  const double lap = d2 + (c / r[j]) * d1;
  out[j] = (-prefactor * lap) / mid;
}

static inline void plane_residual_at(const double* up, const double* mid, const double* dn,
                                     std::size_t i, double inv2h, double invh2,
                                     double half_beta, double lambda_sq, double* residual,
                                     double* scale) {
  const double c = mid[i];
  const double uxx = (mid[i + 1] - 2.0 * c + mid[i - 1]) * invh2;
  const double uyy = (up[i] - 2.0 * c + dn[i]) * invh2;
  const double ux = (mid[i + 1] - mid[i - 1]) * inv2h;
  const double uy = (up[i] - dn[i]) * inv2h;
  const double quad = half_beta * (ux * ux + uy * uy);
  const double lin = lambda_sq * c;
  residual[i] = uxx + uyy - quad - lin;
  scale[i] = std::fabs(uxx) + std::fabs(uyy) + quad + std::fabs(lin);
}

static inline void plane_laplace_ratio_at(const double* up, const double* mid,
                                          const double* dn, std::size_t i, double invh2,
                                          double prefactor, double* out) {
  const double c = mid[i];
  const double uxx = (mid[i + 1] - 2.0 * c + mid[i - 1]) * invh2;
  const double uyy = (up[i] - 2.0 * c + dn[i]) * invh2;
  out[i] = (-prefactor * (uxx + uyy)) / c;
}

static inline double mixed_at(const double* up, const double* dn, std::size_t i,
                              double inv4h2) {
  return (up[i + 1] - up[i - 1] - dn[i + 1] + dn[i - 1]) * inv4h2;
}

static inline double hermite_term(const double* x, const double* f, const double* df,
                                  std::size_t i) {
  const double h = x[i + 1] - x[i];
  return 0.5 * h * (f[i] + f[i + 1]) + (h * h / 12.0) * (df[i] - df[i + 1]);
}

}  // namespace madelung::kernels::detail
