#include "formulas.hpp"
#include "madelung/kernels.hpp"

namespace madelung::kernels {

namespace {

using namespace detail;

double hermite_trapezoid(const double* x, const double* f, const double* df, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) s += hermite_term(x, f, df, i);
  return s;
}

double sum(const double* v, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += v[i];
  return s;
}

void scaled_product(double a, const double* b, double scale, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = (a * b[i]) * scale;
}

void line_residual(const double* u, const double* r, std::size_t n, double h, double half_beta,
                   double lambda_sq, double c, double* residual, double* scale) {
  const double inv2h = 1.0 / (2.0 * h), invh2 = 1.0 / (h * h);
  for (std::size_t j = 1; j + 1 < n; ++j) {
    line_residual_at(u, r, j, inv2h, invh2, half_beta, lambda_sq, c, residual, scale);
  }
}

void line_laplace_ratio(const double* a, const double* r, std::size_t n, double h, double c,
                        double prefactor, double* out) {
  const double inv2h = 1.0 / (2.0 * h), invh2 = 1.0 / (h * h);
  for (std::size_t j = 1; j + 1 < n; ++j) {
    line_laplace_ratio_at(a, r, j, inv2h, invh2, c, prefactor, out);
  }
}

void plane_residual_row(const double* up, const double* mid, const double* dn, std::size_t n,
                        double h, double half_beta, double lambda_sq, double* residual,
                        double* scale) {
  const double inv2h = 1.0 / (2.0 * h), invh2 = 1.0 / (h * h);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    plane_residual_at(up, mid, dn, i, inv2h, invh2, half_beta, lambda_sq, residual, scale);
  }
}

void plane_laplace_ratio_row(const double* up, const double* mid, const double* dn,
                             std::size_t n, double h, double prefactor, double* out) {
  const double invh2 = 1.0 / (h * h);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    plane_laplace_ratio_at(up, mid, dn, i, invh2, prefactor, out);
  }
}

void mixed_difference_row(const double* up, const double* dn, std::size_t n, double h,
                          double* out) {
  const double inv4h2 = 1.0 / (4.0 * h * h);
  for (std::size_t i = 1; i + 1 < n; ++i) out[i] = mixed_at(up, dn, i, inv4h2);
}

constexpr KernelTable kScalar{
    Isa::scalar,          "scalar",           hermite_trapezoid,       sum,
    scaled_product,       line_residual,      line_laplace_ratio,      plane_residual_row,
    plane_laplace_ratio_row, mixed_difference_row,
};

}  // namespace

const KernelTable& scalar() { return kScalar; }

}  // namespace madelung::kernels
