#pragma once

#include <cstddef>
#include <string_view>

// Data-parallel inner loops. Each kernel has a scalar reference version and,
// on x86-64, an AVX2 version selected at runtime. Elementwise kernels round
// identically in both versions; the two reductions differ only in summation
// order.
namespace madelung::kernels {

enum class Isa { scalar, avx2 };

struct KernelTable {
  Isa isa;
  const char* name;

  // sum_i h_i/2 (f_i + f_{i+1}) + h_i^2/12 (df_i - df_{i+1}),  h_i = x_{i+1} - x_i
  double (*hermite_trapezoid)(const double* x, const double* f, const double* df,
                              std::size_t n);
  double (*sum)(const double* v, std::size_t n);
  // out_i = (a * b_i) * scale
  void (*scaled_product)(double a, const double* b, double scale, double* out, std::size_t n);

  // Uniformly spaced samples u_j at abscissae r_j. For 1 <= j <= n-2:
  //   residual_j = u'' + (c/r) u' - half_beta u'^2 - lambda_sq u
  //   scale_j    = |u''| + |(c/r) u'| + half_beta u'^2 + |lambda_sq u|
  // with central differences. Entries 0 and n-1 are not written.
  void (*line_residual)(const double* u, const double* r, std::size_t n, double h,
                        double half_beta, double lambda_sq, double c, double* residual,
                        double* scale);
  // out_j = -prefactor (R'' + (c/r) R') / R for 1 <= j <= n-2.
  void (*line_laplace_ratio)(const double* amp, const double* r, std::size_t n, double h,
                             double c, double prefactor, double* out);

  // Five-point versions on one grid row (up = row j+1, down = row j-1), for
  // columns 1 <= i <= n-2.
  void (*plane_residual_row)(const double* up, const double* mid, const double* down,
                             std::size_t n, double h, double half_beta, double lambda_sq,
                             double* residual, double* scale);
  void (*plane_laplace_ratio_row)(const double* up, const double* mid, const double* down,
                                  std::size_t n, double h, double prefactor, double* out);
  // out_i = (up_{i+1} - up_{i-1} - down_{i+1} + down_{i-1}) / (4 h^2)
  void (*mixed_difference_row)(const double* up, const double* down, std::size_t n, double h,
                               double* out);
};

const KernelTable& scalar();
// Null when not compiled in or not supported by the running CPU.
const KernelTable* avx2();
// Best supported table; MADELUNG_KERNELS=scalar|avx2 in the environment overrides.
const KernelTable& active();

std::string_view to_string(Isa isa);

}  // namespace madelung::kernels
