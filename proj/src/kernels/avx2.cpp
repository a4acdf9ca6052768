// Compiled with -mavx2 (no FMA). Only reached after a runtime CPU check.
#include <immintrin.h>

#include "formulas.hpp"
#include "madelung/kernels.hpp"

namespace madelung::kernels {

namespace {

using namespace detail;

inline __m256d vabs(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

inline double hsum(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

double hermite_trapezoid(const double* x, const double* f, const double* df, std::size_t n) {
  if (n < 2) return 0.0;
  const std::size_t m = n - 1;  // number of intervals
  const __m256d half = _mm256_set1_pd(0.5), twelfth = _mm256_set1_pd(12.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    const __m256d x0 = _mm256_loadu_pd(x + i), x1 = _mm256_loadu_pd(x + i + 1);
    const __m256d f0 = _mm256_loadu_pd(f + i), f1 = _mm256_loadu_pd(f + i + 1);
    const __m256d g0 = _mm256_loadu_pd(df + i), g1 = _mm256_loadu_pd(df + i + 1);
    const __m256d h = _mm256_sub_pd(x1, x0);
    const __m256d trap = _mm256_mul_pd(_mm256_mul_pd(half, h), _mm256_add_pd(f0, f1));
    const __m256d corr =
        _mm256_mul_pd(_mm256_div_pd(_mm256_mul_pd(h, h), twelfth), _mm256_sub_pd(g0, g1));
    acc = _mm256_add_pd(acc, _mm256_add_pd(trap, corr));
  }
  double s = hsum(acc);
  for (; i < m; ++i) s += hermite_term(x, f, df, i);
  return s;
}

double sum(const double* v, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(v + i));
  double s = hsum(acc);
  for (; i < n; ++i) s += v[i];
  return s;
}

void scaled_product(double a, const double* b, double scale, double* out, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a), vs = _mm256_set1_pd(scale);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_mul_pd(va, _mm256_loadu_pd(b + i)), vs));
  }
  for (; i < n; ++i) out[i] = (a * b[i]) * scale;
}

void line_residual(const double* u, const double* r, std::size_t n, double h, double half_beta,
                   double lambda_sq, double c, double* residual, double* scale) {
  const double inv2h = 1.0 / (2.0 * h), invh2 = 1.0 / (h * h);
  const __m256d v2h = _mm256_set1_pd(inv2h), vh2 = _mm256_set1_pd(invh2);
  const __m256d two = _mm256_set1_pd(2.0), vc = _mm256_set1_pd(c);
  const __m256d vhb = _mm256_set1_pd(half_beta), vl = _mm256_set1_pd(lambda_sq);
  std::size_t j = 1;
  for (; j + 4 < n; j += 4) {
    const __m256d up = _mm256_loadu_pd(u + j + 1), mid = _mm256_loadu_pd(u + j),
                  dn = _mm256_loadu_pd(u + j - 1);
    const __m256d d1 = _mm256_mul_pd(_mm256_sub_pd(up, dn), v2h);
    const __m256d d2 =
        _mm256_mul_pd(_mm256_add_pd(_mm256_sub_pd(up, _mm256_mul_pd(two, mid)), dn), vh2);
    const __m256d drift = _mm256_mul_pd(_mm256_div_pd(vc, _mm256_loadu_pd(r + j)), d1);
    const __m256d quad = _mm256_mul_pd(_mm256_mul_pd(vhb, d1), d1);
    const __m256d lin = _mm256_mul_pd(vl, mid);
    _mm256_storeu_pd(residual + j,
                     _mm256_sub_pd(_mm256_sub_pd(_mm256_add_pd(d2, drift), quad), lin));
    _mm256_storeu_pd(scale + j,
                     _mm256_add_pd(_mm256_add_pd(_mm256_add_pd(vabs(d2), vabs(drift)), vabs(quad)),
                                   vabs(lin)));
  }
  for (; j + 1 < n; ++j) {
    line_residual_at(u, r, j, inv2h, invh2, half_beta, lambda_sq, c, residual, scale);
  }
}

void line_laplace_ratio(const double* a, const double* r, std::size_t n, double h, double c,
                        double prefactor, double* out) {
  const double inv2h = 1.0 / (2.0 * h), invh2 = 1.0 / (h * h);
  const __m256d v2h = _mm256_set1_pd(inv2h), vh2 = _mm256_set1_pd(invh2);
  const __m256d two = _mm256_set1_pd(2.0), vc = _mm256_set1_pd(c);
  const __m256d vneg = _mm256_set1_pd(-prefactor);
  std::size_t j = 1;
  for (; j + 4 < n; j += 4) {
    const __m256d up = _mm256_loadu_pd(a + j + 1), mid = _mm256_loadu_pd(a + j),
                  dn = _mm256_loadu_pd(a + j - 1);
    const __m256d d1 = _mm256_mul_pd(_mm256_sub_pd(up, dn), v2h);
    const __m256d d2 =
        _mm256_mul_pd(_mm256_add_pd(_mm256_sub_pd(up, _mm256_mul_pd(two, mid)), dn), vh2);
    const __m256d lap =
        _mm256_add_pd(d2, _mm256_mul_pd(_mm256_div_pd(vc, _mm256_loadu_pd(r + j)), d1));
    _mm256_storeu_pd(out + j, _mm256_div_pd(_mm256_mul_pd(vneg, lap), mid));
  }
  for (; j + 1 < n; ++j) line_laplace_ratio_at(a, r, j, inv2h, invh2, c, prefactor, out);
}

void plane_residual_row(const double* up, const double* mid, const double* dn, std::size_t n,
                        double h, double half_beta, double lambda_sq, double* residual,
                        double* scale) {
  const double inv2h = 1.0 / (2.0 * h), invh2 = 1.0 / (h * h);
  const __m256d v2h = _mm256_set1_pd(inv2h), vh2 = _mm256_set1_pd(invh2);
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d vhb = _mm256_set1_pd(half_beta), vl = _mm256_set1_pd(lambda_sq);
  std::size_t i = 1;
  for (; i + 4 < n; i += 4) {
    const __m256d c = _mm256_loadu_pd(mid + i);
    const __m256d e = _mm256_loadu_pd(mid + i + 1), w = _mm256_loadu_pd(mid + i - 1);
    const __m256d nn = _mm256_loadu_pd(up + i), s = _mm256_loadu_pd(dn + i);
    const __m256d c2 = _mm256_mul_pd(two, c);
    const __m256d uxx = _mm256_mul_pd(_mm256_add_pd(_mm256_sub_pd(e, c2), w), vh2);
    const __m256d uyy = _mm256_mul_pd(_mm256_add_pd(_mm256_sub_pd(nn, c2), s), vh2);
    const __m256d ux = _mm256_mul_pd(_mm256_sub_pd(e, w), v2h);
    const __m256d uy = _mm256_mul_pd(_mm256_sub_pd(nn, s), v2h);
    const __m256d quad =
        _mm256_mul_pd(vhb, _mm256_add_pd(_mm256_mul_pd(ux, ux), _mm256_mul_pd(uy, uy)));
    const __m256d lin = _mm256_mul_pd(vl, c);
    _mm256_storeu_pd(residual + i,
                     _mm256_sub_pd(_mm256_sub_pd(_mm256_add_pd(uxx, uyy), quad), lin));
    _mm256_storeu_pd(scale + i,
                     _mm256_add_pd(_mm256_add_pd(_mm256_add_pd(vabs(uxx), vabs(uyy)), quad),
                                   vabs(lin)));
  }
  for (; i + 1 < n; ++i) {
    plane_residual_at(up, mid, dn, i, inv2h, invh2, half_beta, lambda_sq, residual, scale);
  }
}

void plane_laplace_ratio_row(const double* up, const double* mid, const double* dn,
                             std::size_t n, double h, double prefactor, double* out) {
  const double invh2 = 1.0 / (h * h);
  const __m256d vh2 = _mm256_set1_pd(invh2), two = _mm256_set1_pd(2.0);
  const __m256d vneg = _mm256_set1_pd(-prefactor);
  std::size_t i = 1;
  for (; i + 4 < n; i += 4) {
    const __m256d c = _mm256_loadu_pd(mid + i);
    const __m256d c2 = _mm256_mul_pd(two, c);
    const __m256d uxx = _mm256_mul_pd(
        _mm256_add_pd(_mm256_sub_pd(_mm256_loadu_pd(mid + i + 1), c2),
                      _mm256_loadu_pd(mid + i - 1)),
        vh2);
    const __m256d uyy = _mm256_mul_pd(
        _mm256_add_pd(_mm256_sub_pd(_mm256_loadu_pd(up + i), c2), _mm256_loadu_pd(dn + i)),
        vh2);
    _mm256_storeu_pd(out + i,
                     _mm256_div_pd(_mm256_mul_pd(vneg, _mm256_add_pd(uxx, uyy)), c));
  }
  for (; i + 1 < n; ++i) plane_laplace_ratio_at(up, mid, dn, i, invh2, prefactor, out);
}

void mixed_difference_row(const double* up, const double* dn, std::size_t n, double h,
                          double* out) {
  const double inv4h2 = 1.0 / (4.0 * h * h);
  const __m256d vk = _mm256_set1_pd(inv4h2);
  std::size_t i = 1;
  for (; i + 4 < n; i += 4) {
    const __m256d t = _mm256_add_pd(
        _mm256_sub_pd(_mm256_sub_pd(_mm256_loadu_pd(up + i + 1), _mm256_loadu_pd(up + i - 1)),
                      _mm256_loadu_pd(dn + i + 1)),
        _mm256_loadu_pd(dn + i - 1));
    _mm256_storeu_pd(out + i, _mm256_mul_pd(t, vk));
  }
  for (; i + 1 < n; ++i) out[i] = mixed_at(up, dn, i, inv4h2);
}

}  // namespace

extern const KernelTable kAvx2Table;
const KernelTable kAvx2Table{
    Isa::avx2,          "avx2",           hermite_trapezoid,       sum,
    scaled_product,     line_residual,    line_laplace_ratio,      plane_residual_row,
    plane_laplace_ratio_row, mixed_difference_row,
};

}  // namespace madelung::kernels
