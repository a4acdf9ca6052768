#include "madelung/quadrature.hpp"

#include <cmath>

#include "madelung/errors.hpp"
#include "madelung/kernels.hpp"

namespace madelung {

double hermite_integral(std::span<const double> x, std::span<const double> f,
                        std::span<const double> df, double end) {
  if (x.empty() || f.size() != x.size() || df.size() != x.size()) {
    throw ValidationError("quadrature", "node, value and slope arrays must match");
  }
  if (!(end >= x.back())) throw ValidationError("quadrature", "end precedes the last node");
  double sum = kernels::active().hermite_trapezoid(x.data(), f.data(), df.data(), x.size());
  sum += 0.5 * (end - x.back()) * f.back();
  return sum;
}

std::vector<double> trapezoid_weights(std::span<const double> x, double end) {
  if (x.empty()) return {};
  std::vector<double> w(x.size(), 0.0);
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double h = x[i + 1] - x[i];
    w[i] += 0.5 * h;
    w[i + 1] += 0.5 * h;
  }
  w.back() += 0.5 * (end - x.back());
  return w;
}

}  // namespace madelung
