#include "madelung/interpolant.hpp"

#include <algorithm>
#include <cmath>

#include "madelung/errors.hpp"

namespace madelung {

QuinticHermite::QuinticHermite(std::vector<double> x, std::vector<double> f,
                               std::vector<double> df, std::vector<double> d2f)
    : x_(std::move(x)), f_(std::move(f)), df_(std::move(df)), d2f_(std::move(d2f)) {
  if (x_.size() < 2 || f_.size() != x_.size() || df_.size() != x_.size() ||
      d2f_.size() != x_.size()) {
    throw ValidationError("nodes", "need at least two samples of matching length");
  }
  for (std::size_t i = 1; i < x_.size(); ++i) {
    if (!(x_[i] > x_[i - 1])) throw ValidationError("nodes", "must be strictly ascending");
  }
}

std::size_t QuinticHermite::locate(double x) const {
  if (!(x >= x_.front() && x <= x_.back())) {
    throw OutOfSupportError("interpolation point outside the sampled range");
  }
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - x_.begin());
  return i == 0 ? 0 : std::min(i - 1, x_.size() - 2);
}

void QuinticHermite::evaluate(double x, double& value, double& derivative) const {
  const std::size_t i = locate(x);
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;

  // p(t) = sum c_k t^k matching value, slope and curvature at both ends.
  const double c0 = f_[i];
  const double c1 = h * df_[i];
  const double c2 = 0.5 * h * h * d2f_[i];
  const double a = f_[i + 1] - (c0 + c1 + c2);
  const double b = h * df_[i + 1] - (c1 + 2.0 * c2);
  const double c = h * h * d2f_[i + 1] - 2.0 * c2;
  const double c3 = 10.0 * a - 4.0 * b + 0.5 * c;
  const double c4 = -15.0 * a + 7.0 * b - c;
  const double c5 = 6.0 * a - 3.0 * b + 0.5 * c;

  value = c0 + t * (c1 + t * (c2 + t * (c3 + t * (c4 + t * c5))));
  derivative = (c1 + t * (2.0 * c2 + t * (3.0 * c3 + t * (4.0 * c4 + t * 5.0 * c5)))) / h;
}

double QuinticHermite::value(double x) const {
  double v, d;
  evaluate(x, v, d);
  return v;
}

double QuinticHermite::derivative(double x) const {
  double v, d;
  evaluate(x, v, d);
  return d;
}

}  // namespace madelung
