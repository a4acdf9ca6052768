#pragma once

#include <span>
#include <vector>

namespace madelung {

// Piecewise quintic Hermite interpolation through (x, f, f', f'') samples.
// Exact for polynomials of degree five on each interval.
class QuinticHermite {
 public:
  QuinticHermite(std::vector<double> x, std::vector<double> f, std::vector<double> df,
                 std::vector<double> d2f);

  double front() const { return x_.front(); }
  double back() const { return x_.back(); }

  // Value and first derivative; x must lie in [front(), back()].
  double value(double x) const;
  double derivative(double x) const;
  void evaluate(double x, double& value, double& derivative) const;

 private:
  std::size_t locate(double x) const;

  std::vector<double> x_, f_, df_, d2f_;
};

}  // namespace madelung
