#pragma once

#include <span>
#include <vector>

namespace madelung {

// Integral over [x.front(), end] of a function known by value f and slope df
// at the nodes x: corrected trapezoid rule (fourth order) on each interval,
// closed by a linear segment to zero on [x.back(), end]. The closing segment
// matches integrands that vanish linearly at a finite support boundary.
double hermite_integral(std::span<const double> x, std::span<const double> f,
                        std::span<const double> df, double end);

// Plain trapezoid weights on the nodes with the same closing segment.
std::vector<double> trapezoid_weights(std::span<const double> x, double end);

}  // namespace madelung
