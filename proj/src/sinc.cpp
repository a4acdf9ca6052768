#include "madelung/sinc.hpp"

#include <cmath>
#include <initializer_list>
#include <numbers>

#include "madelung/errors.hpp"

namespace madelung {

namespace {

struct Pair {
  double k, r;
};

// Moves a radius by `steps` ulps (negative: towards zero).
double step_ulps(double v, int steps) {
  for (int i = 0; i < std::abs(steps); ++i) v = std::nextafter(v, steps > 0 ? HUGE_VAL : 0.0);
  return v;
}

// (k, r) with k * r == pi in double arithmetic. pi / k does not always have
// an exact partner, so k is moved by up to 64 ulps (inside the rounding of
// the square root it came from) until one exists. Falls back to the closest
// product when none is found.
Pair exact_pair(double k0) {
  constexpr double pi = std::numbers::pi;
  Pair best{k0, pi / k0};
  double best_err = std::abs(k0 * best.r - pi);
  for (int dk = 0; dk <= 64; ++dk) {
    for (int sign : {1, -1}) {
      const double k = step_ulps(k0, sign * dk);
      const double r0 = pi / k;
      for (int dr = -4; dr <= 4; ++dr) {
        const double r = step_ulps(r0, dr);
        const double err = std::abs(k * r - pi);
        if (err == 0.0) return {k, r};
        if (err < best_err) {
          best = {k, r};
          best_err = err;
        }
      }
      if (dk == 0) break;
    }
  }
  return best;
}

}  // namespace

double sinc_normalization_integral() {
  // Cin(x) = sum_{n>=1} (-1)^{n+1} x^{2n} / (2n (2n)!)
  const double x2 = 4.0 * std::numbers::pi * std::numbers::pi;
  double term = 1.0;  // x^{2n} / (2n)!
  double cin = 0.0;
  for (int n = 1; n < 60; ++n) {
    term *= x2 / ((2.0 * n - 1.0) * (2.0 * n));
    const double t = term / (2.0 * n);
    cin += (n % 2 == 1) ? t : -t;
    if (t < 1e-18 * std::abs(cin)) break;
  }
  return 0.5 * cin;
}

SincLimit sinc_limit(const PhysicalParams& params, std::optional<double> energy,
                     std::optional<double> k, double s0) {
  if (energy.has_value() == k.has_value()) {
    throw ValidationError("energy", "give exactly one of energy and k");
  }
  SincLimit out;
  const double m = params.mass(), hbar = params.hbar();
  if (energy) {
    if (!(*energy > 0.0) || !std::isfinite(*energy)) {
      throw ValidationError("energy", "must be positive");
    }
    out.energy = *energy;
    out.k = std::sqrt(2.0 * m * *energy) / hbar;
  } else {
    if (!(*k > 0.0) || !std::isfinite(*k)) throw ValidationError("k", "must be positive");
    out.k = *k;
    out.energy = hbar * hbar * *k * *k / (2.0 * m);
  }
  const Pair pair = exact_pair(out.k);
  out.k = pair.k;
  out.r_inf = pair.r;
  out.a = 1.0 / std::sqrt(2.0 * std::numbers::pi * sinc_normalization_integral());
  out.s0 = s0;
  out.validate();
  return out;
}

SincLimit sinc_limit_from_energy(const PhysicalParams& params, double energy) {
  return sinc_limit(params, energy, std::nullopt);
}

SincLimit sinc_limit_from_wavenumber(const PhysicalParams& params, double k) {
  return sinc_limit(params, std::nullopt, k);
}

double sinc_residual(const SincLimit& limit, double r) {
  if (!(r >= 0.0) || !(r < limit.r_inf)) throw OutOfSupportError("radius outside the support");
  const double k = limit.k;
  const double x = k * r;
  if (x < 0.5) {
    // psi = a k f(x), f = sin x / x; residual = a k^3 (f'' + 2 f'/x + f).
    double f = 0.0, g = 0.0;  // g = f'' + 2 f' / x
    double fact = 1.0;        // (2n+1)!
    double pw = 1.0;          // x^{2n}
    double lower = 0.0;       // x^{2n-2}
    for (int n = 0; n < 12; ++n) {
      if (n > 0) fact *= (2.0 * n) * (2.0 * n + 1.0);
      const double sign = (n % 2 == 0) ? 1.0 : -1.0;
      f += sign * pw / fact;
      if (n > 0) g += sign * (2.0 * n * (2.0 * n - 1.0) + 4.0 * n) * lower / fact;
      lower = pw;
      pw *= x * x;
    }
    return limit.a * k * k * k * (g + f);
  }
  const double s = std::sin(x), c = std::cos(x);
  const double a = limit.a;
  const double psi = a * s / r;
  const double dpsi = a * (x * c - s) / (r * r);
  const double d2psi = a * (2.0 * s - 2.0 * x * c - x * x * s) / (r * r * r);
  return d2psi + 2.0 / r * dpsi + k * k * psi;
}

}  // namespace madelung
