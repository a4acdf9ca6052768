#include "madelung/integrator.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "madelung/errors.hpp"

namespace madelung {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
// b - b_hat
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 5.0;
constexpr double kEventRelTol = 1e-3;

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

class Stepper {
 public:
  explicit Stepper(const OdeSystem& sys)
      : sys_(sys), n_(sys.dimension), k_(7, State(n_)), tmp_(n_), ynew_(n_), err_(n_) {}

  // Fills ynew_ and err_ for a step of size h from (t, y); k_[0] must hold f(t, y).
  void attempt(double t, std::span<const double> y, double h) {
    auto stage = [&](std::size_t out, double ct, auto&& combine) {
      for (std::size_t i = 0; i < n_; ++i) tmp_[i] = y[i] + h * combine(i);
      sys_.rhs(t + ct * h, tmp_, k_[out]);
    };
    stage(1, c2, [&](std::size_t i) { return a21 * k_[0][i]; });
    stage(2, c3, [&](std::size_t i) { return a31 * k_[0][i] + a32 * k_[1][i]; });
    stage(3, c4, [&](std::size_t i) {
      return a41 * k_[0][i] + a42 * k_[1][i] + a43 * k_[2][i];
    });
    stage(4, c5, [&](std::size_t i) {
      return a51 * k_[0][i] + a52 * k_[1][i] + a53 * k_[2][i] + a54 * k_[3][i];
    });
    stage(5, 1.0, [&](std::size_t i) {
      return a61 * k_[0][i] + a62 * k_[1][i] + a63 * k_[2][i] + a64 * k_[3][i] +
             a65 * k_[4][i];
    });
    for (std::size_t i = 0; i < n_; ++i) {
      ynew_[i] = y[i] + h * (b1 * k_[0][i] + b3 * k_[2][i] + b4 * k_[3][i] + b5 * k_[4][i] +
                             b6 * k_[5][i]);
    }
    sys_.rhs(t + h, ynew_, k_[6]);
    for (std::size_t i = 0; i < n_; ++i) {
      err_[i] = h * (e1 * k_[0][i] + e3 * k_[2][i] + e4 * k_[3][i] + e5 * k_[4][i] +
                     e6 * k_[5][i] + e7 * k_[6][i]);
    }
  }

  double error_norm(std::span<const double> y, const StepControl& c) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double sc = c.abs_tol + c.rel_tol * std::max(std::abs(y[i]), std::abs(ynew_[i]));
      const double q = err_[i] / sc;
      acc += q * q;
    }
    return std::sqrt(acc / static_cast<double>(n_));
  }

  void initial_derivative(double t, std::span<const double> y) { sys_.rhs(t, y, k_[0]); }
  // First-same-as-last: the derivative at the accepted point becomes stage 0.
  void accept() { std::swap(k_[0], k_[6]); }

  const State& ynew() const { return ynew_; }
  const State& derivative() const { return k_[0]; }
  bool trial_finite() const { return all_finite(ynew_) && all_finite(err_); }

 private:
  const OdeSystem& sys_;
  std::size_t n_;
  std::vector<State> k_;
  State tmp_, ynew_, err_;
};

}  // namespace

std::string_view to_string(StopReason r) {
  switch (r) {
    case StopReason::reached_end: return "reached-end";
    case StopReason::blowup_detected: return "blowup-detected";
    case StopReason::step_underflow: return "step-underflow";
    case StopReason::max_steps: return "max-steps";
  }
  return "unknown";
}

void StepControl::validate() const {
  if (!(rel_tol > 0.0)) throw ValidationError("rel_tol", "must be positive");
  if (!(abs_tol > 0.0)) throw ValidationError("abs_tol", "must be positive");
  if (!(h_min > 0.0)) throw ValidationError("h_min", "must be positive");
  if (!(h_init >= h_min)) throw ValidationError("h_init", "must be >= h_min");
  if (max_steps == 0) throw ValidationError("max_steps", "must be positive");
  if (blowup_threshold && !std::isfinite(*blowup_threshold)) {
    throw ValidationError("blowup_threshold", "must be finite");
  }
}

Trajectory integrate(const OdeSystem& system, std::span<const double> y0, Interval span,
                     const StepControl& control, std::optional<std::size_t> monitor_index) {
  control.validate();
  if (system.dimension == 0 || !system.rhs) {
    throw ValidationError("system", "dimension must be positive and rhs set");
  }
  if (y0.size() != system.dimension) {
    throw ValidationError("y0", "dimension does not match the system");
  }
  if (!(span.end > span.begin)) throw ValidationError("t_span", "must be a nonempty interval");
  if (monitor_index && *monitor_index >= system.dimension) {
    throw ValidationError("monitor_index", "out of range");
  }
  const bool watch = monitor_index.has_value() && control.blowup_threshold.has_value();
  const std::size_t mi = monitor_index.value_or(0);
  const double threshold = control.blowup_threshold.value_or(0.0);
  if (watch && !(y0[mi] < threshold)) {
    throw ValidationError("y0", "monitored component already at or above the threshold");
  }

  Trajectory out;
  out.nodes.push_back(span.begin);
  out.states.emplace_back(y0.begin(), y0.end());

  Stepper stepper(system);
  double t = span.begin;
  State y(y0.begin(), y0.end());
  stepper.initial_derivative(t, y);

  double h = std::min(control.h_init, span.end - span.begin);
  bool crossing_seen = false;
  std::size_t steps = 0;

  while (true) {
    if (steps >= control.max_steps) {
      out.stop_reason = StopReason::max_steps;
      return out;
    }
    const double remaining = span.end - t;
    bool last = false;
    if (h >= remaining) {
      h = remaining;
      last = true;
    }
    if (h < control.h_min || t + h == t) {
      out.stop_reason =
          crossing_seen ? StopReason::blowup_detected : StopReason::step_underflow;
      return out;
    }
    ++steps;
    stepper.attempt(t, y, h);

    if (!stepper.trial_finite()) {
      h *= 0.25;
      continue;
    }
    const double err = stepper.error_norm(y, control);
    if (err > 1.0) {
      h *= std::max(kMinFactor, kSafety * std::pow(err, -0.2));
      continue;
    }
    if (watch && stepper.ynew()[mi] >= threshold) {
      crossing_seen = true;
      h *= 0.5;
      continue;
    }

    t = last ? span.end : t + h;
    y = stepper.ynew();
    stepper.accept();
    out.nodes.push_back(t);
    out.states.push_back(y);

    if (last) {
      out.stop_reason = StopReason::reached_end;
      return out;
    }
    if (watch && crossing_seen &&
        threshold - y[mi] <= kEventRelTol * std::max(1.0, std::abs(threshold))) {
      out.stop_reason = StopReason::blowup_detected;
      return out;
    }
    const double factor =
        err == 0.0 ? kMaxFactor
                   : std::clamp(kSafety * std::pow(err, -0.2), kMinFactor, kMaxFactor);
    // After a threshold crossing the step is only allowed to shrink.
    h *= crossing_seen ? std::min(1.0, factor) : factor;
  }
}

State series_start(const OdeSystem& system, std::span<const double> y0,
                   const std::function<State(double)>& taylor, double t_switch) {
  if (!(t_switch > 0.0) || !std::isfinite(t_switch)) {
    throw ValidationError("t_switch", "must be positive");
  }
  if (y0.size() != system.dimension) {
    throw ValidationError("y0", "dimension does not match the system");
  }
  State s = taylor(t_switch);
  if (s.size() != system.dimension) {
    throw ValidationError("taylor", "returned a state of the wrong dimension");
  }
  return s;
}

}  // namespace madelung
