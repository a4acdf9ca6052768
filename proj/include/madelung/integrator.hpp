#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace madelung {

using State = std::vector<double>;

// First-order system y' = f(t, y). The right-hand side writes into dydt and
// must not keep state between calls.
struct OdeSystem {
  using Rhs = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

  std::size_t dimension = 0;
  Rhs rhs;
  // rhs has a removable 1/t singularity at t = 0; start with series_start.
  bool singular_origin = false;
};

struct StepControl {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double h_init = 1e-6;
  double h_min = 1e-300;
  // Absolute value of the monitored component at which integration stops.
  std::optional<double> blowup_threshold;
  std::size_t max_steps = 200000;

  void validate() const;
  friend bool operator==(const StepControl&, const StepControl&) = default;
};

enum class StopReason { reached_end, blowup_detected, step_underflow, max_steps };

std::string_view to_string(StopReason r);

struct Interval {
  double begin;
  double end;
};

// Every accepted step, in order.
struct Trajectory {
  std::vector<double> nodes;
  std::vector<State> states;
  StopReason stop_reason = StopReason::reached_end;

  std::size_t size() const noexcept { return nodes.size(); }
  const State& back() const { return states.back(); }
};

// Adaptive Dormand-Prince 5(4) integration from span.begin towards span.end.
//
// When a monitored component and a blow-up threshold are given, a step that
// would carry the component to or past the threshold is rejected and retried
// with a halved step; integration stops with blowup_detected once the last
// accepted value is within 1e-3 (relative) of the threshold, or once the step
// cannot shrink any further after a crossing was seen. Recorded monitored
// values therefore never exceed the threshold.
Trajectory integrate(const OdeSystem& system, std::span<const double> y0, Interval span,
                     const StepControl& control,
                     std::optional<std::size_t> monitor_index = std::nullopt);

// Taylor-advanced state at t_switch for systems singular at the origin.
State series_start(const OdeSystem& system, std::span<const double> y0,
                   const std::function<State(double)>& taylor, double t_switch);

}  // namespace madelung
