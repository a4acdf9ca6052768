#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "madelung/integrator.hpp"
#include "madelung/params.hpp"
#include "madelung/profiles.hpp"

namespace madelung {

struct SweepRow {
  double beta = 0.0;
  double u0 = 0.0;
  bool ok = false;
  // Diagnostic of a failed solve; empty when ok.
  std::string error;
  double r_m = 0.0;
  double r2_bar = 0.0;
  double z = 0.0;
  double log_z = 0.0;
  double u_bar = 0.0;
  double k_bar_quadrature = 0.0;
  double k_bar_closed_form = 0.0;
  double energy = 0.0;
  double entropy = 0.0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

// Trends over the rows that solved.
struct SweepSummary {
  bool r_m_nondecreasing = true;
  bool r2_bar_nondecreasing = true;
  bool k_bar_strictly_decreasing = true;
  bool u_bar_nonincreasing = true;
  // Slope in ln(beta) over the last interval is below 10% of the largest one.
  bool r_m_flattening = false;
  bool r2_bar_flattening = false;
  std::size_t failed_rows = 0;

  bool all() const {
    return r_m_nondecreasing && r2_bar_nondecreasing && k_bar_strictly_decreasing &&
           u_bar_nonincreasing;
  }
  friend bool operator==(const SweepSummary&, const SweepSummary&) = default;
};

struct SweepOptions {
  StepControl control{};
  // Worker threads; 0 picks the hardware concurrency. Output order is the input order.
  unsigned threads = 1;
};

// One radial solve per beta (positive, ascending) with mass, hbar and the
// variant taken from the template. A failing beta becomes a row with ok = false.
std::vector<SweepRow> beta_sweep(std::span<const double> betas, double u0,
                                 const PhysicalParams& params_template,
                                 const SweepOptions& opts = {});
SweepSummary summarize(std::span<const SweepRow> rows);

// n log-spaced values from lo to hi inclusive.
std::vector<double> log_range(double lo, double hi, std::size_t n);

struct ConvergenceRow {
  double beta = 0.0;
  double r_m = 0.0;
  double sup_distance = 0.0;
  friend bool operator==(const ConvergenceRow&, const ConvergenceRow&) = default;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  SincLimit limit;
  bool strictly_decreasing = false;
};

// Sup-norm distance between rho(r; beta) and the sinc density with energy u0,
// sampled at `samples` evenly spaced radii covering both supports.
ConvergenceReport limit_convergence(std::span<const double> betas, double u0,
                                    const PhysicalParams& params_template,
                                    std::size_t samples = 20001);

// <E>(beta) = U_bar(beta) + m / beta for a radial solve at (beta, u0).
double mean_energy(const PhysicalParams& params, double u0);

// beta with <E>(beta) = target, to 1e-12 relative in beta. <E> decreases from
// +inf towards u0 as beta grows, so targets <= u0 (or needing beta > 1e8)
// raise NoSolutionError carrying the feasible energy range.
double invert_beta_for_energy(double target_energy, double u0,
                              const PhysicalParams& params_template);

}  // namespace madelung
