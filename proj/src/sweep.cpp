#include "madelung/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include <boost/math/tools/roots.hpp>

#include "madelung/analysis.hpp"
#include "madelung/errors.hpp"
#include "madelung/fields.hpp"
#include "madelung/sinc.hpp"
#include "madelung/solver.hpp"

namespace madelung {

namespace {

constexpr double kBetaCeiling = 1e8;

SweepRow solve_row(double beta, double u0, const PhysicalParams& tmpl, const StepControl& ctl) {
  SweepRow row;
  row.beta = beta;
  row.u0 = u0;
  row.k_bar_closed_form = tmpl.mass() / beta;
  try {
    SolveRequest req = radial_request(tmpl.with_beta(beta), u0);
    req.control = ctl;
    const RadialProfile prof = solve_radial(req);
    const Observables o = observables(prof);
    row.r_m = o.r_m;
    row.r2_bar = o.r2_bar;
    row.z = o.z;
    row.log_z = o.log_z;
    row.u_bar = o.u_bar;
    row.k_bar_quadrature = o.k_bar_quadrature;
    row.energy = o.energy;
    row.entropy = o.entropy;
    row.ok = true;
  } catch (const std::exception& e) {
    row.error = e.what();
    row.r_m = row.r2_bar = row.z = row.log_z = row.u_bar = row.k_bar_quadrature = row.energy =
        row.entropy = std::numeric_limits<double>::quiet_NaN();
  }
  return row;
}

bool flattening(const std::vector<double>& beta, const std::vector<double>& v) {
  if (v.size() < 3) return false;
  double largest = 0.0, last = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    last = (v[i + 1] - v[i]) / std::log(beta[i + 1] / beta[i]);
    largest = std::max(largest, last);
  }
  return largest > 0.0 && last < 0.1 * largest;
}

}  // namespace

std::vector<double> log_range(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi >= lo)) throw ValidationError("beta", "need 0 < lo <= hi");
  if (n == 0) throw ValidationError("n", "must be positive");
  if (n == 1) return {lo};
  std::vector<double> out(n);
  const double a = std::log10(lo), b = std::log10(hi);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<SweepRow> beta_sweep(std::span<const double> betas, double u0,
                                 const PhysicalParams& params_template, const SweepOptions& opts) {
  for (std::size_t i = 0; i < betas.size(); ++i) {
    if (!(betas[i] > 0.0) || !std::isfinite(betas[i])) {
      throw ValidationError("beta", "sweep values must be positive");
    }
    if (i > 0 && !(betas[i] > betas[i - 1])) {
      throw ValidationError("beta", "sweep values must be ascending");
    }
  }
  std::vector<SweepRow> rows(betas.size());
  unsigned workers = opts.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                       : opts.threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, betas.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < betas.size(); i = next++) {
      rows[i] = solve_row(betas[i], u0, params_template, opts.control);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
  }
  return rows;
}

SweepSummary summarize(std::span<const SweepRow> rows) {
  SweepSummary s;
  std::vector<double> beta, r_m, r2;
  const SweepRow* prev = nullptr;
  for (const SweepRow& row : rows) {
    if (!row.ok) {
      ++s.failed_rows;
      continue;
    }
    if (prev) {
      s.r_m_nondecreasing &= row.r_m >= prev->r_m;
      s.r2_bar_nondecreasing &= row.r2_bar >= prev->r2_bar;
      s.k_bar_strictly_decreasing &= row.k_bar_quadrature < prev->k_bar_quadrature;
      s.u_bar_nonincreasing &= row.u_bar <= prev->u_bar;
    }
    beta.push_back(row.beta);
    r_m.push_back(row.r_m);
    r2.push_back(row.r2_bar);
    prev = &row;
  }
  s.r_m_flattening = flattening(beta, r_m);
  s.r2_bar_flattening = flattening(beta, r2);
  return s;
}

ConvergenceReport limit_convergence(std::span<const double> betas, double u0,
                                    const PhysicalParams& params_template, std::size_t samples) {
  if (!(u0 > 0.0)) throw ValidationError("u0", "must be positive");
  if (samples < 2) throw ValidationError("samples", "need at least two");
  ConvergenceReport rep;
  rep.limit = sinc_limit_from_energy(params_template, u0);
  for (double beta : betas) {
    const RadialProfile prof = solve_radial(radial_request(params_template.with_beta(beta), u0));
    const RadialField field(prof);
    const double end = std::max(prof.r_m(), rep.limit.r_inf);
    double sup = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
      const double r = end * static_cast<double>(i) / static_cast<double>(samples - 1);
      sup = std::max(sup, std::abs(field.density(r) - rep.limit.density(r)));
    }
    rep.rows.push_back({beta, prof.r_m(), sup});
  }
  rep.strictly_decreasing = rep.rows.size() >= 2;
  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    rep.strictly_decreasing &= rep.rows[i].sup_distance < rep.rows[i - 1].sup_distance;
  }
  return rep;
}

double mean_energy(const PhysicalParams& params, double u0) {
  return observables(solve_radial(radial_request(params, u0))).energy;
}

double invert_beta_for_energy(double target_energy, double u0,
                              const PhysicalParams& params_template) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (!(target_energy > 0.0) || !std::isfinite(target_energy)) {
    throw ValidationError("target_energy", "must be positive and finite");
  }
  if (!(u0 > 0.0)) throw ValidationError("u0", "must be positive");
  if (!(target_energy > u0)) {
    throw NoSolutionError("target energy at or below the large-beta limit u0", u0, inf);
  }
  const double m = params_template.mass();
  auto excess = [&](double beta) {
    return mean_energy(params_template.with_beta(beta), u0) - target_energy;
  };
  const double lo = m / target_energy * (1.0 + 1e-9);
  double hi = 2.0 * lo;
  while (excess(hi) > 0.0) {
    hi *= 2.0;
    if (hi > kBetaCeiling) {
      throw NoSolutionError("target energy needs beta above 1e8",
                            mean_energy(params_template.with_beta(kBetaCeiling), u0), inf);
    }
  }
  const auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-12 * std::abs(b); };
  const auto [a, b] = boost::math::tools::bisect(excess, lo, hi, tol);
  return 0.5 * (a + b);
}

}  // namespace madelung
