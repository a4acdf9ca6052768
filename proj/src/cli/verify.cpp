#include "verify.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "madelung/analysis.hpp"
#include "madelung/cli.hpp"
#include "madelung/errors.hpp"
#include "madelung/fields.hpp"
#include "madelung/grid.hpp"
#include "madelung/residual.hpp"
#include "madelung/serialize.hpp"
#include "madelung/sinc.hpp"
#include "madelung/solver.hpp"
#include "madelung/sweep.hpp"

namespace madelung::cli {

namespace {

struct Check {
  std::string name;
  double value;
  std::string bound;
  bool pass;
};

class Table {
 public:
  // value <= limit
  void at_most(std::string name, double value, double limit) {
    rows_.push_back({std::move(name), value, fmt::format("<= {:.3g}", limit), value <= limit});
  }
  void within(std::string name, double value, double lo, double hi) {
    rows_.push_back({std::move(name), value, fmt::format("in [{:.3g}, {:.3g}]", lo, hi),
                     value >= lo && value <= hi});
  }
  void holds(std::string name, bool ok) {
    rows_.push_back({std::move(name), ok ? 1.0 : 0.0, "true", ok});
  }
  // Runs f; an exception fails the check named `name`.
  void guard(const std::string& name, const std::function<void()>& f) {
    try {
      f();
    } catch (const std::exception& e) {
      rows_.push_back({name + " (" + e.what() + ")", std::numeric_limits<double>::quiet_NaN(),
                       "no error", false});
    }
  }

  int print(std::ostream& out, std::ostream& err) const {
    std::size_t width = 10;
    for (const auto& r : rows_) width = std::max(width, r.name.size());
    int failed = 0;
    for (const auto& r : rows_) {
      out << fmt::format("{:<4}  {:<{}}  {:>14.6e}  {}\n", r.pass ? "PASS" : "FAIL", r.name,
                         width, r.value, r.bound);
      failed += r.pass ? 0 : 1;
    }
    if (failed) {
      err << fmt::format("{} of {} checks failed:\n", failed, rows_.size());
      for (const auto& r : rows_) {
        if (!r.pass) err << "  " << r.name << "\n";
      }
    } else {
      out << fmt::format("all {} checks passed\n", rows_.size());
    }
    return failed;
  }

 private:
  std::vector<Check> rows_;
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

void check_profile(Table& t, const RadialProfile& prof) {
  const auto& x = prof.nodes();
  const auto& du = prof.du();
  const auto& rho = prof.rho();
  bool slope_ok = du.front() == 0.0, convex = true, peaked = true;
  for (std::size_t j = 1; j < x.size(); ++j) {
    slope_ok &= du[j] >= 0.0;
    convex &= du[j] >= du[j - 1] - 1e-10 * (1.0 + std::abs(du[j - 1]));
    peaked &= rho[j] <= rho[j - 1];
  }
  t.holds("dU/dr >= 0 with dU/dr(0) = 0", slope_ok);
  t.holds("U convex (slope nondecreasing)", convex);
  t.holds("rho nonincreasing, peaked at r = 0", peaked);
  t.holds("finite support r_m", std::isfinite(prof.r_m()) && prof.r_m() > prof.r_stop());
  t.at_most("rho(r_stop) / rho(0)", rho.back() / rho.front(), 1e-16);
}

}  // namespace

int run_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
  if (!(opts.beta > 0.0)) throw ValidationError("beta", "must be positive");
  json golden;
  {
    std::ifstream f(opts.golden);
    if (!f) throw ValidationError("golden", "cannot read " + opts.golden);
    try {
      f >> golden;
    } catch (const std::exception& e) {
      throw ValidationError("golden", std::string("malformed file: ") + e.what());
    }
  }

  const double beta = opts.beta;
  const double u0 = 1.0;
  const PhysicalParams p = make_params(1.0, 1.0, beta);
  Table t;

  t.guard("radial solve", [&] {
    const RadialProfile prof = solve_radial(radial_request(p, u0));
    check_profile(t, prof);

    const Observables o = observables(prof);
    t.at_most("K_bar quadrature vs m/beta (rel)", rel(o.k_bar_quadrature, p.mass() / beta), 1e-6);
    t.at_most("H - (beta U_bar + ln Z)", std::abs(o.entropy - (beta * o.u_bar + o.log_z)), 1e-8);
    t.holds("<E> = U_bar + K_bar exactly", o.energy == o.u_bar + o.k_bar);
    t.holds("U_bar > 0 and K_bar > 0", o.u_bar > 0.0 && o.k_bar_quadrature > 0.0);

    const ResidualNorms res = maxent_residual(prof);
    t.at_most("PDE residual, scaled (h = 1e-3)", res.pde_scaled, 1e-4);
    t.at_most("self-consistency residual (h = 1e-3)", res.self_consistency, 1e-4);
    if (!opts.quick) {
      ResidualOptions half;
      half.h = 5e-4;
      const ResidualNorms res2 = maxent_residual(prof, half);
      t.within("PDE residual ratio on halving h", res.pde_scaled / res2.pde_scaled, 3.0, 5.0);
    }

    double stat = 0.0;
    const std::vector<double> omega = angular_velocity_at_nodes(prof);
    for (std::size_t j = 1; j < prof.nodes().size(); ++j) {
      const double r = prof.nodes()[j], du = prof.du()[j];
      const double scale = std::max(du, std::numeric_limits<double>::min());
      stat = std::max(stat, std::abs(p.mass() * r * omega[j] * omega[j] - du) / scale);
    }
    t.at_most("m r omega^2 - dU/dr at nodes (rel)", stat, 8 * std::numeric_limits<double>::epsilon());
    const DivergenceReport div = velocity_divergence(prof, 1e-3);
    t.at_most(fmt::format("velocity divergence, scaled (h = {:g})", div.h), div.sup_scaled, 1e-4);

    if (!opts.quick) {
      SolveRequest tight = radial_request(p, u0);
      tight.control.rel_tol *= 0.5;
      tight.control.abs_tol *= 0.5;
      t.at_most("r_m change on tolerance halving (rel)",
                rel(solve_radial(tight).r_m(), prof.r_m()), 1e-6);
      SolveRequest wide = radial_request(p, u0);
      wide.control.blowup_threshold = u0 + 2.0 * kBlowupMargin / beta;
      t.at_most("r_m change on threshold doubling (rel)",
                rel(solve_radial(wide).r_m(), prof.r_m()), 1e-6);
    }

    const double tol = golden.at("rel_tol").get<double>();
    bool matched = false;
    for (const auto& c : golden.at("radial")) {
      if (c.at("beta").get<double>() != beta || c.at("variant").get<std::string>() != "paper-radial") {
        continue;
      }
      matched = true;
      t.at_most("golden r_m (rel)", rel(prof.r_m(), c.at("r_m").get<double>()), tol);
      t.at_most("golden ln Z (abs)", std::abs(o.log_z - c.at("log_z").get<double>()), tol);
      t.at_most("golden U_bar (rel)", rel(o.u_bar, c.at("u_bar").get<double>()), tol);
      t.at_most("golden r2_bar (rel)", rel(o.r2_bar, c.at("r2_bar").get<double>()), tol);
      t.at_most("golden entropy (abs)", std::abs(o.entropy - c.at("entropy").get<double>()), tol);
    }
    for (const auto& c : golden.at("cartesian")) {
      if (c.at("beta").get<double>() != beta) continue;
      matched = true;
      const AxisProfile ax = solve_cartesian_factor(cartesian_request(p, u0));
      t.at_most("golden cartesian i_m (rel)",
                rel(ax.half_width(), c.at("half_width").get<double>()), tol);
    }
    if (!matched) out << fmt::format("note: golden file has no entry for beta = {:g}\n", beta);
  });

  t.guard("sinc limit", [&] {
    const SincLimit s = sinc_limit_from_energy(p, u0);
    t.holds("k r_inf == pi", s.k * s.r_inf == std::numbers::pi);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      worst = std::max(worst, std::abs(sinc_residual(s, s.r_inf * i / 1000.0)));
    }
    t.at_most("sinc radial equation residual", worst, 1e-12);
    const double quad = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [](double v) { return v == 0.0 ? 0.0 : std::sin(v) * std::sin(v) / v; }, 0.0,
        std::numbers::pi, 15, 1e-14);
    t.at_most("sinc normalization integral vs quadrature",
              std::abs(sinc_normalization_integral() - quad), 1e-10);
    t.at_most("golden sinc integral",
              std::abs(sinc_normalization_integral() - golden.at("sinc_integral").get<double>()),
              1e-10);
  });

  if (!opts.quick) {
    t.guard("beta sweep", [&] {
      const std::vector<double> betas = log_range(1e-4, 100.0, 13);
      const auto rows = beta_sweep(betas, u0, p);
      const SweepSummary s = summarize(rows);
      double kbar = 0.0;
      for (const auto& r : rows) kbar = std::max(kbar, rel(r.k_bar_quadrature, r.k_bar_closed_form));
      t.holds("sweep: every beta solved", s.failed_rows == 0);
      t.holds("sweep: r_m nondecreasing", s.r_m_nondecreasing);
      t.holds("sweep: r2_bar nondecreasing", s.r2_bar_nondecreasing);
      t.holds("sweep: K_bar strictly decreasing", s.k_bar_strictly_decreasing);
      t.holds("sweep: U_bar nonincreasing", s.u_bar_nonincreasing);
      t.holds("sweep: r_m flattening at large beta", s.r_m_flattening);
      t.at_most("sweep: r2_bar(1e-4) / r2_bar(100)", rows.front().r2_bar / rows.back().r2_bar, 1e-2);
      t.at_most("sweep: worst K_bar identity (rel)", kbar, 1e-6);
    });
    t.guard("limit convergence", [&] {
      const double betas[] = {10.0, 50.0, 100.0};
      const ConvergenceReport rep = limit_convergence(betas, u0, p);
      t.holds("sup |rho - rho_inf| strictly decreasing", rep.strictly_decreasing);
      t.at_most("r_m(100) vs pi/sqrt(2) (rel)", rel(rep.rows.back().r_m, rep.limit.r_inf), 0.02);
      for (const auto& g : golden.at("limit")) {
        for (const auto& row : rep.rows) {
          if (row.beta != g.at("beta").get<double>()) continue;
          t.at_most(fmt::format("golden sup distance beta = {:g} (rel)", row.beta),
                    rel(row.sup_distance, g.at("sup_distance").get<double>()),
                    golden.at("limit_rel_tol").get<double>());
        }
      }
    });
    t.guard("beta inversion", [&] {
      const double e = mean_energy(p, u0);
      const double back = invert_beta_for_energy(e, u0, p);
      t.at_most("invert_beta round trip (rel)", rel(back, beta), 1e-6);
      t.holds("returned beta > m / <E>", back > p.mass() / e);
    });
    t.guard("rotation", [&] {
      const AxisProfile ax = solve_cartesian_factor(cartesian_request(p, u0));
      const Grid2D g = assemble_2d(ax, ax, GridSpec{0.01});
      const double base = maxent_residual(g).pde_scaled;
      const double rot = maxent_residual(rotate_grid(g, std::numbers::pi / 6)).pde_scaled;
      t.at_most("rotated / unrotated grid residual", rot / base, 10.0);
      t.at_most("mixed difference d2U/dxdy", mixed_difference_norm(g), 1e-6);
    });
  }

  return t.print(out, err) == 0 ? kSuccess : kComputationFailed;
}

}  // namespace madelung::cli
