// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "json.hpp"
#include "madelung/analysis.hpp"
#include "madelung/grid.hpp"
#include "madelung/kernels.hpp"
#include "madelung/residual.hpp"
#include "madelung/sinc.hpp"
#include "madelung/solver.hpp"
#include "madelung/sweep.hpp"
#include "oracle/amplitude_oracle.hpp"
#include "unit/maxent_perturbation.hpp"

using namespace madelung;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Collects the sub-checks of one criterion and a readable summary of the numbers.
class Check {
 public:
  void at_most(const std::string& what, double value, double limit) {
    record(what, value <= limit, value, "<=", limit);
  }
  void within(const std::string& what, double value, double lo, double hi) {
    const bool ok = value >= lo && value <= hi;
    if (!ok) pass_ = false;
    append(what + " = " + num(value) + " in [" + num(lo) + ", " + num(hi) + "]" + (ok ? "" : " !"));
  }
  void holds(const std::string& what, bool ok) {
    if (!ok) pass_ = false;
    append(what + (ok ? "" : " is false !"));
  }
  void note(const std::string& what, double value) { append(what + " = " + num(value)); }
  bool pass() const { return pass_; }
  const std::string& detail() const { return detail_; }

 private:
  static std::string num(double v) {
    std::ostringstream s;
    s.precision(3);
    s << v;
    return s.str();
  }
  void record(const std::string& what, bool ok, double v, const char* op, double lim) {
    if (!ok) pass_ = false;
    append(what + " = " + num(v) + " " + op + " " + num(lim) + (ok ? "" : " !"));
  }
  void append(const std::string& s) {
    if (!detail_.empty()) detail_ += "; ";
    detail_ += s;
  }
  bool pass_ = true;
  std::string detail_;
};

struct Criterion {
  std::string name;
  double time_limit;  // seconds; infinity when unconstrained
  std::function<void(Check&)> body;
};

const PhysicalParams kUnit = make_params(1, 1, 1);

RadialProfile solve(double beta) { return solve_radial(radial_request(kUnit.with_beta(beta), 1.0)); }

const nlohmann::json& golden() {
  static const nlohmann::json g = [] {
    std::ifstream f(MADELUNG_TEST_GOLDEN);
    return nlohmann::json::parse(f);
  }();
  return g;
}

std::vector<Criterion> criteria() {
  std::vector<Criterion> c;
  const double inf = std::numeric_limits<double>::infinity();
  const std::vector<double> canonical{0.5, 1, 2, 10, 100};

  c.push_back({"kinetic-energy identity K_bar = m/beta", 5.0, [=](Check& k) {
    double worst = 0.0;
    for (double b : canonical) worst = std::max(worst, rel(observables(solve(b)).k_bar_quadrature, 1.0 / b));
    k.at_most("max rel |K_bar - m/beta|", worst, 1e-6);
  }});

  c.push_back({"entropy identity H = beta U_bar + ln Z", inf, [=](Check& k) {
    double worst = 0.0, oracle_u = 0.0;
    for (double b : canonical) {
      const Observables o = observables(solve(b));
      worst = std::max(worst, std::abs(o.entropy - (b * o.u_bar + o.log_z)));
      const auto ref = oracle::amplitude_solution({b, 1.0, 2.0, 1.0, 1.0});
      oracle_u = std::max(oracle_u, rel(o.u_bar, ref.u_bar));
    }
    k.at_most("max |H - beta U_bar - ln Z|", worst, 1e-8);
    k.at_most("U_bar vs amplitude oracle (rel)", oracle_u, 1e-6);
  }});

  c.push_back({"self-trapping at beta = 1", 2.0, [](Check& k) {
    const RadialProfile p = solve(1.0);
    bool convex = true, rising = true, peaked = true;
    const std::vector<double> curv = p.curvature();
    for (std::size_t j = 0; j < p.nodes().size(); ++j) {
      convex = convex && curv[j] >= 0.0;
      rising = rising && p.du()[j] >= 0.0;
      if (j > 0) peaked = peaked && p.rho()[j] <= p.rho()[j - 1];
    }
    k.holds("U convex", convex);
    k.holds("dU/dr >= 0", rising);
    k.holds("rho maximal at the origin", peaked);
    k.holds("finite r_m", std::isfinite(p.r_m()) && p.r_m() > 0.0);
    const ResidualNorms a = maxent_residual(p, ResidualOptions{1e-3});
    const ResidualNorms b = maxent_residual(p, ResidualOptions{5e-4});
    k.at_most("PDE residual (h = 1e-3)", a.pde_scaled, 1e-4);
    k.within("residual ratio on halving h", a.pde_scaled / b.pde_scaled, 3.0, 5.0);
  }});

  c.push_back({"finite support and boundary behaviour", inf, [](Check& k) {
    const RadialProfile p = solve(1.0);
    k.at_most("rho(r_stop) / rho(0)", p.rho().back() / p.rho().front(), 1e-16);
    SolveRequest wide = radial_request(kUnit, 1.0);
    wide.control.blowup_threshold = 1.0 + 2.0 * kBlowupMargin;
    SolveRequest tight = radial_request(kUnit, 1.0);
    tight.control.rel_tol *= 0.5;
    tight.control.abs_tol *= 0.5;
    k.at_most("r_m change, threshold doubled", rel(solve_radial(wide).r_m(), p.r_m()), 1e-6);
    k.at_most("r_m change, tolerance halved", rel(solve_radial(tight).r_m(), p.r_m()), 1e-6);
    const auto ref = oracle::amplitude_solution({1.0, 1.0, 2.0, 1.0, 1.0});
    k.at_most("r_m vs amplitude oracle (rel)", rel(p.r_m(), ref.r_m), 1e-6);
  }});

  c.push_back({"beta-sweep trends over [1e-4, 100]", 60.0, [](Check& k) {
    const std::vector<double> betas = log_range(1e-4, 100.0, 13);
    const auto rows = beta_sweep(betas, 1.0, kUnit);
    const SweepSummary s = summarize(rows);
    bool u_dec = true;
    for (std::size_t i = 1; i < rows.size(); ++i) u_dec = u_dec && rows[i].u_bar < rows[i - 1].u_bar;
    k.holds("13 points all solved", rows.size() == 13 && s.failed_rows == 0);
    k.holds("r_m nondecreasing", s.r_m_nondecreasing);
    k.holds("r2_bar nondecreasing", s.r2_bar_nondecreasing);
    k.holds("r_m flattening", s.r_m_flattening);
    k.holds("r2_bar flattening", s.r2_bar_flattening);
    k.holds("U_bar decreasing", u_dec);
    k.holds("K_bar decreasing", s.k_bar_strictly_decreasing);
    const std::vector<double> small{1e-6, 1e-5, 1e-4};
    const auto tiny = beta_sweep(small, 1.0, kUnit);
    k.holds("r2_bar shrinking as beta -> 0",
            tiny[0].r2_bar < tiny[1].r2_bar && tiny[1].r2_bar < tiny[2].r2_bar);
    k.at_most("r2_bar(1e-6) / r2_bar(100)", tiny[0].r2_bar / rows.back().r2_bar, 1e-3);
  }});

  c.push_back({"stationarity balance and divergence-free flow", inf, [](Check& k) {
    const RadialProfile p = solve(1.0);
    const std::vector<double> w = angular_velocity_at_nodes(p);
    double worst = 0.0;
    for (std::size_t j = 1; j < w.size(); ++j) {
      const double du = p.du()[j];
      worst = std::max(worst, std::abs(p.nodes()[j] * w[j] * w[j] - du) / du);
    }
    k.at_most("max rel |m r omega^2 - dU/dr| at nodes", worst, 8 * kEps);
    const DivergenceReport d = velocity_divergence(p, 1e-3);
    k.at_most("scaled divergence (h = 1e-3)", d.sup_scaled, 1e-4);
    k.note("unscaled divergence", d.sup_abs);
  }});

  c.push_back({"sinc limit", inf, [](Check& k) {
    const SincLimit s = sinc_limit_from_energy(kUnit, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) worst = std::max(worst, std::abs(sinc_residual(s, s.r_inf * i / 1000.0)));
    k.at_most("radial equation residual", worst, 1e-12);
    k.holds("k r_inf == pi", s.k * s.r_inf == std::numbers::pi);
    const double quad = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [](double u) { return u == 0.0 ? 0.0 : std::sin(u) * std::sin(u) / u; }, 0.0, std::numbers::pi,
        15, 1e-15);
    k.at_most("|I - quadrature oracle|", std::abs(sinc_normalization_integral() - quad), 1e-10);
    k.at_most("|a^2 - 1/(2 pi I_oracle)|", std::abs(s.a * s.a - 1.0 / (2 * std::numbers::pi * quad)), 1e-10);
  }});

  c.push_back({"convergence to the sinc limit", 30.0, [](Check& k) {
    const double betas[] = {10.0, 50.0, 100.0};
    const ConvergenceReport rep = limit_convergence(betas, 1.0, kUnit);
    k.holds("sup distance strictly decreasing", rep.strictly_decreasing);
    k.at_most("r_m(100) vs pi/sqrt(2) (rel)", rel(rep.rows.back().r_m, std::numbers::pi / std::sqrt(2.0)), 0.02);
    const double tol = golden().at("limit_rel_tol").get<double>();
    double worst = 0.0;
    for (const auto& g : golden().at("limit")) {
      for (const auto& row : rep.rows) {
        if (row.beta == g.at("beta").get<double>()) {
          worst = std::max(worst, rel(row.sup_distance, g.at("sup_distance").get<double>()));
        }
      }
    }
    k.at_most("sup distances vs frozen oracle values (rel)", worst, tol);
  }});

  c.push_back({"rotation invariance of the 2D residual", inf, [](Check& k) {
    const AxisProfile ax = solve_cartesian_factor(cartesian_request(kUnit, 1.0));
    const Grid2D g = assemble_2d(ax, ax, GridSpec{0.01});
    const double base = maxent_residual(g).pde_scaled;
    const double rot = maxent_residual(rotate_grid(g, std::numbers::pi / 6)).pde_scaled;
    k.at_most("rotated / unrotated residual", rot / base, 10.0);
  }});

  c.push_back({"beta inversion round trip", inf, [](Check& k) {
    for (double b : {1.0, 5.0}) {
      const double e = observables(solve(b)).u_bar + 1.0 / b;
      const double back = invert_beta_for_energy(e, 1.0, kUnit);
      const std::string tag = "beta* = " + std::to_string(static_cast<int>(b));
      k.at_most(tag + " round trip (rel)", rel(back, b), 1e-6);
      k.holds(tag + " result > m/<E>", back > 1.0 / e);
    }
    for (double e : {2.0, 10.0, 1e3}) {
      k.holds("beta(" + std::to_string(static_cast<int>(e)) + ") > m/E",
              invert_beta_for_energy(e, 1.0, kUnit) > 1.0 / e);
    }
  }});

  c.push_back({"maximum-entropy first-order stationarity", inf, [](Check& k) {
    const testing::Perturbation pert(solve(1.0));
    std::mt19937_64 rng(20240601);
    const double eps = 1e-4;
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 100; ++i) worst = std::max(worst, pert.delta_entropy(pert.direction(rng), eps));
    // Any first-order term would be of size eps * |grad H . delta| ~ 1e-4; rounding is ~1e-14.
    k.at_most("max Delta H over 100 directions", worst, 1e-13);
  }});

  return c;
}

}  // namespace

int main() {
  std::cout << "kernels: " << kernels::active().name << "\n";
  int failed = 0;
  int index = 0;
  for (const Criterion& cr : criteria()) {
    ++index;
    Check k;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      cr.body(k);
    } catch (const std::exception& e) {
      k.holds(std::string("threw: ") + e.what(), false);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (std::isfinite(cr.time_limit)) k.at_most("runtime s", secs, cr.time_limit);
    if (!k.pass()) ++failed;
    std::cout << (k.pass() ? "PASS" : "FAIL") << " [" << index << "] " << cr.name << " (" << secs
              << " s): " << k.detail() << "\n";
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
