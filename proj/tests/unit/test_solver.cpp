#include <cmath>
#include <initializer_list>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "helpers.hpp"
#include "madelung/errors.hpp"
#include "madelung/fields.hpp"
#include "madelung/solver.hpp"
#include "oracle/amplitude_oracle.hpp"

using namespace madelung;
using testing::rel;

TEST_SUITE("solver") {
  TEST_CASE("cartesian factor at beta = 1 matches both oracles") {
    const AxisProfile ax = solve_cartesian_factor(cartesian_request(make_params(1, 1, 1)));
    const auto o = oracle::amplitude_solution({1.0, 1.0, 0.0, 1.0, 1.0});
    CHECK(rel(ax.half_width(), o.r_m) < 1e-8);
    CHECK(rel(ax.half_width(), testing::golden().at("cartesian")[0].at("half_width").get<double>()) <
          1e-6);
    CHECK(ax.extrapolated());
    CHECK(ax.half_width() > ax.nodes().back());
    CHECK(ax.u0() == 1.0);
    CHECK(ax.du().front() == 0.0);
    for (std::size_t i = 1; i < ax.nodes().size(); ++i) {
      CHECK(ax.u()[i] >= ax.u()[i - 1]);
      CHECK(ax.du()[i] >= ax.du()[i - 1]);
    }
  }

  TEST_CASE("cartesian half-width grows with beta") {
    const double i1 = solve_cartesian_factor(cartesian_request(make_params(1, 1, 1))).half_width();
    const double i2 = solve_cartesian_factor(cartesian_request(make_params(1, 1, 2))).half_width();
    CHECK(i2 > i1);
    CHECK(rel(i2, testing::golden().at("cartesian")[1].at("half_width").get<double>()) < 1e-6);
  }

  TEST_CASE("zero boundary value gives the zero solution without support") {
    const AxisProfile ax = solve_cartesian_factor(cartesian_request(make_params(1, 1, 1), 0.0));
    CHECK_FALSE(ax.has_support());
    CHECK(std::isinf(ax.half_width()));
    CHECK(AxisField(ax).value(3.0) == 0.0);
    const RadialProfile rp = solve_radial(radial_request(make_params(1, 1, 1), 0.0));
    CHECK_FALSE(rp.has_support());
    CHECK(std::isinf(rp.r_m()));
    for (double u : rp.u()) CHECK(u == 0.0);
  }

  TEST_CASE("negative boundary value and wrong geometry are rejected") {
    CHECK_THROWS_AS(solve_radial(radial_request(make_params(1, 1, 1), -1.0)), ValidationError);
    CHECK_THROWS_AS(solve_radial(cartesian_request(make_params(1, 1, 1))), ValidationError);
    CHECK_THROWS_AS(solve_cartesian_factor(radial_request(make_params(1, 1, 1))), ValidationError);
  }

  TEST_CASE("radial profile at beta = 1 matches the independent oracle and golden file") {
    const RadialProfile& p = testing::radial(1.0);
    const auto o = oracle::amplitude_solution({1.0, 1.0, 2.0, 1.0, 1.0});
    CHECK(rel(p.r_m(), o.r_m) < 1e-8);
    // ln Z = -beta u0 + ln Z~
    CHECK(std::abs(p.log_z() - (-1.0 + std::log(o.z_tilde))) < 1e-8);
    const auto& g = testing::golden_radial(1.0);
    CHECK(rel(p.r_m(), g.at("r_m").get<double>()) < 1e-6);
    CHECK(std::abs(p.log_z() - g.at("log_z").get<double>()) < 1e-6);
    CHECK(p.rho().front() == doctest::Approx(std::exp(-1.0) / p.z()).epsilon(1e-14));
  }

  TEST_CASE("golden support radii across beta and both variants") {
    for (double beta : {0.5, 2.0, 10.0, 100.0}) {
      CAPTURE(beta);
      CHECK(rel(testing::radial(beta).r_m(), testing::golden_radial(beta).at("r_m").get<double>()) <
            1e-6);
    }
    const RadialProfile planar =
        solve_radial(radial_request(make_params(1, 1, 1, LaplacianVariant::planar_radial)));
    const auto o = oracle::amplitude_solution({1.0, 1.0, 1.0, 1.0, 1.0});
    CHECK(rel(planar.r_m(), o.r_m) < 1e-8);
    CHECK(rel(planar.r_m(), testing::golden_radial(1.0, "planar-radial").at("r_m").get<double>()) <
          1e-6);
  }

  TEST_CASE("large beta: flat interior and a wall at the support edge") {
    const RadialProfile& p = testing::radial(100.0);
    const RadialField f(p);
    // Interior rise is O(1/beta); the wall is several times that.
    CHECK(f.value(0.5 * p.r_m()) - 1.0 < 1.0 / 100.0);
    CHECK(f.value(0.9 * p.r_m()) - 1.0 < 5.0 / 100.0);
    CHECK(f.value(0.999 * p.r_m()) - 1.0 > 10.0 / 100.0);
  }

  TEST_CASE("support estimate on a pure dominant-balance trajectory") {
    const PhysicalParams p = make_params(1, 1, 1);
    Trajectory t;
    for (double r : {0.5, 0.9, 0.99}) {
      t.nodes.push_back(r);
      t.states.push_back({-2.0 * std::log(1.0 - r), 2.0 / (1.0 - r)});
    }
    t.stop_reason = StopReason::blowup_detected;
    CHECK(std::abs(estimate_support(t, p) - 1.0) < 1e-3);
    t.stop_reason = StopReason::reached_end;
    CHECK_THROWS_AS(estimate_support(t, p), std::logic_error);
  }

  TEST_CASE("support radius is stable under tolerance halving and threshold doubling") {
    const PhysicalParams p = make_params(1, 1, 1);
    const RadialProfile& base = testing::radial(1.0);
    SolveRequest tight = radial_request(p);
    tight.control.rel_tol *= 0.5;
    tight.control.abs_tol *= 0.5;
    const RadialProfile t = solve_radial(tight);
    CHECK(rel(t.r_m(), base.r_m()) < 1e-6);
    CHECK(rel(t.z(), base.z()) < 1e-6);
    SolveRequest wide = radial_request(p);
    wide.control.blowup_threshold = 1.0 + 2.0 * kBlowupMargin;
    CHECK(rel(solve_radial(wide).r_m(), base.r_m()) < 1e-6);
  }

  TEST_CASE("density reconstruction on a synthetic uniform disk") {
    const PhysicalParams p = make_params(1, 1, 1);
    std::vector<double> nodes, u, du;
    for (int i = 0; i <= 10; ++i) {
      nodes.push_back(0.1 * i);
      u.push_back(0.0);
      du.push_back(0.0);
    }
    const RadialProfile raw(p, nodes, u, du, std::vector<double>(nodes.size(), 0.5), 1.0 / 0.5, std::log(2.0), 1.0);
    const RadialProfile prof = density_from_potential(raw);
    for (double r : prof.rho()) CHECK(r == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-14));
    CHECK(prof.z() == doctest::Approx(std::numbers::pi).epsilon(1e-14));
  }

  TEST_CASE("non-finite potential is rejected") {
    const PhysicalParams p = make_params(1, 1, 1);
    CHECK_THROWS_AS(RadialProfile::from_potential(p, {0.0, 0.5}, {1.0, NAN}, {0.0, 1.0}, 1.0),
                    ValidationError);
  }

  TEST_CASE("tail beyond the last node is negligible") {
    for (double beta : {0.1, 1.0, 10.0}) {
      const RadialProfile& p = testing::radial(beta);
      // Stops on the threshold u0 + 40/beta up to the event tolerance.
      CHECK(beta * (p.u().back() - 1.0) == doctest::Approx(40.0).epsilon(1e-3));
      CHECK(p.rho().back() < 1e-16 * p.rho().front());
    }
  }

  TEST_CASE("solved potentials are convex and nondecreasing, amplitudes concave") {
    for (double beta : {0.01, 1.0, 50.0}) {
      const RadialProfile& p = testing::radial(beta);
      for (std::size_t i = 1; i < p.nodes().size(); ++i) {
        CHECK(p.du()[i] >= 0.0);
        CHECK(p.du()[i] - p.du()[i - 1] >= -1e-10);
        CHECK(p.rho()[i] <= p.rho()[i - 1]);
      }
    }
    // sqrt(rho) of an axis factor has nonpositive second differences on a uniform grid.
    const AxisProfile ax = solve_cartesian_factor(cartesian_request(make_params(1, 1, 1)));
    const AxisField f(ax);
    const double h = 1e-3;
    const double beta = 1.0;
    auto amp = [&](double x) { return std::exp(-0.5 * beta * (f.value(x) - 1.0)); };
    int violations = 0;
    for (double x = -0.95 * ax.half_width(); x < 0.95 * ax.half_width(); x += h) {
      if (amp(x + h) - 2 * amp(x) + amp(x - h) > 1e-12) ++violations;
    }
    CHECK(violations == 0);
  }

  TEST_CASE("density slope vanishes towards the support edge") {
    const RadialProfile& p = testing::radial(1.0);
    const std::size_t n = p.nodes().size();
    double prev = INFINITY;
    for (std::size_t i = n - 6; i + 1 < n; ++i) {
      const double slope = std::abs((p.rho()[i + 1] - p.rho()[i]) / (p.nodes()[i + 1] - p.nodes()[i]));
      CHECK(slope < prev);
      prev = slope;
    }
  }

  TEST_CASE("scaling symmetry: U -> lambda U, r -> r / sqrt(lambda), beta -> beta / lambda") {
    const double lambda = 4.0;
    const RadialProfile& base = testing::radial(1.0);
    const RadialProfile scaled =
        solve_radial(radial_request(make_params(1, 1, 1.0 / lambda), lambda * 1.0));
    CHECK(rel(scaled.r_m(), base.r_m() / std::sqrt(lambda)) < 1e-8);
    const RadialField fb(base), fs(scaled);
    for (double s : {0.1, 0.4, 0.8}) {
      const double r = s * base.r_m();
      CHECK(rel(fs.value(r / std::sqrt(lambda)), lambda * fb.value(r)) < 1e-8);
    }
  }

  TEST_CASE("beta far outside double resolution is refused") {
    CHECK_THROWS_AS(solve_radial(radial_request(make_params(1, 1, 1e12))), SolverError);
    CHECK_THROWS_AS(solve_radial(radial_request(make_params(1, 1, 1e-300))), SolverError);
  }
}
