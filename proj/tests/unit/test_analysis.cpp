#include <cmath>
#include <initializer_list>
#include <numbers>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "madelung/analysis.hpp"
#include "madelung/errors.hpp"
#include "madelung/fields.hpp"
#include "maxent_perturbation.hpp"

using namespace madelung;
using testing::rel;

TEST_SUITE("analysis") {
  TEST_CASE("kinetic energy identity K_bar = m / beta") {
    for (double beta : {0.5, 1.0, 2.0, 10.0, 100.0}) {
      CAPTURE(beta);
      const Observables o = observables(testing::radial(beta));
      CHECK(o.k_bar == 1.0 / beta);
      CHECK(rel(o.k_bar_quadrature, 1.0 / beta) < 1e-6);
    }
  }

  TEST_CASE("mass enters the kinetic identity linearly") {
    const RadialProfile p = solve_radial(radial_request(make_params(2.0, 1.0, 1.0)));
    const Observables o = observables(p);
    CHECK(rel(o.k_bar_quadrature, 2.0) < 1e-6);
  }

  TEST_CASE("entropy identity and energy decomposition") {
    for (double beta : {0.5, 1.0, 2.0, 10.0, 100.0}) {
      const Observables o = observables(testing::radial(beta));
      CHECK(std::abs(o.entropy - (beta * o.u_bar + o.log_z)) < 1e-8);
      CHECK(o.energy == o.u_bar + o.k_bar);
      CHECK_NOTHROW(o.validate());
    }
  }

  TEST_CASE("observables agree with the golden file") {
    for (double beta : {0.5, 1.0, 2.0, 10.0, 100.0}) {
      CAPTURE(beta);
      const auto& g = testing::golden_radial(beta);
      const Observables o = observables(testing::radial(beta));
      CHECK(rel(o.u_bar, g.at("u_bar").get<double>()) < 1e-6);
      CHECK(rel(o.r2_bar, g.at("r2_bar").get<double>()) < 1e-6);
      CHECK(std::abs(o.entropy - g.at("entropy").get<double>()) < 1e-6);
    }
  }

  TEST_CASE("unnormalized or unsupported profiles are rejected") {
    const RadialProfile& p = testing::radial(1.0);
    std::vector<double> rho = p.rho();
    for (double& r : rho) r *= 1.01;
    const RadialProfile off(p.params(), p.nodes(), p.u(), p.du(), rho, p.z() / 1.01,
                            p.log_z() - std::log(1.01), p.r_m());
    CHECK_THROWS_AS(observables(off), ValidationError);
    CHECK_THROWS_AS(observables(RadialProfile::unsupported(make_params(1, 1, 1))), ValidationError);
  }

  TEST_CASE("angular velocity at the origin and stationarity at the nodes") {
    const RadialProfile& p = testing::radial(1.0);
    CHECK(angular_velocity(p, 0.0) == doctest::Approx(std::sqrt(4.0 / 3.0)).epsilon(1e-14));
    CHECK(angular_velocity(p, 1e-7) == doctest::Approx(std::sqrt(4.0 / 3.0)).epsilon(1e-6));
    const std::vector<double> w = angular_velocity_at_nodes(p);
    for (std::size_t j = 1; j < w.size(); ++j) {
      const double r = p.nodes()[j], du = p.du()[j];
      CHECK(std::abs(r * w[j] * w[j] - du) <= 4 * std::numeric_limits<double>::epsilon() * du);
    }
    CHECK_THROWS_AS(angular_velocity(p, p.r_m()), OutOfSupportError);
    CHECK_THROWS_AS(angular_velocity(p, 10.0), OutOfSupportError);
    CHECK_THROWS_AS(angular_velocity(p, -0.1), OutOfSupportError);
  }

  TEST_CASE("constant potential does not rotate") {
    const PhysicalParams par = make_params(1, 1, 1);
    std::vector<double> nodes, zeros;
    for (int i = 0; i <= 10; ++i) {
      nodes.push_back(0.1 * i);
      zeros.push_back(0.0);
    }
    const RadialProfile disk = RadialProfile::from_potential(par, nodes, zeros, zeros, 1.0);
    for (double r : {0.0, 0.2, 0.55, 0.99}) CHECK(angular_velocity(disk, r) == 0.0);
  }

  TEST_CASE("velocity field is tangential rigid rotation") {
    const RadialProfile& p = testing::radial(1.0);
    const std::vector<std::pair<double, double>> pos{{0.7, 0.0}, {0.3, -0.4}, {0.0, 0.0}, {5.0, 0.0}};
    const auto s = velocity_field(p, pos);
    REQUIRE(s.size() == 4);
    CHECK(s[0].vx == 0.0);
    CHECK(s[0].vy == s[0].omega * 0.7);
    CHECK(s[0].omega == doctest::Approx(angular_velocity(p, 0.7)).epsilon(1e-15));
    CHECK(s[1].vx == -s[1].omega * -0.4);
    CHECK(s[1].vy == s[1].omega * 0.3);
    CHECK(std::abs(s[1].stationarity_residual) < 1e-14);
    CHECK(s[2].vx == 0.0);
    CHECK(s[2].in_support);
    CHECK_FALSE(s[3].in_support);
    CHECK(std::isnan(s[3].omega));
  }

  TEST_CASE("circulation matches a numerical line integral and is nonzero") {
    const RadialProfile& p = testing::radial(1.0);
    for (double r : {0.2, 0.8, 1.4}) {
      const int n = 720;
      std::vector<std::pair<double, double>> pos;
      for (int i = 0; i < n; ++i) {
        const double t = 2 * std::numbers::pi * i / n;
        pos.emplace_back(r * std::cos(t), r * std::sin(t));
      }
      double line = 0.0;
      for (const auto& s : velocity_field(p, pos)) {
        const double t = std::atan2(s.y, s.x);
        line += (-std::sin(t) * s.vx + std::cos(t) * s.vy) * (2 * std::numbers::pi * r / n);
      }
      CHECK(circulation(p, r) == doctest::Approx(line).epsilon(1e-12));
      CHECK(circulation(p, r) > 0.0);
    }
  }

  TEST_CASE("velocity divergence is small and second order") {
    const RadialProfile& p = testing::radial(1.0);
    const DivergenceReport a = velocity_divergence(p, 2e-3);
    const DivergenceReport b = velocity_divergence(p, 1e-3);
    CHECK(b.sup_scaled < 1e-4);
    CHECK(a.sup_abs / b.sup_abs == doctest::Approx(4.0).epsilon(0.15));
    CHECK(b.samples > 1000000);
  }

  TEST_CASE("constrained perturbations never raise the entropy at first order") {
    const testing::Perturbation pert(testing::radial(1.0));
    std::mt19937_64 rng(2024);
    const double eps = 1e-4;
    for (int i = 0; i < 100; ++i) {
      const std::vector<double> d = pert.direction(rng);
      const double dh = pert.delta_entropy(d, eps);
      CHECK(dh <= 1e-13);
      if (i < 5) {
        // Second-order decrease: quartering with eps / 2.
        CHECK(dh / pert.delta_entropy(d, 0.5 * eps) == doctest::Approx(4.0).epsilon(0.01));
      }
    }
  }
}
