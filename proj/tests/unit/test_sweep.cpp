#include <cmath>
#include <initializer_list>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "madelung/analysis.hpp"
#include "madelung/errors.hpp"
#include "madelung/sinc.hpp"
#include "madelung/sweep.hpp"

using namespace madelung;
using testing::rel;

namespace {
const PhysicalParams kUnit = make_params(1, 1, 1);
}

TEST_SUITE("sweep") {
  TEST_CASE("closed-form kinetic column and quadrature agreement") {
    const std::vector<double> betas{1, 5, 10, 100};
    const auto rows = beta_sweep(betas, 1.0, kUnit);
    const double expect[] = {1.0, 0.2, 0.1, 0.01};
    for (std::size_t i = 0; i < rows.size(); ++i) {
      REQUIRE(rows[i].ok);
      CHECK(rows[i].k_bar_closed_form == expect[i]);
      CHECK(rel(rows[i].k_bar_quadrature, expect[i]) < 1e-6);
      CHECK(rows[i].energy == rows[i].u_bar + rows[i].k_bar_closed_form);
    }
    const SweepSummary s = summarize(rows);
    CHECK(s.all());
    CHECK(s.failed_rows == 0);
  }

  TEST_CASE("log range endpoints and spacing") {
    const auto v = log_range(1e-4, 100, 13);
    REQUIRE(v.size() == 13);
    CHECK(v.front() == 1e-4);
    CHECK(v.back() == 100);
    for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i] / v[i - 1] == doctest::Approx(std::sqrt(10.0)));
    CHECK_THROWS_AS(log_range(-1, 1, 3), ValidationError);
  }

  TEST_CASE("second moment shrinks to zero as beta goes to zero") {
    const std::vector<double> betas{1e-6, 1e-5, 1e-4};
    const auto rows = beta_sweep(betas, 1.0, kUnit);
    for (const auto& r : rows) REQUIRE(r.ok);
    CHECK(rows[0].r2_bar < rows[1].r2_bar);
    CHECK(rows[1].r2_bar < rows[2].r2_bar);
    CHECK(rows[0].r2_bar < 1e-4);
    // Tightly bound: r_m scales like sqrt(beta) for small beta.
    CHECK(rows[0].r_m / rows[1].r_m == doctest::Approx(std::sqrt(0.1)).epsilon(0.05));
  }

  TEST_CASE("support radius saturates at large beta") {
    const std::vector<double> betas{10, 50, 100};
    const auto rows = beta_sweep(betas, 1.0, kUnit);
    const double d1 = rows[1].r_m - rows[0].r_m;
    const double d2 = rows[2].r_m - rows[1].r_m;
    CHECK(d1 > 0.0);
    CHECK(d2 > 0.0);
    CHECK(d2 < d1);
    CHECK(rows[2].r_m < std::numbers::pi / std::sqrt(2.0));
  }

  TEST_CASE("unsorted or nonpositive betas are rejected") {
    const std::vector<double> down{2, 1};
    const std::vector<double> neg{-1, 1};
    const std::vector<double> dup{1, 1};
    CHECK_THROWS_AS(beta_sweep(down, 1.0, kUnit), ValidationError);
    CHECK_THROWS_AS(beta_sweep(neg, 1.0, kUnit), ValidationError);
    CHECK_THROWS_AS(beta_sweep(dup, 1.0, kUnit), ValidationError);
  }

  TEST_CASE("a failing beta is flagged without aborting the sweep") {
    const std::vector<double> betas{1, 2, 1e12};
    const auto rows = beta_sweep(betas, 1.0, kUnit);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].ok);
    CHECK(rows[1].ok);
    CHECK_FALSE(rows[2].ok);
    CHECK_FALSE(rows[2].error.empty());
    CHECK(std::isnan(rows[2].r_m));
    CHECK(summarize(rows).failed_rows == 1);
    CHECK(summarize(rows).all());
  }

  TEST_CASE("threaded sweep is identical to the serial one") {
    const auto betas = log_range(0.01, 100, 9);
    const auto serial = beta_sweep(betas, 1.0, kUnit);
    SweepOptions opts;
    opts.threads = 4;
    const auto threaded = beta_sweep(betas, 1.0, kUnit, opts);
    CHECK(serial == threaded);
  }

  TEST_CASE("large-beta convergence to the sinc density") {
    const std::vector<double> betas{10, 50, 100};
    const ConvergenceReport rep = limit_convergence(betas, 1.0, kUnit);
    CHECK(rep.strictly_decreasing);
    const auto& g = testing::golden();
    const double tol = g.at("limit_rel_tol").get<double>();
    for (const auto& row : rep.rows) {
      CAPTURE(row.beta);
      for (const auto& c : g.at("limit")) {
        if (c.at("beta").get<double>() == row.beta) {
          CHECK(rel(row.sup_distance, c.at("sup_distance").get<double>()) < tol);
        }
      }
    }
    CHECK(rep.limit.k * rep.limit.r_inf == std::numbers::pi);
    CHECK(rel(rep.rows.back().r_m, rep.limit.r_inf) < 0.02);
  }

  TEST_CASE("beta inversion round trip") {
    for (double beta_star : {0.5, 2.0, 20.0}) {
      CAPTURE(beta_star);
      const double e = mean_energy(kUnit.with_beta(beta_star), 1.0);
      const double b = invert_beta_for_energy(e, 1.0, kUnit);
      CHECK(rel(b, beta_star) < 1e-8);
    }
  }

  TEST_CASE("mean energy decreases with beta towards u0") {
    double prev = mean_energy(kUnit.with_beta(0.1), 1.0);
    for (double beta : {1.0, 10.0, 100.0, 1000.0}) {
      const double e = mean_energy(kUnit.with_beta(beta), 1.0);
      CHECK(e < prev);
      CHECK(e > 1.0);
      prev = e;
    }
  }

  TEST_CASE("large targets give small beta bounded below by m / E") {
    for (double target : {10.0, 1e3, 1e5}) {
      const double b = invert_beta_for_energy(target, 1.0, kUnit);
      CHECK(b > 1.0 / target);
      CHECK(b < 2.0 / target);
      CHECK(rel(mean_energy(kUnit.with_beta(b), 1.0), target) < 1e-9);
    }
  }

  TEST_CASE("unreachable targets raise NoSolutionError") {
    CHECK_THROWS_AS(invert_beta_for_energy(0.5, 1.0, kUnit), NoSolutionError);
    CHECK_THROWS_AS(invert_beta_for_energy(1.0, 1.0, kUnit), NoSolutionError);
    try {
      invert_beta_for_energy(0.5, 1.0, kUnit);
    } catch (const NoSolutionError& e) {
      CHECK(e.feasible_lo() >= 1.0);
      CHECK(std::isinf(e.feasible_hi()));
    }
  }
}
