#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "madelung/errors.hpp"
#include "madelung/grid.hpp"
#include "madelung/serialize.hpp"
#include "madelung/sinc.hpp"

using namespace madelung;

namespace {
template <class T>
T round_trip(const T& v) {
  return json::parse(json(v).dump()).get<T>();
}
}  // namespace

TEST_SUITE("serialize") {
  TEST_CASE("non-finite numbers use string tokens") {
    constexpr double inf = std::numeric_limits<double>::infinity();
    CHECK(number_to_json(inf) == "inf");
    CHECK(number_to_json(-inf) == "-inf");
    CHECK(number_to_json(std::nan("")) == "nan");
    CHECK(number_from_json(json("inf")) == inf);
    CHECK(number_from_json(json("-inf")) == -inf);
    CHECK(std::isnan(number_from_json(json("nan"))));
    CHECK(number_from_json(json(0.1)) == 0.1);
    CHECK_THROWS_AS(number_from_json(json("infinity")), ValidationError);
    const std::vector<double> v{1.0, inf, -0.0, 1e-300};
    const auto back = numbers_from_json(json::parse(numbers_to_json(v).dump()));
    CHECK(back[1] == inf);
    CHECK(std::signbit(back[2]));
    CHECK(back[3] == 1e-300);
  }

  TEST_CASE("random parameter sets round trip bit for bit") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> logu(-8, 8);
    for (int i = 0; i < 200; ++i) {
      const auto variant = (i % 2) ? LaplacianVariant::planar_radial : LaplacianVariant::paper_radial;
      const PhysicalParams p = make_params(std::exp(logu(rng)), std::exp(logu(rng)),
                                           std::exp(logu(rng)), variant);
      CHECK(round_trip(p) == p);
    }
  }

  TEST_CASE("invalid parameters are rejected on load") {
    json j = make_params(1, 1, 1);
    j["beta"] = -1.0;
    CHECK_THROWS_AS(j.get<PhysicalParams>(), ValidationError);
    j = make_params(1, 1, 1);
    j["laplacian_variant"] = "spherical";
    CHECK_THROWS_AS(j.get<PhysicalParams>(), ValidationError);
  }

  TEST_CASE("profiles and observables round trip") {
    const RadialProfile& p = testing::radial(2.0);
    const RadialProfile q = round_trip(p);
    CHECK(q.nodes() == p.nodes());
    CHECK(q.u() == p.u());
    CHECK(q.rho() == p.rho());
    CHECK(q.r_m() == p.r_m());
    CHECK(q.log_z() == p.log_z());
    const Observables o = observables(p);
    CHECK(round_trip(o) == o);
    const RadialProfile none = RadialProfile::unsupported(make_params(1, 1, 1));
    CHECK(std::isinf(round_trip(none).r_m()));
  }

  TEST_CASE("axis profile, grid and sinc limit round trip") {
    const PhysicalParams par = make_params(1, 1, 1);
    const AxisProfile ax = solve_cartesian_factor(cartesian_request(par));
    const AxisProfile ax2 = round_trip(ax);
    CHECK(ax2.u() == ax.u());
    CHECK(ax2.half_width() == ax.half_width());
    const Grid2D g = assemble_2d(ax, ax, GridSpec{0.05});
    const Grid2D g2 = round_trip(g);
    CHECK(g2.u() == g.u());
    CHECK(g2.rho() == g.rho());
    CHECK(g2.geometry().nx == g.geometry().nx);
    const SincLimit s = sinc_limit_from_energy(par, 1.0);
    CHECK(round_trip(s) == s);
  }

  TEST_CASE("manifest round trip") {
    RunManifest m;
    m.command = "solve-radial";
    m.parameters = json{{"beta", 1.0}};
    m.solver.blowup_threshold = 41.0;
    m.outputs = {"radial_profile.csv"};
    m.residuals = testing::radial(1.0).r_m();
    m.observables = observables(testing::radial(1.0));
    m.wall_clock_seconds = 0.25;
    m.kernels = "avx2";
    m.created_utc = "2026-01-01T00:00:00Z";
    CHECK(round_trip(m) == m);
    StepControl c;
    CHECK(round_trip(c) == c);
  }

  TEST_CASE("sweep rows keep failure markers") {
    SweepRow r;
    r.beta = 1e12;
    r.error = "beta too large";
    r.r_m = std::nan("");
    const SweepRow b = round_trip(r);
    CHECK(b.error == r.error);
    CHECK_FALSE(b.ok);
    CHECK(std::isnan(b.r_m));
  }
}
