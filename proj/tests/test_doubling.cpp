#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "geocert/doubling.hpp"
#include "geocert/graph.hpp"
#include "geocert/manifold.hpp"

using namespace geocert;

TEST_CASE("doubling exponent formulas") {
    CHECK(exponent_u_open(1.0 / 3.0, 1.0 / 3.0, 1.0) ==
          doctest::Approx(std::log2(6.0) + 5.0).epsilon(1e-14));
    CHECK(exponent_u_closed(1.0) == doctest::Approx(std::log2(6.0) + 6.0).epsilon(1e-14));
    CHECK(exponent_u_degree(1.0, 4.0) ==
          doctest::Approx(std::log2(6.0) + 6.0 + 4.0).epsilon(1e-14));
    CHECK_THROWS_AS(exponent_u_open(0.0, 0.5, 1.0), std::domain_error);
    CHECK_THROWS_AS(exponent_u_degree(1.0, 0.5), std::domain_error);
}

TEST_CASE("mass floor formulas") {
    CHECK(mass_floor(1000, 0.5) ==
          doctest::Approx(8.0 * std::log(3.0e6 / 0.5) / 1000.0).epsilon(1e-14));
    CHECK(mass_floor_alt(1000, 0.5) ==
          doctest::Approx(8.0 * std::log(4.0e6 / 0.5) / 1000.0).epsilon(1e-14));
    CHECK(mass_floor_alt(1000, 0.5) > mass_floor(1000, 0.5));
    CHECK_THROWS_AS(mass_floor(1000, 0.7), std::domain_error);
}

TEST_CASE("radius grid spans the hop diameter") {
    const auto m = make_circle(1.0);
    const mat_t p = sample(m, 300, 2);
    const auto g = build_epsilon_graph(p, 0.2);
    REQUIRE(is_connected(g));
    const auto grid = vd_radius_grid(g);
    REQUIRE(!grid.empty());
    CHECK(grid.front() == 1.5);
    for (size_t i = 1; i < grid.size(); ++i)
        CHECK(grid[i] - grid[i - 1] == doctest::Approx(0.5).epsilon(1e-14));
    int diam = 0;
    for (int s = 0; s < g.n; ++s)
        for (int h : sp_distances_from(g, s)) diam = std::max(diam, h);
    CHECK(grid.back() >= diam - 0.5);
}

TEST_CASE("hop prefix counts agree with explicit balls") {
    const auto m = make_flat_torus(1.0, 1.0);
    const mat_t p = sample(m, 150, 6);
    const auto g = build_epsilon_graph(p, 0.25);
    REQUIRE(is_connected(g));
    // the certifier must reproduce the ratios that ball_sp + measure_of give
    const double floor = 0.0;
    const auto rep = certify_vd(g, MeasureKind::empirical, {2.0, 2.5, 3.0}, floor, 100.0,
                                Openness::open);
    CHECK(rep.balls_tested == 150 * 3);
    CHECK(rep.qualifying_balls == rep.balls_tested);
    double max_ratio = 0.0;
    for (index_t c = 0; c < g.n; ++c) {
        for (double r : {2.0, 2.5, 3.0}) {
            const auto inner = ball_sp(g, c, r, Openness::open);
            const auto outer = ball_sp(g, c, 2.0 * r, Openness::open);
            max_ratio = std::max(max_ratio, measure_of(g, MeasureKind::empirical, outer) /
                                                measure_of(g, MeasureKind::empirical, inner));
        }
    }
    CHECK(rep.max_ratio == doctest::Approx(max_ratio).epsilon(1e-12));
}

TEST_CASE("volume doubling certifies on a dense circle sample") {
    const auto m = make_circle(1.0);
    const mat_t p = sample(m, 800, 13);
    const auto g = build_epsilon_graph(p, 0.2);
    REQUIRE(is_connected(g));
    const double floor = std::max(mass_floor(g.n, 0.1), mass_floor_alt(g.n, 0.1));
    const double u = exponent_u_open(1.0 / 3.0, 1.0 / 3.0, m.doubling_v);
    const auto rep = certify_vd(g, MeasureKind::empirical, vd_radius_grid(g), floor, u,
                                Openness::open);
    CHECK(rep.qualifying_balls > 0);
    CHECK(rep.pass);
    CHECK(rep.max_ratio <= std::pow(2.0, u));

    const auto cmp = compare_measures(g, vd_radius_grid(g));
    CHECK(cmp.c_bullet >= 1.0);
    CHECK(cmp.within);
}

TEST_CASE("invalid radii are rejected") {
    const auto m = make_circle(1.0);
    const mat_t p = sample(m, 100, 1);
    const auto g = build_epsilon_graph(p, 0.5);
    REQUIRE(is_connected(g));
    CHECK_THROWS_AS(certify_vd(g, MeasureKind::empirical, {0.5}, 0.0, 3.0, Openness::open),
                    std::domain_error);
}
