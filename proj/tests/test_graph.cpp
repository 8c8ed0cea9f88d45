#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "geocert/graph.hpp"
#include "geocert/manifold.hpp"
#include "oracles.hpp"

using namespace geocert;

TEST_CASE("cell grid construction equals brute force") {
    for (const auto& m : {make_circle(1.0), make_sphere2(1.0), make_flat_torus(1.0, 1.3)}) {
        for (double eps : {0.05, 0.2, 0.7}) {
            for (uint64_t seed : {1ull, 2ull, 3ull}) {
                const mat_t p = sample(m, 120, seed);
                const auto fast = build_epsilon_graph(p, eps);
                const auto slow = build_epsilon_graph_brute(p, eps);
                REQUIRE(fast.n == slow.n);
                CHECK(fast.volume == slow.volume);
                for (int i = 0; i < fast.n; ++i) CHECK(fast.adj[i] == slow.adj[i]);
            }
        }
    }
}

TEST_CASE("edge boundary is inclusive") {
    mat_t p(2, 2);
    p << 0.0, 0.0, 0.3, 0.0;
    const auto g = build_epsilon_graph(p, 0.3);
    CHECK(g.has_edge(0, 1));
    const auto g2 = build_epsilon_graph(p, 0.3 - 1e-12);
    CHECK(!g2.has_edge(0, 1));
}

TEST_CASE("duplicate points are rejected") {
    mat_t p(3, 2);
    p << 0.1, 0.2, 0.5, 0.6, 0.1, 0.2;
    CHECK_THROWS_AS(build_epsilon_graph(p, 0.3), std::invalid_argument);
}

TEST_CASE("BFS and Dijkstra match Floyd-Warshall") {
    const auto m = make_flat_torus(1.0, 1.0);
    const mat_t p = sample(m, 80, 17);
    const auto g = build_epsilon_graph(p, 0.18);
    const auto hops = oracles::floyd_warshall_hops(g);
    const auto lens = oracles::floyd_warshall_euclidean(g);
    for (int s = 0; s < g.n; ++s) {
        const auto bfs = sp_distances_from(g, s);
        const auto dij = ge_distances_from(g, s);
        for (int t = 0; t < g.n; ++t) {
            CHECK(bfs[t] == hops[s][t]);
            if (std::isinf(dij[t])) {
                CHECK(std::isinf(lens[s][t]));
            } else {
                CHECK(dij[t] == doctest::Approx(lens[s][t]).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("shortest-path ball semantics") {
    // path graph 0-1-2-3 on a line
    mat_t p(4, 2);
    p << 0.0, 0.0, 1.0, 0.0, 2.0, 0.0, 3.0, 0.0;
    const auto g = build_epsilon_graph(p, 1.0);
    CHECK(ball_sp(g, 0, 2.0, Openness::closed).size() == 3);
    CHECK(ball_sp(g, 0, 2.0, Openness::open).size() == 2);
    CHECK(ball_sp(g, 0, 2.5, Openness::open).size() == 3);
    CHECK(ball_sp(g, 0, 0.5, Openness::closed).size() == 1);
    CHECK(ball_sp(g, 0, 10.0, Openness::closed).size() == 4);
}

TEST_CASE("graph measures") {
    mat_t p(4, 2);
    p << 0.0, 0.0, 1.0, 0.0, 2.0, 0.0, 3.0, 0.0;
    const auto g = build_epsilon_graph(p, 1.0);
    CHECK(g.volume == 6);
    const std::vector<index_t> sub = {0, 1};
    CHECK(measure_of(g, MeasureKind::empirical, sub) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(measure_of(g, MeasureKind::degree_volume, sub) ==
          doctest::Approx(3.0 / 6.0).epsilon(1e-15));
}

TEST_CASE("connected components") {
    mat_t p(5, 2);
    p << 0.0, 0.0, 0.5, 0.0, 1.0, 0.0, 10.0, 0.0, 10.5, 0.0;
    const auto g = build_epsilon_graph(p, 0.6);
    const auto comp = connected_components(g);
    CHECK(comp[0] == comp[1]);
    CHECK(comp[1] == comp[2]);
    CHECK(comp[3] == comp[4]);
    CHECK(comp[0] != comp[3]);
    CHECK(!is_connected(g));
    CHECK(is_connected(build_epsilon_graph(p, 10.0)));
}

TEST_CASE("edge list export round trips") {
    const auto m = make_circle(1.0);
    const mat_t p = sample(m, 30, 4);
    const auto g = build_epsilon_graph(p, 0.4);
    std::ostringstream out;
    write_edge_list(g, out);
    std::istringstream in(out.str());
    int n = 0;
    double eps = 0.0;
    in >> n >> eps;
    CHECK(n == 30);
    CHECK(eps == doctest::Approx(0.4).epsilon(1e-14));
    long long edges = 0;
    int a = 0, b = 0;
    while (in >> a >> b) {
        CHECK(a < b);
        CHECK(g.has_edge(a, b));
        ++edges;
    }
    CHECK(edges * 2 == g.volume);
}
