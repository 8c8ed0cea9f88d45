#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "geocert/graph.hpp"
#include "geocert/heat_spectral.hpp"
#include "geocert/manifold.hpp"
#include "geocert/rng.hpp"

using namespace geocert;

namespace {

EpsilonGraph circle_graph(int n, double eps, uint64_t seed) {
    const auto m = make_circle(1.0);
    return build_epsilon_graph(sample(m, n, seed), eps);
}

}  // namespace

TEST_CASE("laplacian structure") {
    const auto g = circle_graph(120, 0.3, 1);
    REQUIRE(is_connected(g));
    const auto [L, Lp] = laplacians(g);
    // random-walk Laplacian rows sum to zero
    for (int i = 0; i < g.n; ++i) CHECK(L.row(i).sum() == doctest::Approx(0.0).epsilon(1e-12));
    // L' is symmetric and similar to L
    CHECK((Lp - Lp.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    const auto sd = decompose(g);
    CHECK(sd.eigenvalues.minCoeff() > -1e-10);
    CHECK(sd.eigenvalues.maxCoeff() < 2.0 + 1e-10);
    CHECK(std::fabs(sd.eigenvalues.minCoeff()) < 1e-10);  // connected: lambda_0 = 0
    // orthonormal eigenvectors
    const mat_t I = sd.eigenvectors.transpose() * sd.eigenvectors;
    CHECK((I - mat_t::Identity(g.n, g.n)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("three-vertex path has spectrum {0, 1, 2}") {
    mat_t p(3, 2);
    p << 0.0, 0.0, 1.0, 0.0, 2.0, 0.0;
    const auto g = build_epsilon_graph(p, 1.0);
    const auto sd = decompose(g);
    CHECK(sd.eigenvalues[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(sd.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sd.eigenvalues[2] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("heat semigroup properties") {
    const auto g = circle_graph(80, 0.4, 2);
    REQUIRE(is_connected(g));
    const auto sd = decompose(g);
    const mat_t P2 = heat_Pt(sd, 2.0);
    const mat_t P3 = heat_Pt(sd, 3.0);
    const mat_t P5 = heat_Pt(sd, 5.0);
    for (int i = 0; i < g.n; ++i) CHECK(P2.row(i).sum() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK((P2 * P3 - P5).cwiseAbs().maxCoeff() < 1e-8);
    const mat_t P0 = heat_Pt(sd, 0.0);
    CHECK((P0 - mat_t::Identity(g.n, g.n)).cwiseAbs().maxCoeff() < 1e-10);
    const mat_t Q = heat_Qt(sd, 2.0);
    CHECK((Q - Q.transpose()).cwiseAbs().maxCoeff() < 1e-10);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            CHECK(Q(i, j) == doctest::Approx(P2(i, j) / sd.deg[j]).epsilon(1e-9));
    CHECK(heat_Qt_entry(sd, 2.0, 5, 17) == doctest::Approx(Q(5, 17)).epsilon(1e-10));
    CHECK_THROWS_AS(heat_Pt(sd, -1.0), std::domain_error);
}

TEST_CASE("band functions tile the spectrum") {
    CHECK(zeta_band(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(zeta_band(0.5) == 0.0);
    CHECK(zeta_band(2.0) == 0.0);
    CHECK(zeta_band(0.25) == 0.0);
    for (int l_lo : {-3, -5}) {
        for (int i = 1; i <= 2000; ++i) {
            const double x = 2.0 * i / 2000.0;
            CHECK(frame_sum(x, l_lo) == doctest::Approx(1.0).epsilon(1e-12));
        }
        CHECK(frame_sum(0.0, l_lo) == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("wavelet kernels resolve the identity") {
    const auto g = circle_graph(60, 0.5, 3);
    REQUIRE(is_connected(g));
    const auto sd = decompose(g);
    const int l_lo = -3;
    // sum of squared kernels over the bank equals I (frame partition of unity)
    mat_t acc = mat_t::Zero(g.n, g.n);
    {
        const mat_t K = wavelet_kernel(sd, l_lo - 1, l_lo);  // low-pass tile
        acc += K * K;
    }
    for (int l = l_lo; l <= 1; ++l) {
        const mat_t K = wavelet_kernel(sd, l, l_lo);
        acc += K * K;
    }
    CHECK((acc - mat_t::Identity(g.n, g.n)).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(wavelet_entry(sd, 0, l_lo, 4, 9) ==
          doctest::Approx(wavelet_kernel(sd, 0, l_lo)(4, 9)).epsilon(1e-10));
}

TEST_CASE("envelope fit is negative on a dense circle sample") {
    const auto g = circle_graph(400, 0.2, 4);
    REQUIRE(is_connected(g));
    const auto sd = decompose(g);
    Rng rng(4, 0x74);
    std::vector<std::pair<index_t, index_t>> pairs;
    for (int i = 0; i < 60; ++i)
        pairs.push_back({static_cast<index_t>(rng.uniform_int(g.n)),
                         static_cast<index_t>(rng.uniform_int(g.n))});
    std::sort(pairs.begin(), pairs.end());
    const auto rep = subgaussian_envelope(g, sd, {4.0, 9.0, 16.0}, pairs);
    CHECK(rep.points_used > 20);
    CHECK(rep.sufficient_spread);
    CHECK(rep.slope < 0.0);
    CHECK(rep.pass);
}

TEST_CASE("wavelet kernels localize at fine levels") {
    const auto g = circle_graph(400, 0.2, 6);
    REQUIRE(is_connected(g));
    const auto sd = decompose(g);
    const auto prof = localization_profile(g, sd, 0, -3, {0.0, 1.0, 2.0, 4.0, 8.0});
    REQUIRE(prof.counts[0] > 0);
    REQUIRE(prof.counts[2] > 0);
    CHECK(prof.mean_abs[2] < 0.25 * prof.mean_abs[0]);
}

TEST_CASE("isolated vertices are rejected") {
    mat_t p(3, 2);
    p << 0.0, 0.0, 0.2, 0.0, 5.0, 0.0;
    const auto g = build_epsilon_graph(p, 0.3);
    CHECK_THROWS_AS(laplacians(g), std::runtime_error);
}
