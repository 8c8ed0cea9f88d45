#pragma once

// Independent reference implementations the tests compare the library against.
// Deliberately naive: correctness over speed.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "geocert/graph.hpp"
#include "geocert/hamming.hpp"
#include "geocert/manifold.hpp"

namespace oracles {

using geocert::index_t;
using geocert::mat_t;
using geocert::vec_t;

// All-pairs hop counts by Floyd-Warshall on the adjacency structure.
inline std::vector<std::vector<int>> floyd_warshall_hops(const geocert::EpsilonGraph& g) {
    const int n = g.n;
    const int inf = std::numeric_limits<int>::max() / 4;
    std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
    for (int i = 0; i < n; ++i) d[i][i] = 0;
    for (int i = 0; i < n; ++i)
        for (index_t j : g.adj[i]) d[i][j] = 1;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (d[i][j] >= inf) d[i][j] = -1;
    return d;
}

// All-pairs Euclidean path lengths by Floyd-Warshall.
inline std::vector<std::vector<double>> floyd_warshall_euclidean(const geocert::EpsilonGraph& g) {
    const int n = g.n;
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
    for (int i = 0; i < n; ++i) d[i][i] = 0.0;
    for (int i = 0; i < n; ++i)
        for (index_t j : g.adj[i])
            d[i][j] = (g.points.row(i) - g.points.row(j)).norm();
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    return d;
}

// mu(B(x, r)) on the flat torus by midpoint quadrature over the fundamental
// domain; resolution chosen for ~1e-4 accuracy at moderate radii.
inline double torus_ball_measure_quadrature(const geocert::ManifoldModel& m, double r,
                                            int grid = 2000) {
    long long inside = 0;
    for (int i = 0; i < grid; ++i) {
        const double t1 = (i + 0.5) / grid * m.L1 - m.L1 / 2.0;
        for (int j = 0; j < grid; ++j) {
            const double t2 = (j + 0.5) / grid * m.L2 - m.L2 / 2.0;
            if (t1 * t1 + t2 * t2 <= r * r) ++inside;
        }
    }
    return static_cast<double>(inside) / (static_cast<double>(grid) * grid);
}

// Lower bound on sup_r |sqrt(eta1(B(x_i,r))) - sqrt(mu(B(x_i,r)))| from a
// dense radius grid; the exact breakpoint scan must dominate it.
inline double sqrt_deviation_grid_scan(const mat_t& points, const geocert::ManifoldModel& m,
                                       int r_steps) {
    const int n = static_cast<int>(points.rows());
    double sup = 0.0;
    for (int c = 0; c < n; ++c) {
        const vec_t x = points.row(c).transpose();
        for (int s = 1; s <= r_steps; ++s) {
            const double r = m.diameter * s / r_steps;
            int open = 0, closed = 0;
            for (int j = 0; j < n; ++j) {
                const double d = geodesic_distance(m, x, points.row(j).transpose());
                if (d < r) ++open;
                if (d <= r) ++closed;
            }
            const double mu = std::sqrt(geocert::ball_measure(m, r));
            sup = std::max(sup, std::fabs(std::sqrt(static_cast<double>(open) / n) - mu));
            sup = std::max(sup, std::fabs(std::sqrt(static_cast<double>(closed) / n) - mu));
        }
    }
    return sup;
}

// Expected Hamming-path edge loads by exhaustive enumeration of every
// interior-representative choice; feasible for tiny grids only.
inline std::map<std::pair<index_t, index_t>, double> enumerate_ensemble_loads(
    const geocert::EpsilonGraph& g, const std::vector<index_t>& ball,
    const geocert::CubeChart& chart, const geocert::GridSpec& grid) {
    std::map<std::pair<index_t, index_t>, double> loads;
    auto edge_key = [](index_t a, index_t b) {
        return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    };
    std::vector<std::vector<int>> coords(ball.size());
    for (size_t i = 0; i < ball.size(); ++i)
        coords[i] = grid.cell_coords_of(chart.map(g.points.row(ball[i]).transpose()));
    for (size_t a = 0; a < ball.size(); ++a) {
        for (size_t b = 0; b < ball.size(); ++b) {
            if (a == b) continue;
            const auto cells = geocert::hamming_cell_path(coords[a], coords[b]);
            if (cells.size() == 1) {
                loads[edge_key(ball[a], ball[b])] += 1.0;
                continue;
            }
            // choice space: one vertex per interior cell
            const size_t interior = cells.size() - 2;
            std::vector<const std::vector<index_t>*> pools(interior);
            double total_choices = 1.0;
            for (size_t c = 0; c < interior; ++c) {
                pools[c] = &grid.cells[grid.flatten(cells[c + 1])];
                total_choices *= static_cast<double>(pools[c]->size());
            }
            std::vector<size_t> pick(interior, 0);
            while (true) {
                std::vector<index_t> path;
                path.push_back(ball[a]);
                for (size_t c = 0; c < interior; ++c) path.push_back((*pools[c])[pick[c]]);
                path.push_back(ball[b]);
                for (size_t e = 0; e + 1 < path.size(); ++e)
                    loads[edge_key(path[e], path[e + 1])] += 1.0 / total_choices;
                size_t c = 0;
                for (; c < interior; ++c) {
                    if (++pick[c] < pools[c]->size()) break;
                    pick[c] = 0;
                }
                if (c == interior) break;
            }
        }
    }
    return loads;
}

// Dense generalized eigensolve for the optimal ball Poincare constant:
// deflate constants with an explicit orthonormal complement basis.
inline double dense_poincare_constant(const geocert::EpsilonGraph& g,
                                      const std::vector<double>& weights, index_t center, double r,
                                      double lambda) {
    auto B = geocert::ball_sp(g, center, r, geocert::Openness::closed);
    auto Bp = geocert::ball_sp(g, center, lambda * r, geocert::Openness::closed);
    std::sort(B.begin(), B.end());
    std::sort(Bp.begin(), Bp.end());
    const int np = static_cast<int>(Bp.size());
    if (np == 1) return 0.0;
    std::vector<int> local(g.n, -1);
    for (int i = 0; i < np; ++i) local[Bp[i]] = i;

    mat_t E = mat_t::Zero(np, np);
    for (index_t u : Bp)
        for (index_t v : g.adj[u]) {
            if (local[v] < 0) continue;
            E(local[u], local[u]) += 2.0;
            E(local[u], local[v]) -= 2.0;
        }
    mat_t M = mat_t::Zero(np, np);
    double W = 0.0;
    for (index_t v : B) W += weights[v];
    for (index_t x : B)
        for (index_t y : B) {
            const double wxy = weights[x] * weights[y] / W;
            M(local[x], local[x]) += 0.5 * wxy;
            M(local[y], local[y]) += 0.5 * wxy;
            M(local[x], local[y]) -= wxy;
        }

    // orthonormal basis of the complement of the constant vector
    const vec_t ones = vec_t::Constant(np, 1.0 / std::sqrt(static_cast<double>(np)));
    mat_t Q = mat_t::Identity(np, np) - ones * ones.transpose();
    Eigen::JacobiSVD<mat_t> svd(Q, Eigen::ComputeThinU);
    mat_t basis(np, np - 1);
    int col = 0;
    for (int i = 0; i < np && col < np - 1; ++i)
        if (svd.singularValues()[i] > 0.5) basis.col(col++) = svd.matrixU().col(i);
    const mat_t Er = basis.transpose() * E * basis;
    const mat_t Mr = basis.transpose() * M * basis;
    Eigen::GeneralizedSelfAdjointEigenSolver<mat_t> ges(Mr, Er);
    return std::max(0.0, ges.eigenvalues().maxCoeff()) / (r * r);
}

}  // namespace oracles
