#include "geocert/hamming.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "geocert/rng.hpp"

namespace geocert {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Factor constants of the chart composition. The log-map factors are
// (1 + pi^2/8)^{-1} and (1 - pi^2/24)^{-1}; the radial ball-to-cube factors
// for k = 2 are numerically estimated by dense pair sampling (see tests) and
// recorded here. The affine step contributes 0.5 on both sides.
const double kLogMapMin = 1.0 / (1.0 + kPi * kPi / 8.0);
const double kLogMapMax = 1.0 / (1.0 - kPi * kPi / 24.0);

double ball_cube_min(int k) {
    if (k == 1) return 1.0;
    if (k == 2) return 0.8660;
    throw std::domain_error("unsupported intrinsic dimension");
}

double ball_cube_max(int k) {
    if (k == 1) return 1.0;
    if (k == 2) return 2.2930;
    throw std::domain_error("unsupported intrinsic dimension");
}

std::pair<index_t, index_t> edge_key(index_t u, index_t v) {
    return {std::min(u, v), std::max(u, v)};
}

}  // namespace

double default_Lstar_min(int k) { return 0.5 * kLogMapMin * ball_cube_min(k); }
double default_Lstar_max(int k) { return 0.5 * kLogMapMax * ball_cube_max(k); }

vec_t CubeChart::map(const vec_t& ambient) const {
    vec_t u = exp_inverse(model, center, ambient) / r_M;
    const double n2 = u.norm();
    if (n2 > 1.0 + 1e-9) throw std::domain_error("point outside the chart ball");
    if (n2 > 0.0) {
        const double ninf = u.cwiseAbs().maxCoeff();
        u *= n2 / ninf;  // radial ball-to-cube map
    }
    return (u.array() + 1.0) / 2.0;
}

CubeChart build_chart(const ManifoldModel& model, const vec_t& center, double r_M,
                      double Lstar_min, double Lstar_max) {
    if (!(r_M > 0.0 && r_M < model.r_bullet))
        throw std::domain_error("chart radius must lie in (0, r_bullet)");
    CubeChart c;
    c.model = model;
    c.center = center;
    c.r_M = r_M;
    c.Lstar_min = (Lstar_min > 0.0) ? Lstar_min : default_Lstar_min(model.k);
    c.Lstar_max = (Lstar_max > 0.0) ? Lstar_max : default_Lstar_max(model.k);
    return c;
}

double grid_width(int k, double L_min, double epsilon) {
    const double ratio = std::sqrt(k + 3.0) / (L_min * epsilon);
    if (ratio < 1.0) throw std::domain_error("grid width precondition sqrt(k+3)/(L_min eps) >= 1");
    return 1.0 / std::ceil(ratio - 1e-12);
}

int GridSpec::cell_count() const {
    int c = 1;
    for (int d = 0; d < k; ++d) c *= m;
    return c;
}

std::vector<int> GridSpec::cell_coords_of(const vec_t& cube_point) const {
    std::vector<int> coords(k);
    for (int d = 0; d < k; ++d) {
        int c = static_cast<int>(std::floor(cube_point[d] / g));
        coords[d] = std::clamp(c, 0, m - 1);  // top face closed on the last cell
    }
    return coords;
}

int GridSpec::flatten(const std::vector<int>& coords) const {
    int id = 0;
    for (int d = k - 1; d >= 0; --d) id = id * m + coords[d];
    return id;
}

GridSpec build_grid(const CubeChart& chart, const std::vector<index_t>& vertices,
                    const mat_t& points, double grid_g) {
    GridSpec grid;
    grid.k = chart.model.k;
    grid.m = static_cast<int>(std::lround(1.0 / grid_g));
    if (std::fabs(grid.m * grid_g - 1.0) > 1e-9)
        throw std::domain_error("1/g must be an integer");
    grid.g = grid_g;
    grid.cells.assign(grid.cell_count(), {});
    for (index_t v : vertices) {
        const vec_t h = chart.map(points.row(v).transpose());
        grid.cells[grid.flatten(grid.cell_coords_of(h))].push_back(v);
    }
    return grid;
}

std::vector<std::vector<int>> hamming_cell_path(const std::vector<int>& a,
                                                const std::vector<int>& b) {
    if (a.size() != b.size()) throw std::domain_error("cell coordinate dimensions differ");
    std::vector<std::vector<int>> path;
    std::vector<int> cur = a;
    path.push_back(cur);
    for (size_t d = 0; d < a.size(); ++d) {
        const int step = (b[d] > cur[d]) ? 1 : -1;
        while (cur[d] != b[d]) {
            cur[d] += step;
            path.push_back(cur);
        }
    }
    return path;
}

PathEnsemble build_ensemble(const EpsilonGraph& g, const std::vector<index_t>& ball_vertices,
                            const CubeChart& chart, const GridSpec& grid) {
    PathEnsemble ens;
    ens.grid = grid;
    ens.N_min = 0;
    for (const auto& cell : grid.cells) {
        const int sz = static_cast<int>(cell.size());
        if (ens.N_min == 0 || sz < ens.N_min) ens.N_min = sz;
        ens.N_max = std::max(ens.N_max, sz);
    }
    if (ens.N_min == 0) throw std::runtime_error("empty grid cell: ensemble precondition fails");

    // cell id per ball vertex
    std::vector<int> cell_of(g.n, -1);
    for (int c = 0; c < grid.cell_count(); ++c)
        for (index_t v : grid.cells[c]) cell_of[v] = c;

    // all cross pairs of two cells must be graph edges; verified once per pair
    std::set<std::pair<int, int>> verified;
    auto verify_cells_adjacent = [&](int c1, int c2) {
        const auto key = std::minmax(c1, c2);
        if (verified.count({key.first, key.second})) return;
        for (index_t u : grid.cells[c1])
            for (index_t v : grid.cells[c2])
                if (!g.has_edge(u, v))
                    throw std::runtime_error("consecutive cells hold non-adjacent vertices");
        verified.insert({key.first, key.second});
    };

    auto coords_of_cell = [&](int id) {
        std::vector<int> coords(grid.k);
        for (int d = 0; d < grid.k; ++d) {
            coords[d] = id % grid.m;
            id /= grid.m;
        }
        return coords;
    };

    for (index_t x : ball_vertices) {
        for (index_t y : ball_vertices) {
            if (x == y) continue;
            ++ens.pair_count;
            const int ca = cell_of[x];
            const int cb = cell_of[y];
            if (ca == cb) {
                if (!g.has_edge(x, y))
                    throw std::runtime_error("same-cell vertices are not adjacent");
                ens.expected_loads[edge_key(x, y)] += 1.0;
                ens.total_expected_length += 1.0;
                ens.l_max = std::max(ens.l_max, 1);
                continue;
            }
            const auto cells = hamming_cell_path(coords_of_cell(ca), coords_of_cell(cb));
            const int L = static_cast<int>(cells.size()) - 1;  // edges per path
            ens.l_max = std::max(ens.l_max, L);
            ens.total_expected_length += L;
            for (int i = 0; i < L; ++i) {
                const int c1 = grid.flatten(cells[i]);
                const int c2 = grid.flatten(cells[i + 1]);
                verify_cells_adjacent(c1, c2);
                const bool left_end = (i == 0);
                const bool right_end = (i + 1 == L);
                const auto& occ1 =
                    left_end ? std::vector<index_t>{x} : grid.cells[c1];
                const auto& occ2 =
                    right_end ? std::vector<index_t>{y} : grid.cells[c2];
                const double p1 = left_end ? 1.0 : 1.0 / grid.cells[c1].size();
                const double p2 = right_end ? 1.0 : 1.0 / grid.cells[c2].size();
                for (index_t u : occ1)
                    for (index_t v : occ2) ens.expected_loads[edge_key(u, v)] += p1 * p2;
            }
        }
    }
    for (const auto& [e, load] : ens.expected_loads) {
        ens.total_load += load;
        ens.b_max = std::max(ens.b_max, load);
    }
    return ens;
}

std::map<std::pair<index_t, index_t>, double> sample_ensemble_loads(
    const EpsilonGraph& g, const std::vector<index_t>& ball_vertices, const CubeChart& chart,
    const GridSpec& grid, int samples, uint64_t seed) {
    std::vector<int> cell_of(g.n, -1);
    for (int c = 0; c < grid.cell_count(); ++c)
        for (index_t v : grid.cells[c]) cell_of[v] = c;
    auto coords_of_cell = [&](int id) {
        std::vector<int> coords(grid.k);
        for (int d = 0; d < grid.k; ++d) {
            coords[d] = id % grid.m;
            id /= grid.m;
        }
        return coords;
    };
    std::map<std::pair<index_t, index_t>, double> loads;
    Rng rng(seed, 0x656e736d);
    for (int s = 0; s < samples; ++s) {
        for (index_t x : ball_vertices) {
            for (index_t y : ball_vertices) {
                if (x == y) continue;
                const int ca = cell_of[x];
                const int cb = cell_of[y];
                if (ca == cb) {
                    loads[edge_key(x, y)] += 1.0;
                    continue;
                }
                const auto cells = hamming_cell_path(coords_of_cell(ca), coords_of_cell(cb));
                index_t prev = x;
                for (size_t i = 1; i < cells.size(); ++i) {
                    index_t cur;
                    if (i + 1 == cells.size()) {
                        cur = y;
                    } else {
                        const auto& occ = grid.cells[grid.flatten(cells[i])];
                        cur = occ[rng.uniform_int(occ.size())];
                    }
                    if (!g.has_edge(prev, cur))
                        throw std::runtime_error("sampled path uses a missing edge");
                    loads[edge_key(prev, cur)] += 1.0;
                    prev = cur;
                }
            }
        }
    }
    for (auto& [e, v] : loads) v /= samples;
    return loads;
}

OccupancyReport verify_cell_occupancy_bounds(const ManifoldModel& model, const GridSpec& grid,
                                             const CubeChart& chart, int n, double delta,
                                             double epsilon) {
    if (delta <= 0.0 || delta >= 1.0) throw std::domain_error("delta must lie in (0,1)");
    OccupancyReport rep;
    const double sk = std::sqrt(model.k + 3.0);
    const double r_small = chart.Lstar_min * epsilon / (4.0 * sk * chart.Lstar_max);
    rep.w_minus = ball_measure(model, r_small);
    rep.w_plus_tilde = ball_measure(model, epsilon);
    rep.p8 = std::min(1.0, 2.0 * std::pow(2.0 * sk / (chart.L_min() * epsilon), model.k) *
                               std::exp(-delta * delta * (n - 1) * rep.w_minus / 3.0));
    rep.n_required = 1.0 / ((1.0 - delta) * rep.w_minus) + 1.0;
    rep.precondition_ok = n >= rep.n_required;
    rep.occupancy_lo = (1.0 - delta) * (n - 1) * rep.w_minus;
    rep.N_min = 0;
    for (const auto& cell : grid.cells) {
        const int sz = static_cast<int>(cell.size());
        if (rep.N_min == 0 || sz < rep.N_min) rep.N_min = sz;
        rep.N_max = std::max(rep.N_max, sz);
    }
    return rep;
}

}  // namespace geocert
