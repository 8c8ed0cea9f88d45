#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "geocert/graph.hpp"
#include "geocert/manifold.hpp"
#include "geocert/types.hpp"

namespace geocert {

/// Numerically estimated Lipschitz constants of the radial ball-to-cube map
/// (identity for k = 1), folded with the log-map and affine factors into the
/// default chart constants.
double default_Lstar_min(int k);
double default_Lstar_max(int k);

/// Bi-Lipschitz chart from the closed geodesic ball B(center, r_M) to [0,1]^k,
/// composed of log map, rescaling, radial ball-to-cube map, and affine shift.
struct CubeChart {
    ManifoldModel model;
    vec_t center;
    double r_M;
    double Lstar_min;
    double Lstar_max;

    double L_min() const { return Lstar_min / r_M; }
    double L_max() const { return Lstar_max / r_M; }
    vec_t map(const vec_t& ambient) const;
};

CubeChart build_chart(const ManifoldModel& model, const vec_t& center, double r_M,
                      double Lstar_min = 0.0, double Lstar_max = 0.0);

/// g with 1/g = ceil(sqrt(k+3) / (L_min eps)); requires the ratio >= 1.
double grid_width(int k, double L_min, double epsilon);

struct GridSpec {
    int k;
    int m;  // 1/g cells per axis
    double g;
    std::vector<std::vector<index_t>> cells;  // flattened cell id -> vertex ids

    int cell_count() const;
    std::vector<int> cell_coords_of(const vec_t& cube_point) const;
    int flatten(const std::vector<int>& coords) const;
};

/// Assign the listed vertices to grid cells through the chart.
GridSpec build_grid(const CubeChart& chart, const std::vector<index_t>& vertices,
                    const mat_t& points, double grid_g);

/// Monotone coordinate-by-coordinate cell walk from a to b (inclusive).
std::vector<std::vector<int>> hamming_cell_path(const std::vector<int>& a,
                                                const std::vector<int>& b);

struct PathEnsemble {
    GridSpec grid;
    int l_max = 0;
    double b_max = 0.0;
    int N_min = 0;
    int N_max = 0;
    std::map<std::pair<index_t, index_t>, double> expected_loads;  // key i < j
    double total_load = 0.0;
    double total_expected_length = 0.0;
    long long pair_count = 0;
};

/// Exact expected edge loads of the random Hamming path ensemble over all
/// ordered vertex pairs of the ball. Throws if a cell is empty or a required
/// edge is missing from the graph.
PathEnsemble build_ensemble(const EpsilonGraph& g, const std::vector<index_t>& ball_vertices,
                            const CubeChart& chart, const GridSpec& grid);

/// Monte Carlo loads for cross-checking the analytic expectations.
std::map<std::pair<index_t, index_t>, double> sample_ensemble_loads(
    const EpsilonGraph& g, const std::vector<index_t>& ball_vertices, const CubeChart& chart,
    const GridSpec& grid, int samples, uint64_t seed);

struct OccupancyReport {
    double w_minus = 0.0;
    double w_plus_tilde = 0.0;
    double p8 = 0.0;
    double n_required = 0.0;
    bool precondition_ok = false;
    int N_min = 0;
    int N_max = 0;
    double occupancy_lo = 0.0;  // (1-delta)(n-1) w_minus
};

OccupancyReport verify_cell_occupancy_bounds(const ManifoldModel& model, const GridSpec& grid,
                                             const CubeChart& chart, int n, double delta,
                                             double epsilon);

}  // namespace geocert
