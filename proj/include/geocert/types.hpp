#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace geocert {

using vec_t = Eigen::VectorXd;
using mat_t = Eigen::MatrixXd;
using index_t = int;

/// Every tunable symbol of the assumptions and theorems, resolved once per run.
struct AssumptionParams {
    double lambda1 = 1.0 / 3.0;
    double lambda2 = 1.0 / 3.0;
    double delta = 0.5;
    double p1 = 0.1;
    double p2 = 0.1;
    double p3 = 0.1;
    double doubling_v = 1.0;
    double Lstar_min = 0.0;  // 0 means: use the per-dimension default
    double Lstar_max = 0.0;
    int lpi_ball_cap = 800;       // skip balls with |B'| above this
    int lpi_center_cap = 40;      // sampled centers when n exceeds pair_exhaustive_cap
    int pair_exhaustive_cap = 600;
    int pair_sample_count = 10000;
};

}  // namespace geocert
