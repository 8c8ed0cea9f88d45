#pragma once

#include <cstdint>
#include <vector>

#include "geocert/graph.hpp"
#include "geocert/manifold.hpp"
#include "geocert/types.hpp"

namespace geocert {

struct DistanceViolation {
    index_t i;
    index_t j;
    double lhs;
    double mid;
    double rhs;
};

struct DistanceReport {
    long long pairs_checked = 0;
    std::vector<DistanceViolation> violations;
    double max_slack = 0.0;
    bool pass = false;
    bool assumptions_met = true;
    double violation_fraction = 0.0;
};

/// Does epsilon satisfy eps < min(s0, (2/pi) r0 sqrt(24 lambda1))?
bool a3_epsilon_ok(const ManifoldModel& model, double epsilon, double lambda1);
/// Sample-size threshold n >= -ln(p1 u)/u with u = mu(B(., eps lambda2 / 16)).
double a3_sample_threshold(const ManifoldModel& model, double epsilon, double lambda2, double p1);

/// Deterministic sandwich 0.25 eps (d_SP - 1) <= d_GE <= eps d_SP for all
/// (possibly sampled) pairs. A violation is an implementation bug.
DistanceReport check_sandwich_sp_ge(const EpsilonGraph& g, const AssumptionParams& params,
                                    uint64_t seed);

/// (1 - lambda1) d_M <= d_GE <= (1 + lambda2) d_M; probabilistic, so the
/// report carries the violation fraction instead of asserting.
DistanceReport check_ge_vs_manifold(const EpsilonGraph& g, const ManifoldModel& model,
                                    const AssumptionParams& params, uint64_t seed);

/// Ball inclusions: B_SP(x,r) inside the metric ball of radius
/// (1-lambda1)^{-1} eps r, and the metric ball of radius eps r inside
/// B_SP(x, 4(1+lambda2) r + 1).
DistanceReport check_ball_inclusions(const EpsilonGraph& g, const ManifoldModel& model,
                                     const AssumptionParams& params,
                                     const std::vector<double>& radii, uint64_t seed);

}  // namespace geocert
