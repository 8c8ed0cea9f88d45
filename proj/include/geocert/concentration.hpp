#pragma once

#include <vector>

#include "geocert/manifold.hpp"
#include "geocert/types.hpp"

namespace geocert {

enum class TailKind { chernoff_lower, chernoff_upper, okamoto_up, okamoto_down };
enum class CenterKind { fixed, vertex, sp_ball };

double chernoff_bound(TailKind kind, double n, double p, double delta);
double okamoto_bound(TailKind kind, double m, double delta);

struct DegreeBounds {
    double lower_threshold;
    double upper_threshold;
    double failure_prob;
};

/// Degree thresholds (1 +- delta)(n-1) m with union-bound failure probability.
DegreeBounds degree_bounds(int n, double delta, double m_lo, double m_hi);

struct BallCountBounds {
    double lo;
    double hi;
    double failure_prob;
};

/// Fractional vertex-count interval for a metric ball of radius r, and for
/// shortest-path balls (sp_ball, radius r >= 2) the rescaled interval.
BallCountBounds ball_count_bounds(const ManifoldModel& model, double r, int n, double delta,
                                  CenterKind center_kind, double lambda1, double lambda2,
                                  double epsilon, double p1);

struct DeviationStatistic {
    double sup_value = 0.0;
    std::vector<double> per_center_sup;
    std::vector<double> argmax_r;
    double bound = 0.0;        // stated constant (4 n^2)
    double bound_proof = 0.0;  // the proof's constant (3 n^2)
    double p2 = 0.0;
};

/// Exact sup over all centers X_i and all radii r > 0 of
/// |sqrt(eta1(B(X_i,r))) - sqrt(mu(B(X_i,r)))| via the distance breakpoints.
DeviationStatistic uniform_sqrt_deviation(const mat_t& points, const ManifoldModel& model,
                                          double p2);

struct TransferCheck {
    bool holds = true;
    double worst_margin = 0.0;  // most negative slack observed
};

/// eta1(B) <= 1.5 mu(B) + 3 d2 and mu(B) <= 1.5 eta1(B) + 3 d2 with
/// d2 = 4 ln(4 n^2 / p2) / n, over every breakpoint ball.
TransferCheck sqrt_deviation_corollary_check(const mat_t& points, const ManifoldModel& model,
                                             double p2);

}  // namespace geocert
