#pragma once

#include <vector>

#include "geocert/graph.hpp"
#include "geocert/types.hpp"

namespace geocert {

/// Doubling exponent for open shortest-path balls:
/// u = log2(6) + ceil(4 + log2((1+lambda2)/(1-lambda1))) v.
double exponent_u_open(double lambda1, double lambda2, double v);
/// Closed-ball variant: u = log2(6) + ceil(4 + log2(3)) v.
double exponent_u_closed(double v);
/// Degree-measure variant: u_closed + 2 log2(c_bullet).
double exponent_u_degree(double v, double c_bullet);

/// Qualification floor 8 ln(3 n^2 / p2) / n on eta1 of the inner ball.
double mass_floor(int n, double p2);
/// The companion floor with the 4 n^2 constant; the stricter of the two
/// governs qualification by default.
double mass_floor_alt(int n, double p2);

struct BallRatio {
    index_t center;
    double r;
    double inner;
    double outer;
    double ratio;
    bool qualifying;
};

struct DoublingReport {
    MeasureKind measure_kind;
    Openness openness;
    std::vector<double> r_grid;
    long long balls_tested = 0;
    long long qualifying_balls = 0;
    double max_ratio = 0.0;  // over qualifying balls
    double exponent_u = 0.0;
    bool pass = false;
    std::vector<BallRatio> violations;  // qualifying balls above 2^u
};

/// eta(B(x,2r)) <= 2^u eta(B(x,r)) over every center and every listed radius,
/// restricted to balls whose eta1-mass clears the floor.
DoublingReport certify_vd(const EpsilonGraph& g, MeasureKind kind,
                          const std::vector<double>& r_values, double floor, double exponent_u,
                          Openness openness);

/// Integer and half-integer radii in (1, sp_diameter], the only radii at
/// which shortest-path balls can change.
std::vector<double> vd_radius_grid(const EpsilonGraph& g);

/// max over tested balls of eta2(B)/eta1(B) distortion vs c_bullet = deg_max/deg_min.
struct MeasureComparison {
    double c_bullet;
    double max_distortion;  // max of max(eta2/eta1, eta1/eta2)
    bool within;
};
MeasureComparison compare_measures(const EpsilonGraph& g, const std::vector<double>& r_values);

}  // namespace geocert
