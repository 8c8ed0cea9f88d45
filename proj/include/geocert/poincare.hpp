#pragma once

#include <cstdint>
#include <vector>

#include "geocert/graph.hpp"
#include "geocert/manifold.hpp"
#include "geocert/types.hpp"

namespace geocert {

struct LpiConstants {
    double lambda = 0.0;
    double C_hat = 0.0;      // degree-measure constant
    double C_star = 0.0;     // general-measure constant
    double C_emp_bound = 0.0;  // empirical-measure constant (n C_star at eta = 1/n)
    double C_kappa = 0.0;
    double w = 0.0;          // auxiliary constant, 2(1+delta)/(1-delta) variant
    double w_emp = 0.0;      // (1+delta)/(1-delta) variant
    double p4 = 0.0;
    double r_plus = 0.0;
};

/// kappa_B = 0.5 (sum_B eta)^{-1} l_max max_B eta^2 b_max.
double kappa_general(const std::vector<double>& eta_on_ball, double l_max, double b_max);

/// C_kappa = (1/(n eps^{k+2})) (eta+)^2 / ((1-delta) c_l eta-) (1+w)^2 k^2
///           (2 sqrt(k+3)/L*_min)^{k+2}.
double C_kappa_bound(int n, double epsilon, int k, double Lstar_min, double Lstar_max, double c_l,
                     double c_u, double delta, double eta_plus, double eta_minus);

LpiConstants lpi_constants(const ManifoldModel& model, const AssumptionParams& params, int n,
                           double epsilon, double eta_plus, double eta_minus, double Lstar_min,
                           double Lstar_max);

struct BallLpiResult {
    index_t center = 0;
    double r = 0.0;
    int B_size = 0;
    int Bp_size = 0;
    double C_emp = 0.0;
    double bound = 0.0;
    bool pass = false;
    bool skipped = false;
};

/// Smallest valid constant for the given ball: the top generalized eigenvalue
/// of the weighted centering form on B against the Dirichlet form (ordered
/// double sum) on the enlarged ball B', divided by r^2. weights holds one
/// nonnegative value per graph vertex.
double optimal_poincare_constant(const EpsilonGraph& g, const std::vector<double>& weights,
                                 index_t center, double r, double lambda, int ball_cap,
                                 bool* skipped = nullptr);

std::vector<BallLpiResult> certify_lpi(const EpsilonGraph& g, const ManifoldModel& model,
                                       const LpiConstants& constants, MeasureKind kind,
                                       const AssumptionParams& params, double r_lo, double r_hi,
                                       uint64_t seed);

/// Weighted variance over B1 is at most the variance over B2 for B1 inside B2.
bool variance_monotonicity(const std::vector<double>& weights, const std::vector<double>& f,
                           const std::vector<index_t>& B1, const std::vector<index_t>& B2);

/// Rayleigh data used by the dominance checks: weighted variance over B and
/// the ordered-double-sum Dirichlet energy over B (or B').
double weighted_variance(const std::vector<double>& weights, const std::vector<double>& f,
                         const std::vector<index_t>& B);
double dirichlet_energy(const EpsilonGraph& g, const std::vector<double>& f,
                        const std::vector<index_t>& vertices);

}  // namespace geocert
