#pragma once

#include <utility>
#include <vector>

#include "geocert/graph.hpp"
#include "geocert/types.hpp"

namespace geocert {

/// Eigendecomposition of the symmetric normalized Laplacian
/// L' = D^{1/2} (I - D^{-1} A) D^{-1/2}.
struct SpectralDecomposition {
    vec_t eigenvalues;   // ascending, inside [0, 2]
    mat_t eigenvectors;  // orthonormal columns
    vec_t deg;
};

/// Dense matrices L = I - D^{-1} A and L'; requires min degree >= 1.
std::pair<mat_t, mat_t> laplacians(const EpsilonGraph& g);

/// Full eigensolve; refuses graphs above the cap instead of approximating.
SpectralDecomposition decompose(const EpsilonGraph& g, int cap = 2500);

mat_t heat_Pt(const SpectralDecomposition& sd, double t);
mat_t heat_Qt(const SpectralDecomposition& sd, double t);
double heat_Qt_entry(const SpectralDecomposition& sd, double t, index_t x, index_t y);

struct EnvelopeReport {
    double slope = 0.0;      // fitted -c2
    double intercept = 0.0;  // fitted ln c1
    double max_positive_residual = 0.0;
    long long points_used = 0;
    long long points_dropped = 0;
    bool sufficient_spread = false;
    bool pass = false;  // slope < 0 with sufficient spread
};

/// ln(Q_t(x,y) vol(closed B_SP(x, ceil(sqrt(t))))) against d_SP(x,y)^2 / t,
/// least-squares affine fit. Pairs with t < d_SP or vanishing Q_t are dropped.
EnvelopeReport subgaussian_envelope(const EpsilonGraph& g, const SpectralDecomposition& sd,
                                    const std::vector<double>& t_grid,
                                    const std::vector<std::pair<index_t, index_t>>& pairs);

/// Cosine-squared band function on [1/2, 2]; levels tile (0, 2] exactly.
double zeta_band(double x);
double zeta_level(double x, int level);
/// Low-pass completion for the coarsest level: 1 - zeta_{l_lo}(x) below
/// 2^{l_lo}, one below 2^{l_lo - 1}.
double zeta_lowpass(double x, int l_lo);

/// Sum over the bank (low-pass plus levels l_lo..1); equals 1 on (0, 2].
double frame_sum(double x, int l_lo);

/// K_level = sum_j sqrt(zeta_level(lambda_j)) f_j f_j^T; level l_lo means the
/// low-pass kernel.
mat_t wavelet_kernel(const SpectralDecomposition& sd, int level, int l_lo);
double wavelet_entry(const SpectralDecomposition& sd, int level, int l_lo, index_t x, index_t y);

struct LocalizationProfile {
    std::vector<double> bin_edges;  // bins of s = eps d_SP / 2^level
    std::vector<double> mean_abs;
    std::vector<double> max_abs;
    std::vector<long long> counts;
};

LocalizationProfile localization_profile(const EpsilonGraph& g, const SpectralDecomposition& sd,
                                         int level, int l_lo,
                                         const std::vector<double>& bin_edges);

}  // namespace geocert
