#include "geocert/heat_spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace geocert {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

void check_degrees(const EpsilonGraph& g) {
    for (int d : g.degrees)
        if (d < 1) throw std::runtime_error("isolated vertex: Laplacian undefined");
}

}  // namespace

std::pair<mat_t, mat_t> laplacians(const EpsilonGraph& g) {
    check_degrees(g);
    mat_t L = mat_t::Identity(g.n, g.n);
    mat_t Lp = mat_t::Identity(g.n, g.n);
    for (int i = 0; i < g.n; ++i) {
        for (index_t j : g.adj[i]) {
            L(i, j) -= 1.0 / g.degrees[i];
            Lp(i, j) -= 1.0 / std::sqrt(static_cast<double>(g.degrees[i]) * g.degrees[j]);
        }
    }
    return {L, Lp};
}

SpectralDecomposition decompose(const EpsilonGraph& g, int cap) {
    if (g.n > cap) throw std::runtime_error("graph exceeds the dense eigensolve cap");
    auto [L, Lp] = laplacians(g);
    Eigen::SelfAdjointEigenSolver<mat_t> solver(Lp);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolve failed");
    SpectralDecomposition sd;
    sd.eigenvalues = solver.eigenvalues();
    sd.eigenvectors = solver.eigenvectors();
    sd.deg.resize(g.n);
    for (int i = 0; i < g.n; ++i) sd.deg[i] = g.degrees[i];
    return sd;
}

mat_t heat_Pt(const SpectralDecomposition& sd, double t) {
    if (t < 0.0) throw std::domain_error("t must be nonnegative");
    const vec_t e = (-t * sd.eigenvalues.array()).exp();
    const mat_t expL = sd.eigenvectors * e.asDiagonal() * sd.eigenvectors.transpose();
    const vec_t ds = sd.deg.array().sqrt();
    return ds.cwiseInverse().asDiagonal() * expL * ds.asDiagonal();
}

mat_t heat_Qt(const SpectralDecomposition& sd, double t) {
    if (t < 0.0) throw std::domain_error("t must be nonnegative");
    const vec_t e = (-t * sd.eigenvalues.array()).exp();
    const mat_t expL = sd.eigenvectors * e.asDiagonal() * sd.eigenvectors.transpose();
    const vec_t dsi = sd.deg.array().sqrt().inverse();
    return dsi.asDiagonal() * expL * dsi.asDiagonal();
}

double heat_Qt_entry(const SpectralDecomposition& sd, double t, index_t x, index_t y) {
    const int n = static_cast<int>(sd.eigenvalues.size());
    double s = 0.0;
    for (int j = 0; j < n; ++j)
        s += std::exp(-t * sd.eigenvalues[j]) * sd.eigenvectors(x, j) * sd.eigenvectors(y, j);
    return s / std::sqrt(sd.deg[x] * sd.deg[y]);
}

EnvelopeReport subgaussian_envelope(const EpsilonGraph& g, const SpectralDecomposition& sd,
                                    const std::vector<double>& t_grid,
                                    const std::vector<std::pair<index_t, index_t>>& pairs) {
    EnvelopeReport rep;
    std::vector<double> xs, ys;
    std::vector<int> hops_cache;
    index_t cached_src = -1;
    std::vector<double> vol_by_radius;  // per source: vol of closed SP balls
    for (const auto& [x, y] : pairs) {
        if (x != cached_src) {
            hops_cache = sp_distances_from(g, x);
            int maxh = 0;
            for (int h : hops_cache) maxh = std::max(maxh, h);
            vol_by_radius.assign(maxh + 1, 0.0);
            for (int v = 0; v < g.n; ++v)
                if (hops_cache[v] >= 0) vol_by_radius[hops_cache[v]] += g.degrees[v];
            for (int h = 1; h <= maxh; ++h) vol_by_radius[h] += vol_by_radius[h - 1];
            cached_src = x;
        }
        const int d = hops_cache[y];
        if (d < 0) {
            ++rep.points_dropped;
            continue;
        }
        for (double t : t_grid) {
            if (t <= 0.0 || t < d) {
                ++rep.points_dropped;
                continue;
            }
            const double q = heat_Qt_entry(sd, t, x, y);
            if (q <= 1e-300) {
                ++rep.points_dropped;
                continue;
            }
            const int rad = std::min(static_cast<int>(std::ceil(std::sqrt(t))),
                                     static_cast<int>(vol_by_radius.size()) - 1);
            xs.push_back(static_cast<double>(d) * d / t);
            ys.push_back(std::log(q * vol_by_radius[rad]));
            ++rep.points_used;
        }
    }
    if (xs.size() < 2) return rep;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double m = static_cast<double>(xs.size());
    const double det = m * sxx - sx * sx;
    rep.sufficient_spread = det > 1e-9 * m * std::max(1.0, sxx);
    if (!rep.sufficient_spread) return rep;
    rep.slope = (m * sxy - sx * sy) / det;
    rep.intercept = (sy - rep.slope * sx) / m;
    for (size_t i = 0; i < xs.size(); ++i) {
        const double resid = ys[i] - (rep.intercept + rep.slope * xs[i]);
        rep.max_positive_residual = std::max(rep.max_positive_residual, resid);
    }
    rep.pass = rep.slope < 0.0;
    return rep;
}

double zeta_band(double x) {
    if (x <= 0.5 || x >= 2.0) return 0.0;
    const double c = std::cos(kPi / 2.0 * std::log2(x));
    return c * c;
}

double zeta_level(double x, int level) { return zeta_band(std::ldexp(x, -level)); }

double zeta_lowpass(double x, int l_lo) {
    if (x <= 0.0) return 1.0;
    if (x >= std::ldexp(1.0, l_lo)) return 0.0;
    return 1.0 - zeta_level(x, l_lo);
}

double frame_sum(double x, int l_lo) {
    double s = zeta_lowpass(x, l_lo);
    for (int l = l_lo; l <= 1; ++l) s += zeta_level(x, l);
    return s;
}

mat_t wavelet_kernel(const SpectralDecomposition& sd, int level, int l_lo) {
    const int n = static_cast<int>(sd.eigenvalues.size());
    vec_t coef(n);
    for (int j = 0; j < n; ++j) {
        const double z = (level < l_lo) ? zeta_lowpass(sd.eigenvalues[j], l_lo)
                                        : zeta_level(sd.eigenvalues[j], level);
        coef[j] = std::sqrt(std::max(0.0, z));
    }
    return sd.eigenvectors * coef.asDiagonal() * sd.eigenvectors.transpose();
}

double wavelet_entry(const SpectralDecomposition& sd, int level, int l_lo, index_t x, index_t y) {
    const int n = static_cast<int>(sd.eigenvalues.size());
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
        const double z = (level < l_lo) ? zeta_lowpass(sd.eigenvalues[j], l_lo)
                                        : zeta_level(sd.eigenvalues[j], level);
        if (z <= 0.0) continue;
        s += std::sqrt(z) * sd.eigenvectors(x, j) * sd.eigenvectors(y, j);
    }
    return s;
}

LocalizationProfile localization_profile(const EpsilonGraph& g, const SpectralDecomposition& sd,
                                         int level, int l_lo,
                                         const std::vector<double>& bin_edges) {
    if (bin_edges.size() < 2) throw std::domain_error("need at least one bin");
    LocalizationProfile prof;
    prof.bin_edges = bin_edges;
    const size_t bins = bin_edges.size() - 1;
    prof.mean_abs.assign(bins, 0.0);
    prof.max_abs.assign(bins, 0.0);
    prof.counts.assign(bins, 0);
    const double scale = g.epsilon / std::ldexp(1.0, level);
    const mat_t K = wavelet_kernel(sd, level, l_lo);
    for (int x = 0; x < g.n; ++x) {
        const auto hops = sp_distances_from(g, x);
        for (int y = 0; y < g.n; ++y) {
            if (hops[y] < 0) continue;
            const double s = scale * hops[y];
            for (size_t b = 0; b < bins; ++b) {
                if (s >= bin_edges[b] && s < bin_edges[b + 1]) {
                    const double a = std::fabs(K(x, y));
                    prof.mean_abs[b] += a;
                    prof.max_abs[b] = std::max(prof.max_abs[b], a);
                    ++prof.counts[b];
                    break;
                }
            }
        }
    }
    for (size_t b = 0; b < bins; ++b)
        if (prof.counts[b] > 0) prof.mean_abs[b] /= prof.counts[b];
    return prof;
}

}  // namespace geocert
