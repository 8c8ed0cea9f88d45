#include "geocert/doubling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace geocert {

namespace {

void check_lambda(double lambda1, double lambda2) {
    if (lambda1 <= 0.0 || lambda1 >= 1.0 || lambda2 <= 0.0 || lambda2 >= 1.0)
        throw std::domain_error("lambda1, lambda2 must lie in (0,1)");
}

// Per-center prefix counts over BFS hop distance; ball sizes for any radius
// follow from rounding.
struct HopPrefix {
    std::vector<double> count;   // count[h] = #vertices with hops <= h
    std::vector<double> degsum;  // degsum[h] = sum of degrees over hops <= h
    int max_hop;

    double value(MeasureKind kind, double r, Openness openness, double n, double vol) const {
        int h;
        if (openness == Openness::open)
            h = static_cast<int>(std::ceil(r)) - 1;  // hops < r
        else
            h = static_cast<int>(std::floor(r));  // hops <= r
        if (h < 0) return 0.0;
        h = std::min(h, max_hop);
        return (kind == MeasureKind::empirical) ? count[h] / n : degsum[h] / vol;
    }
};

HopPrefix hop_prefix(const EpsilonGraph& g, index_t center) {
    const auto hops = sp_distances_from(g, center);
    int max_hop = 0;
    for (int h : hops) max_hop = std::max(max_hop, h);
    HopPrefix p;
    p.max_hop = max_hop;
    p.count.assign(max_hop + 1, 0.0);
    p.degsum.assign(max_hop + 1, 0.0);
    for (int v = 0; v < g.n; ++v) {
        if (hops[v] < 0) continue;
        p.count[hops[v]] += 1.0;
        p.degsum[hops[v]] += g.degrees[v];
    }
    for (int h = 1; h <= max_hop; ++h) {
        p.count[h] += p.count[h - 1];
        p.degsum[h] += p.degsum[h - 1];
    }
    return p;
}

}  // namespace

double exponent_u_open(double lambda1, double lambda2, double v) {
    check_lambda(lambda1, lambda2);
    if (v <= 0.0) throw std::domain_error("v must be positive");
    return std::log2(6.0) + std::ceil(4.0 + std::log2((1.0 + lambda2) / (1.0 - lambda1))) * v;
}

double exponent_u_closed(double v) {
    if (v <= 0.0) throw std::domain_error("v must be positive");
    return std::log2(6.0) + std::ceil(4.0 + std::log2(3.0)) * v;
}

double exponent_u_degree(double v, double c_bullet) {
    if (c_bullet < 1.0) throw std::domain_error("c_bullet must be at least 1");
    return exponent_u_closed(v) + 2.0 * std::log2(c_bullet);
}

double mass_floor(int n, double p2) {
    if (p2 <= 0.0 || p2 > 0.5) throw std::domain_error("p2 must lie in (0, 0.5]");
    return 8.0 * std::log(3.0 * n * static_cast<double>(n) / p2) / n;
}

double mass_floor_alt(int n, double p2) {
    if (p2 <= 0.0 || p2 > 0.5) throw std::domain_error("p2 must lie in (0, 0.5]");
    return 8.0 * std::log(4.0 * n * static_cast<double>(n) / p2) / n;
}

std::vector<double> vd_radius_grid(const EpsilonGraph& g) {
    // double sweep eccentricity as the grid extent
    auto d0 = sp_distances_from(g, 0);
    index_t far = 0;
    for (int v = 0; v < g.n; ++v)
        if (d0[v] > d0[far]) far = v;
    auto d1 = sp_distances_from(g, far);
    int diam = 0;
    for (int v = 0; v < g.n; ++v) diam = std::max(diam, d1[v]);
    std::vector<double> grid;
    for (double r = 1.5; r <= diam + 0.5; r += 0.5) grid.push_back(r);
    return grid;
}

DoublingReport certify_vd(const EpsilonGraph& g, MeasureKind kind,
                          const std::vector<double>& r_values, double floor, double exponent_u,
                          Openness openness) {
    if (!is_connected(g)) throw std::runtime_error("certifier requires a connected graph");
    for (double r : r_values)
        if (r <= 1.0 || r > g.n) throw std::domain_error("radii must lie in (1, n]");
    DoublingReport rep;
    rep.measure_kind = kind;
    rep.openness = openness;
    rep.r_grid = r_values;
    rep.exponent_u = exponent_u;
    const double n = g.n;
    const double vol = static_cast<double>(g.volume);
    const double cap = std::pow(2.0, exponent_u);
    for (index_t c = 0; c < g.n; ++c) {
        const HopPrefix p = hop_prefix(g, c);
        for (double r : r_values) {
            const double inner = p.value(kind, r, openness, n, vol);
            const double outer = p.value(kind, 2.0 * r, openness, n, vol);
            const double inner_emp = p.value(MeasureKind::empirical, r, openness, n, vol);
            ++rep.balls_tested;
            const bool qual = inner_emp >= floor;
            if (!qual) continue;
            ++rep.qualifying_balls;
            const double ratio = outer / inner;  // inner holds the center, never 0
            rep.max_ratio = std::max(rep.max_ratio, ratio);
            if (ratio > cap) rep.violations.push_back({c, r, inner, outer, ratio, qual});
        }
    }
    rep.pass = rep.violations.empty();
    return rep;
}

MeasureComparison compare_measures(const EpsilonGraph& g, const std::vector<double>& r_values) {
    int deg_min = g.degrees.empty() ? 0 : g.degrees[0];
    int deg_max = deg_min;
    for (int d : g.degrees) {
        deg_min = std::min(deg_min, d);
        deg_max = std::max(deg_max, d);
    }
    if (deg_min == 0) throw std::runtime_error("degree measure undefined with isolated vertices");
    MeasureComparison cmp;
    cmp.c_bullet = static_cast<double>(deg_max) / deg_min;
    cmp.max_distortion = 1.0;
    const double n = g.n;
    const double vol = static_cast<double>(g.volume);
    for (index_t c = 0; c < g.n; ++c) {
        const HopPrefix p = hop_prefix(g, c);
        for (double r : r_values) {
            const double e1 = p.value(MeasureKind::empirical, r, Openness::open, n, vol);
            const double e2 = p.value(MeasureKind::degree_volume, r, Openness::open, n, vol);
            if (e1 <= 0.0 || e2 <= 0.0) continue;
            cmp.max_distortion = std::max({cmp.max_distortion, e2 / e1, e1 / e2});
        }
    }
    cmp.within = cmp.max_distortion <= cmp.c_bullet * (1.0 + 1e-12);
    return cmp;
}

}  // namespace geocert
