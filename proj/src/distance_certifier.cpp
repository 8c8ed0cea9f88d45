#include "geocert/distance_certifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "geocert/rng.hpp"

namespace geocert {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTol = 1e-12;

// Exhaustive source list for small graphs; a seed-logged source subset
// covering at least pair_sample_count pairs otherwise.
std::vector<index_t> pick_sources(const EpsilonGraph& g, const AssumptionParams& params,
                                  uint64_t seed) {
    std::vector<index_t> sources;
    if (g.n <= params.pair_exhaustive_cap) {
        sources.resize(g.n);
        for (int i = 0; i < g.n; ++i) sources[i] = i;
        return sources;
    }
    const int want = std::max(1, (params.pair_sample_count + g.n - 1) / g.n);
    Rng rng(seed, 0x70616972);
    std::vector<char> used(g.n, 0);
    while (static_cast<int>(sources.size()) < std::min(want, g.n)) {
        const index_t v = static_cast<index_t>(rng.uniform_int(g.n));
        if (!used[v]) {
            used[v] = 1;
            sources.push_back(v);
        }
    }
    std::sort(sources.begin(), sources.end());
    return sources;
}

void require_connected(const EpsilonGraph& g) {
    if (!is_connected(g)) throw std::runtime_error("certifier requires a connected graph");
}

}  // namespace

bool a3_epsilon_ok(const ManifoldModel& model, double epsilon, double lambda1) {
    const double cap = std::min(model.s0, (2.0 / kPi) * model.r0 * std::sqrt(24.0 * lambda1));
    return epsilon < cap;
}

double a3_sample_threshold(const ManifoldModel& model, double epsilon, double lambda2, double p1) {
    const double u = ball_measure(model, epsilon * lambda2 / 16.0);
    if (u <= 0.0) return std::numeric_limits<double>::infinity();
    return -std::log(p1 * u) / u;
}

DistanceReport check_sandwich_sp_ge(const EpsilonGraph& g, const AssumptionParams& params,
                                    uint64_t seed) {
    DistanceReport rep;
    const double eps = g.epsilon;
    for (index_t s : pick_sources(g, params, seed)) {
        const auto sp = sp_distances_from(g, s);
        const auto ge = ge_distances_from(g, s);
        for (int t = 0; t < g.n; ++t) {
            if (sp[t] < 0) continue;  // the bound concerns connected pairs
            const double lhs = 0.25 * eps * (sp[t] - 1);
            const double rhs = eps * sp[t];
            ++rep.pairs_checked;
            if (ge[t] < lhs - kTol || ge[t] > rhs + kTol) {
                rep.violations.push_back({s, t, lhs, ge[t], rhs});
            }
            if (sp[t] >= 1) rep.max_slack = std::max(rep.max_slack, ge[t] / rhs);
        }
    }
    rep.pass = rep.violations.empty();
    rep.violation_fraction =
        static_cast<double>(rep.violations.size()) / std::max<long long>(1, rep.pairs_checked);
    return rep;
}

DistanceReport check_ge_vs_manifold(const EpsilonGraph& g, const ManifoldModel& model,
                                    const AssumptionParams& params, uint64_t seed) {
    require_connected(g);
    DistanceReport rep;
    rep.assumptions_met =
        a3_epsilon_ok(model, g.epsilon, params.lambda1) &&
        g.n >= a3_sample_threshold(model, g.epsilon, params.lambda2, params.p1);
    const mat_t intr = intrinsic_rows(model, g.points);
    for (index_t s : pick_sources(g, params, seed)) {
        const auto ge = ge_distances_from(g, s);
        for (int t = 0; t < g.n; ++t) {
            const double dm = geodesic_intrinsic(model, intr, s, t);
            const double lhs = (1.0 - params.lambda1) * dm;
            const double rhs = (1.0 + params.lambda2) * dm;
            ++rep.pairs_checked;
            if (ge[t] < lhs - kTol || ge[t] > rhs + kTol) {
                rep.violations.push_back({s, t, lhs, ge[t], rhs});
            }
            if (rhs > 0.0) rep.max_slack = std::max(rep.max_slack, ge[t] / rhs);
        }
    }
    rep.violation_fraction =
        static_cast<double>(rep.violations.size()) / std::max<long long>(1, rep.pairs_checked);
    rep.pass = rep.violations.empty();
    return rep;
}

DistanceReport check_ball_inclusions(const EpsilonGraph& g, const ManifoldModel& model,
                                     const AssumptionParams& params,
                                     const std::vector<double>& radii, uint64_t seed) {
    require_connected(g);
    DistanceReport rep;
    rep.assumptions_met =
        a3_epsilon_ok(model, g.epsilon, params.lambda1) &&
        g.n >= a3_sample_threshold(model, g.epsilon, params.lambda2, params.p1);
    const mat_t intr = intrinsic_rows(model, g.points);
    const double eps = g.epsilon;
    for (index_t c : pick_sources(g, params, seed)) {
        const auto sp = sp_distances_from(g, c);
        std::vector<double> dm(g.n);
        for (int v = 0; v < g.n; ++v) dm[v] = geodesic_intrinsic(model, intr, c, v);
        for (double r : radii) {
            // B_SP(c, r) inside metric ball of radius (1-l1)^{-1} eps r
            const double rr1 = eps * r / (1.0 - params.lambda1);
            // metric ball of radius eps*r inside B_SP(c, 4(1+l2) r + 1)
            const double rho = eps * r;
            const double rr2 = 4.0 * (1.0 + params.lambda2) * r + 1.0;
            ++rep.pairs_checked;
            for (int v = 0; v < g.n; ++v) {
                if (sp[v] < r && !(dm[v] < rr1 + kTol)) {
                    rep.violations.push_back({c, v, r, dm[v], rr1});
                    break;
                }
                if (dm[v] < rho && !(sp[v] < rr2 + kTol)) {
                    rep.violations.push_back({c, v, rho, static_cast<double>(sp[v]), rr2});
                    break;
                }
            }
        }
    }
    rep.violation_fraction =
        static_cast<double>(rep.violations.size()) / std::max<long long>(1, rep.pairs_checked);
    rep.pass = rep.violations.empty();
    return rep;
}

}  // namespace geocert
