#include "geocert/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace geocert {

double chernoff_bound(TailKind kind, double n, double p, double delta) {
    if (p < 0.0 || p > 1.0) throw std::domain_error("p must lie in [0,1]");
    if (n < 0.0) throw std::domain_error("n must be nonnegative");
    if (kind == TailKind::chernoff_lower) {
        if (delta <= 0.0 || delta >= 1.0) throw std::domain_error("delta must lie in (0,1)");
    } else if (kind == TailKind::chernoff_upper) {
        if (delta <= 0.0 || delta > 1.0) throw std::domain_error("delta must lie in (0,1]");
    } else {
        throw std::domain_error("not a Chernoff kind");
    }
    return std::exp(-delta * delta * n * p / 3.0);
}

double okamoto_bound(TailKind kind, double m, double delta) {
    if (m < 1.0) throw std::domain_error("m must be at least 1");
    if (delta <= 0.0) throw std::domain_error("delta must be positive");
    if (kind == TailKind::okamoto_up) return std::exp(-2.0 * m * delta * delta);
    if (kind == TailKind::okamoto_down) return std::exp(-m * delta * delta);
    throw std::domain_error("not an Okamoto kind");
}

DegreeBounds degree_bounds(int n, double delta, double m_lo, double m_hi) {
    if (!(m_lo > 0.0 && m_lo <= m_hi && m_hi <= 1.0))
        throw std::domain_error("need 0 < m_lo <= m_hi <= 1");
    if (delta <= 0.0 || delta > 1.0) throw std::domain_error("delta must lie in (0,1]");
    DegreeBounds b;
    b.lower_threshold = (1.0 - delta) * (n - 1) * m_lo;
    b.upper_threshold = (1.0 + delta) * (n - 1) * m_hi;
    b.failure_prob = std::min(1.0, n * std::exp(-delta * delta * (n - 1) * m_lo / 3.0));
    return b;
}

BallCountBounds ball_count_bounds(const ManifoldModel& model, double r, int n, double delta,
                                  CenterKind center_kind, double lambda1, double lambda2,
                                  double epsilon, double p1) {
    if (r < 0.0) throw std::domain_error("radius must be nonnegative");
    if (delta <= 0.0 || delta >= 1.0) throw std::domain_error("delta must lie in (0,1)");
    const double cl = model.ahlfors_cl;
    const double cu = model.ahlfors_cu;
    const double k = model.k;
    BallCountBounds b;
    switch (center_kind) {
        case CenterKind::fixed:
        case CenterKind::vertex: {
            b.lo = (1.0 - delta) * cl * std::pow(r, k);
            b.hi = (1.0 + delta) * cu * std::pow(r, k);
            const double trials = (center_kind == CenterKind::vertex) ? n - 1 : n;
            b.failure_prob =
                std::min(1.0, 2.0 * std::exp(-delta * delta * trials * cl * std::pow(r, k) / 3.0));
            break;
        }
        case CenterKind::sp_ball: {
            if (r < 2.0) throw std::domain_error("sp_ball variant needs r >= 2");
            b.lo = (1.0 - delta) * cl * std::pow(epsilon / (8.0 * (1.0 + lambda2)), k) *
                   std::pow(r, k);
            b.hi = (1.0 + delta) * cu * std::pow(epsilon / (1.0 - lambda1), k) * std::pow(r, k);
            const double rho = 0.125 * epsilon * r / (1.0 + lambda2);
            const double p6 =
                2.0 * std::exp(-delta * delta * (n - 1) * cl * std::pow(rho, k) / 3.0);
            b.failure_prob = std::min(1.0, p6 + p1);
            break;
        }
    }
    return b;
}

namespace {

struct CenterScan {
    double sup = 0.0;
    double argmax_r = 0.0;
};

// For one center: distances to all n points (0 for the center itself), the
// step function eta1(B(x,r)) only moves at the sorted breakpoints, so the sup
// over all r is attained at a breakpoint from the left (open count) or from
// the right (closed count).
template <typename Fn>
CenterScan scan_center(std::vector<double>& dists, const ManifoldModel& model, int n, Fn&& visit) {
    std::sort(dists.begin(), dists.end());
    CenterScan out;
    size_t i = 0;
    while (i < dists.size()) {
        const double r = dists[i];
        size_t j = i;
        while (j < dists.size() && dists[j] == r) ++j;
        const double open_cnt = static_cast<double>(i);
        const double closed_cnt = static_cast<double>(j);
        const double mu = ball_measure(model, r);
        const double t_open = std::fabs(std::sqrt(open_cnt / n) - std::sqrt(mu));
        const double t_closed = std::fabs(std::sqrt(closed_cnt / n) - std::sqrt(mu));
        visit(open_cnt / n, closed_cnt / n, mu);
        const double t = std::max(t_open, t_closed);
        if (t > out.sup) {
            out.sup = t;
            out.argmax_r = r;
        }
        i = j;
    }
    return out;
}

}  // namespace

DeviationStatistic uniform_sqrt_deviation(const mat_t& points, const ManifoldModel& model,
                                          double p2) {
    const int n = static_cast<int>(points.rows());
    if (n < 4) throw std::domain_error("need at least 4 points");
    DeviationStatistic stat;
    stat.p2 = p2;
    stat.bound = 2.0 * std::sqrt(std::log(4.0 * n * static_cast<double>(n) / p2) / n);
    stat.bound_proof = 2.0 * std::sqrt(std::log(3.0 * n * static_cast<double>(n) / p2) / n);
    stat.per_center_sup.resize(n);
    stat.argmax_r.resize(n);
    const mat_t intr = intrinsic_rows(model, points);
    std::vector<double> dists(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            dists[j] = geodesic_intrinsic(model, intr, i, j);
        const auto scan = scan_center(dists, model, n, [](double, double, double) {});
        stat.per_center_sup[i] = scan.sup;
        stat.argmax_r[i] = scan.argmax_r;
        if (scan.sup > stat.sup_value) stat.sup_value = scan.sup;
    }
    return stat;
}

TransferCheck sqrt_deviation_corollary_check(const mat_t& points, const ManifoldModel& model,
                                             double p2) {
    const int n = static_cast<int>(points.rows());
    if (n < 4) throw std::domain_error("need at least 4 points");
    const double d2 = 4.0 * std::log(4.0 * n * static_cast<double>(n) / p2) / n;
    TransferCheck chk;
    const mat_t intr = intrinsic_rows(model, points);
    std::vector<double> dists(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            dists[j] = geodesic_intrinsic(model, intr, i, j);
        scan_center(dists, model, n, [&](double eta_open, double eta_closed, double mu) {
            for (double eta : {eta_open, eta_closed}) {
                const double m1 = 1.5 * mu + 3.0 * d2 - eta;
                const double m2 = 1.5 * eta + 3.0 * d2 - mu;
                const double m = std::min(m1, m2);
                if (m < chk.worst_margin) chk.worst_margin = m;
                if (m < 0.0) chk.holds = false;
            }
        });
    }
    return chk;
}

}  // namespace geocert
