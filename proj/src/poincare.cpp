#include "geocert/poincare.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>

#include "geocert/rng.hpp"

namespace geocert {

namespace {

std::vector<index_t> sorted_ball(const EpsilonGraph& g, index_t center, double r) {
    auto b = ball_sp(g, center, r, Openness::closed);
    std::sort(b.begin(), b.end());
    return b;
}

}  // namespace

double kappa_general(const std::vector<double>& eta_on_ball, double l_max, double b_max) {
    double total = 0.0;
    double top = 0.0;
    for (double e : eta_on_ball) {
        total += e;
        top = std::max(top, e);
    }
    if (eta_on_ball.empty() || total <= 0.0)
        throw std::domain_error("ball must carry positive measure");
    return 0.5 * (1.0 / total) * l_max * top * top * b_max;
}

double C_kappa_bound(int n, double epsilon, int k, double Lstar_min, double Lstar_max, double c_l,
                     double c_u, double delta, double eta_plus, double eta_minus) {
    const double sk = std::sqrt(k + 3.0);
    const double w = 2.0 * (1.0 + delta) / (1.0 - delta) * (c_u / c_l) *
                     std::pow(Lstar_max / Lstar_min, k) * std::pow(4.0, k) * std::pow(sk, k);
    return (1.0 / (n * std::pow(epsilon, k + 2))) *
           (eta_plus * eta_plus / ((1.0 - delta) * c_l * eta_minus)) * (1.0 + w) * (1.0 + w) * k *
           k * std::pow(2.0 * sk / Lstar_min, k + 2);
}

LpiConstants lpi_constants(const ManifoldModel& model, const AssumptionParams& params, int n,
                           double epsilon, double eta_plus, double eta_minus, double Lstar_min,
                           double Lstar_max) {
    const double l1 = params.lambda1;
    const double l2 = params.lambda2;
    const double delta = params.delta;
    if (l1 <= 0.0 || l1 >= 1.0 || l2 <= 0.0 || l2 >= 1.0)
        throw std::domain_error("lambda1, lambda2 must lie in (0,1)");
    if (delta <= 0.0 || delta >= 1.0) throw std::domain_error("delta must lie in (0,1)");
    const int k = model.k;
    const double cl = model.ahlfors_cl;
    const double cu = model.ahlfors_cu;
    const double sk = std::sqrt(k + 3.0);
    LpiConstants c;
    c.lambda = 4.0 * (1.0 + l2) / (1.0 - l1) + 1.0;
    c.w = 2.0 * (1.0 + delta) / (1.0 - delta) * (cu / cl) * std::pow(Lstar_max / Lstar_min, k) *
          std::pow(4.0, k) * std::pow(sk, k);
    c.w_emp = c.w / 2.0;
    const double tail = (1.0 + c.w) * (1.0 + c.w) * k * k * std::pow(2.0 * sk / Lstar_min, k + 2);
    c.C_hat = std::pow(1.0 - l1, -(2.0 + 2.0 * k)) *
              ((1.0 + delta) * (1.0 + delta) * cu * cu /
               ((1.0 - delta) * (1.0 - delta) * cl * cl)) *
              tail;
    c.C_star = (1.0 / (std::pow(epsilon, k) * n)) * std::pow(1.0 - l1, -2.0) *
               (eta_plus * eta_plus / ((1.0 - delta) * cl * eta_minus)) * tail;
    c.C_emp_bound = (1.0 / (std::pow(epsilon, k) * n)) * std::pow(1.0 - l1, -2.0) *
                    (1.0 / ((1.0 - delta) * cl)) * tail;
    c.C_kappa =
        C_kappa_bound(n, epsilon, k, Lstar_min, Lstar_max, cl, cu, delta, eta_plus, eta_minus);
    const double lk = std::pow(Lstar_min, k);
    const double hk = std::pow(Lstar_max, k);
    c.p4 = 2.0 * std::pow(2.0 * sk * n * (1.0 - l1) / Lstar_min, k) *
               std::exp(-delta * delta * n * cl / 6.0 * std::pow(epsilon, k) * lk /
                        (std::pow(4.0, k) * std::pow(sk, k) * hk)) +
           2.0 * std::exp(-delta * delta * n * cl * std::pow(epsilon, k) /
                          (6.0 * std::pow(1.0 - l1, k)));
    c.r_plus = std::min((1.0 - l1) / epsilon * model.r_bullet, static_cast<double>(n));
    return c;
}

double weighted_variance(const std::vector<double>& weights, const std::vector<double>& f,
                         const std::vector<index_t>& B) {
    double wsum = 0.0, mean = 0.0;
    for (index_t v : B) {
        wsum += weights[v];
        mean += weights[v] * f[v];
    }
    if (wsum <= 0.0) throw std::domain_error("ball must carry positive weight");
    mean /= wsum;
    double var = 0.0;
    for (index_t v : B) var += weights[v] * (f[v] - mean) * (f[v] - mean);
    return var;
}

double dirichlet_energy(const EpsilonGraph& g, const std::vector<double>& f,
                        const std::vector<index_t>& vertices) {
    std::vector<char> in(g.n, 0);
    for (index_t v : vertices) in[v] = 1;
    double e = 0.0;
    for (index_t u : vertices) {
        for (index_t v : g.adj[u]) {
            if (!in[v]) continue;
            const double d = f[u] - f[v];
            e += d * d;  // ordered double sum: each edge appears twice
        }
    }
    return e;
}

double optimal_poincare_constant(const EpsilonGraph& g, const std::vector<double>& weights,
                                 index_t center, double r, double lambda, int ball_cap,
                                 bool* skipped) {
    if (!is_connected(g)) throw std::runtime_error("certifier requires a connected graph");
    if (skipped) *skipped = false;
    const auto B = sorted_ball(g, center, r);
    const auto Bp = sorted_ball(g, center, lambda * r);
    const int np = static_cast<int>(Bp.size());
    if (np > ball_cap) {
        if (skipped) {
            *skipped = true;
            return 0.0;
        }
        throw std::runtime_error("enlarged ball exceeds the configured cap");
    }
    if (np == 1) return 0.0;
    std::vector<int> local(g.n, -1);
    for (int i = 0; i < np; ++i) local[Bp[i]] = i;

    // Both quadratic forms vanish on constants, so every equivalence class
    // has a representative with f = 0 at vertex Bp[0]; grounding that vertex
    // turns the Dirichlet form into a positive definite sparse system.
    std::vector<Eigen::Triplet<double>> trip;
    for (index_t u : Bp) {
        const int lu = local[u];
        if (lu == 0) continue;
        double diag = 0.0;
        for (index_t v : g.adj[u]) {
            const int lv = local[v];
            if (lv < 0) continue;
            diag += 2.0;
            if (lv != 0) trip.emplace_back(lu - 1, lv - 1, -2.0);
        }
        trip.emplace_back(lu - 1, lu - 1, diag);
    }
    Eigen::SparseMatrix<double> Eg(np - 1, np - 1);
    Eg.setFromTriplets(trip.begin(), trip.end());
    Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> chol(Eg);
    if (chol.info() != Eigen::Success)
        throw std::runtime_error("Dirichlet form factorization failed");

    // centering form as F^T F with one row per ball vertex:
    // (F f)_i = sqrt(w_i) (f_i - mean_w f); top eigenvalue of F E^+ F^T.
    const int nb = static_cast<int>(B.size());
    vec_t w(nb);
    double W = 0.0;
    for (int i = 0; i < nb; ++i) {
        w[i] = weights[B[i]];
        W += w[i];
    }
    if (W <= 0.0) throw std::domain_error("ball must carry positive weight");
    mat_t Ft = mat_t::Zero(np - 1, nb);  // F^T without the grounded row
    for (int i = 0; i < nb; ++i) {
        const double sw = std::sqrt(w[i]);
        const int li = local[B[i]];
        if (li != 0) Ft(li - 1, i) += sw;
        for (int j = 0; j < nb; ++j) {
            const int lj = local[B[j]];
            if (lj != 0) Ft(lj - 1, i) -= sw * w[j] / W;
        }
    }
    const mat_t Y = chol.solve(Ft);
    const mat_t S = Ft.transpose() * Y;  // nb x nb, symmetric PSD
    Eigen::SelfAdjointEigenSolver<mat_t> solver(S);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolve failed");
    const double top = solver.eigenvalues().maxCoeff();
    return std::max(0.0, top) / (r * r);
}

std::vector<BallLpiResult> certify_lpi(const EpsilonGraph& g, const ManifoldModel& model,
                                       const LpiConstants& constants, MeasureKind kind,
                                       const AssumptionParams& params, double r_lo, double r_hi,
                                       uint64_t seed) {
    if (!is_connected(g)) throw std::runtime_error("certifier requires a connected graph");
    std::vector<double> weights(g.n);
    double bound = 0.0;
    if (kind == MeasureKind::empirical) {
        std::fill(weights.begin(), weights.end(), 1.0);  // both sides scaled by n
        bound = constants.C_emp_bound;
    } else {
        for (int i = 0; i < g.n; ++i) weights[i] = static_cast<double>(g.degrees[i]);
        bound = constants.C_hat;
    }

    std::vector<index_t> centers;
    if (g.n <= params.pair_exhaustive_cap) {
        centers.resize(g.n);
        for (int i = 0; i < g.n; ++i) centers[i] = i;
    } else {
        Rng rng(seed, 0x6c7069);
        std::vector<char> used(g.n, 0);
        while (static_cast<int>(centers.size()) < std::min(params.lpi_center_cap, g.n)) {
            const index_t c = static_cast<index_t>(rng.uniform_int(g.n));
            if (!used[c]) {
                used[c] = 1;
                centers.push_back(c);
            }
        }
        std::sort(centers.begin(), centers.end());
    }

    const double top = std::min(r_hi, constants.r_plus - 1e-9);
    std::vector<BallLpiResult> results;
    for (index_t c : centers) {
        for (double r = std::max(1.0, r_lo); r <= top; r += 1.0) {
            BallLpiResult res;
            res.center = c;
            res.r = r;
            res.B_size = static_cast<int>(ball_sp(g, c, r, Openness::closed).size());
            res.Bp_size =
                static_cast<int>(ball_sp(g, c, constants.lambda * r, Openness::closed).size());
            bool skipped = false;
            res.C_emp = optimal_poincare_constant(g, weights, c, r, constants.lambda,
                                                  params.lpi_ball_cap, &skipped);
            res.skipped = skipped;
            res.bound = bound;
            res.pass = !skipped && res.C_emp <= bound;
            results.push_back(res);
        }
    }
    return results;
}

bool variance_monotonicity(const std::vector<double>& weights, const std::vector<double>& f,
                           const std::vector<index_t>& B1, const std::vector<index_t>& B2) {
    std::vector<char> in2(weights.size(), 0);
    for (index_t v : B2) in2[v] = 1;
    for (index_t v : B1)
        if (!in2[v]) throw std::domain_error("B1 must be contained in B2");
    return weighted_variance(weights, f, B1) <= weighted_variance(weights, f, B2) + 1e-12;
}

}  // namespace geocert
