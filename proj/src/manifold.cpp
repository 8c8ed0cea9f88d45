#include "geocert/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "geocert/rng.hpp"

namespace geocert {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kOnManifoldTol = 1e-9;

double wrap_abs(double d, double L) {
    d = std::fabs(std::fmod(d, L));
    return std::min(d, L - d);
}

// Area of {x^2+y^2 <= r^2} intersected with [-a,a] x [-b,b].
double disc_rect_area(double r, double a, double b) {
    if (r <= 0.0) return 0.0;
    auto antider = [r](double x) {
        // integral of sqrt(r^2 - t^2) dt
        x = std::clamp(x, -r, r);
        return 0.5 * (x * std::sqrt(std::max(0.0, r * r - x * x)) +
                      r * r * std::asin(x / r));
    };
    // first-quadrant area: integral over x in [0, min(a,r)] of min(b, sqrt(r^2-x^2))
    const double xm = std::min(a, r);
    double x0 = 0.0;
    if (r > b) x0 = std::min(std::sqrt(r * r - b * b), xm);
    const double quadrant = b * x0 + (antider(xm) - antider(x0));
    return 4.0 * quadrant;
}

// Minimum ambient chord over torus pairs at geodesic distance exactly s.
// The chord is monotone in each intrinsic offset, so the infimum over
// {d_M >= s} is attained on the circle d_M = s; s <= min(L1,L2)/2 keeps the
// whole circle inside the fundamental rectangle.
double torus_min_chord_at(double L1, double L2, double s) {
    const double r1 = L1 / kTwoPi;
    const double r2 = L2 / kTwoPi;
    const int steps = 20000;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= steps; ++i) {
        const double th = 0.5 * kPi * static_cast<double>(i) / steps;
        const double d1 = s * std::cos(th);
        const double d2 = s * std::sin(th);
        const double c1 = 2.0 * r1 * std::sin(kPi * d1 / L1);
        const double c2 = 2.0 * r2 * std::sin(kPi * d2 / L2);
        best = std::min(best, std::sqrt(c1 * c1 + c2 * c2));
    }
    return best;
}

// Declared Ahlfors constants are only accepted after a grid scan of
// mu(B(x,r))/r^k over the radius range.
void verify_ahlfors(const ManifoldModel& m) {
    const int steps = 4000;
    for (int i = 1; i <= steps; ++i) {
        const double r = m.diameter * static_cast<double>(i) / steps;
        const double mu = ball_measure(m, r);
        const double rk = std::pow(r, m.k);
        if (mu < m.ahlfors_cl * rk * (1.0 - 1e-9) - 1e-12 ||
            mu > m.ahlfors_cu * rk * (1.0 + 1e-9) + 1e-12) {
            throw std::logic_error("declared Ahlfors constants fail grid verification");
        }
    }
}

}  // namespace

std::string ManifoldModel::name() const {
    switch (kind) {
        case ManifoldKind::circle: return "circle";
        case ManifoldKind::sphere2: return "sphere2";
        case ManifoldKind::flat_torus: return "flat_torus";
    }
    return "unknown";
}

ManifoldModel make_circle(double R) {
    if (R <= 0.0) throw std::domain_error("circle radius must be positive");
    ManifoldModel m;
    m.kind = ManifoldKind::circle;
    m.k = 1;
    m.K = 2;
    m.R = R;
    m.curvature_bound = 0.0;  // sectional curvature of a 1-manifold
    m.injectivity_radius = kPi * R;
    m.r_bullet = kPi * R / 2.0;
    m.ahlfors_cl = 1.0 / (kPi * R);
    m.ahlfors_cu = 1.0 / (kPi * R);
    m.doubling_v = 1.0;  // log2(cu/cl) + k
    m.s0 = std::numeric_limits<double>::infinity();
    m.r0 = R;
    m.diameter = kPi * R;
    verify_ahlfors(m);
    return m;
}

ManifoldModel make_sphere2(double R) {
    if (R <= 0.0) throw std::domain_error("sphere radius must be positive");
    ManifoldModel m;
    m.kind = ManifoldKind::sphere2;
    m.k = 2;
    m.K = 3;
    m.R = R;
    m.curvature_bound = 1.0 / (R * R);
    m.injectivity_radius = kPi * R;
    m.r_bullet = std::min(kPi * R / 2.0, kPi / (2.0 * std::sqrt(m.curvature_bound)));
    m.ahlfors_cl = 1.0 / (kPi * kPi * R * R);
    m.ahlfors_cu = 1.0 / (4.0 * R * R);
    m.doubling_v = std::log2(m.ahlfors_cu / m.ahlfors_cl) + 2.0;
    m.s0 = std::numeric_limits<double>::infinity();
    m.r0 = R;
    m.diameter = kPi * R;
    verify_ahlfors(m);
    return m;
}

ManifoldModel make_flat_torus(double L1, double L2) {
    if (L1 <= 0.0 || L2 <= 0.0) throw std::domain_error("torus sides must be positive");
    ManifoldModel m;
    m.kind = ManifoldKind::flat_torus;
    m.k = 2;
    m.K = 4;
    m.L1 = L1;
    m.L2 = L2;
    m.curvature_bound = 0.0;
    m.injectivity_radius = std::min(L1, L2) / 2.0;
    m.r_bullet = m.injectivity_radius / 2.0;
    m.diameter = 0.5 * std::hypot(L1, L2);
    m.ahlfors_cu = kPi / (L1 * L2);
    m.ahlfors_cl = 1.0 / (m.diameter * m.diameter);
    m.doubling_v = std::log2(m.ahlfors_cu / m.ahlfors_cl) + 2.0;
    m.r0 = std::min(L1, L2) / kTwoPi;  // smallest generating-circle radius
    m.s0 = torus_min_chord_at(L1, L2, kPi * m.r0);
    verify_ahlfors(m);
    return m;
}

mat_t sample(const ManifoldModel& model, int n, uint64_t seed) {
    if (n < 1) throw std::domain_error("sample size must be at least 1");
    Rng rng(seed, 0x5a6d706c);
    mat_t pts(n, model.K);
    for (int i = 0; i < n; ++i) {
        switch (model.kind) {
            case ManifoldKind::circle: {
                const double th = kTwoPi * rng.uniform();
                pts(i, 0) = model.R * std::cos(th);
                pts(i, 1) = model.R * std::sin(th);
                break;
            }
            case ManifoldKind::sphere2: {
                const double z = 2.0 * rng.uniform() - 1.0;
                const double ph = kTwoPi * rng.uniform();
                const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
                pts(i, 0) = model.R * s * std::cos(ph);
                pts(i, 1) = model.R * s * std::sin(ph);
                pts(i, 2) = model.R * z;
                break;
            }
            case ManifoldKind::flat_torus: {
                vec_t t(2);
                t[0] = model.L1 * rng.uniform();
                t[1] = model.L2 * rng.uniform();
                pts.row(i) = ambient_of(model, t).transpose();
                break;
            }
        }
    }
    return pts;
}

void check_on_manifold(const ManifoldModel& model, const vec_t& x) {
    if (x.size() != model.K) throw std::domain_error("wrong ambient dimension");
    switch (model.kind) {
        case ManifoldKind::circle:
        case ManifoldKind::sphere2: {
            if (std::fabs(x.norm() - model.R) > kOnManifoldTol * std::max(1.0, model.R))
                throw std::domain_error("point off manifold");
            break;
        }
        case ManifoldKind::flat_torus: {
            const double r1 = model.L1 / kTwoPi;
            const double r2 = model.L2 / kTwoPi;
            if (std::fabs(std::hypot(x[0], x[1]) - r1) > kOnManifoldTol * std::max(1.0, r1) ||
                std::fabs(std::hypot(x[2], x[3]) - r2) > kOnManifoldTol * std::max(1.0, r2))
                throw std::domain_error("point off manifold");
            break;
        }
    }
}

vec_t intrinsic_of(const ManifoldModel& model, const vec_t& ambient) {
    switch (model.kind) {
        case ManifoldKind::circle: {
            vec_t t(1);
            t[0] = std::atan2(ambient[1], ambient[0]);
            if (t[0] < 0.0) t[0] += kTwoPi;
            return t;
        }
        case ManifoldKind::sphere2: {
            vec_t t(2);
            t[0] = std::acos(std::clamp(ambient[2] / model.R, -1.0, 1.0));
            t[1] = std::atan2(ambient[1], ambient[0]);
            if (t[1] < 0.0) t[1] += kTwoPi;
            return t;
        }
        case ManifoldKind::flat_torus: {
            vec_t t(2);
            double a1 = std::atan2(ambient[1], ambient[0]);
            double a2 = std::atan2(ambient[3], ambient[2]);
            if (a1 < 0.0) a1 += kTwoPi;
            if (a2 < 0.0) a2 += kTwoPi;
            t[0] = model.L1 * a1 / kTwoPi;
            t[1] = model.L2 * a2 / kTwoPi;
            return t;
        }
    }
    throw std::logic_error("unreachable");
}

vec_t ambient_of(const ManifoldModel& model, const vec_t& intrinsic) {
    switch (model.kind) {
        case ManifoldKind::circle: {
            vec_t x(2);
            x[0] = model.R * std::cos(intrinsic[0]);
            x[1] = model.R * std::sin(intrinsic[0]);
            return x;
        }
        case ManifoldKind::sphere2: {
            vec_t x(3);
            const double st = std::sin(intrinsic[0]);
            x[0] = model.R * st * std::cos(intrinsic[1]);
            x[1] = model.R * st * std::sin(intrinsic[1]);
            x[2] = model.R * std::cos(intrinsic[0]);
            return x;
        }
        case ManifoldKind::flat_torus: {
            const double r1 = model.L1 / kTwoPi;
            const double r2 = model.L2 / kTwoPi;
            const double a1 = kTwoPi * intrinsic[0] / model.L1;
            const double a2 = kTwoPi * intrinsic[1] / model.L2;
            vec_t x(4);
            x[0] = r1 * std::cos(a1);
            x[1] = r1 * std::sin(a1);
            x[2] = r2 * std::cos(a2);
            x[3] = r2 * std::sin(a2);
            return x;
        }
    }
    throw std::logic_error("unreachable");
}

mat_t intrinsic_rows(const ManifoldModel& model, const mat_t& points) {
    mat_t out(points.rows(), model.k);
    for (int i = 0; i < points.rows(); ++i)
        out.row(i) = intrinsic_of(model, points.row(i).transpose()).transpose();
    return out;
}

double geodesic_intrinsic(const ManifoldModel& model, const mat_t& intr, int i, int j) {
    switch (model.kind) {
        case ManifoldKind::circle: {
            double d = std::fabs(intr(i, 0) - intr(j, 0));
            d = std::min(d, kTwoPi - d);
            return model.R * d;
        }
        case ManifoldKind::sphere2: {
            // rows are (polar, azimuth)
            const double c = std::cos(intr(i, 0)) * std::cos(intr(j, 0)) +
                             std::sin(intr(i, 0)) * std::sin(intr(j, 0)) *
                                 std::cos(intr(i, 1) - intr(j, 1));
            return model.R * std::acos(std::clamp(c, -1.0, 1.0));
        }
        case ManifoldKind::flat_torus: {
            const double d1 = wrap_abs(intr(i, 0) - intr(j, 0), model.L1);
            const double d2 = wrap_abs(intr(i, 1) - intr(j, 1), model.L2);
            return std::hypot(d1, d2);
        }
    }
    throw std::logic_error("unreachable");
}

double geodesic_distance(const ManifoldModel& model, const vec_t& x, const vec_t& y) {
    check_on_manifold(model, x);
    check_on_manifold(model, y);
    switch (model.kind) {
        case ManifoldKind::circle: {
            double d = std::fabs(intrinsic_of(model, x)[0] - intrinsic_of(model, y)[0]);
            d = std::min(d, kTwoPi - d);
            return model.R * d;
        }
        case ManifoldKind::sphere2: {
            const double c = std::clamp(x.dot(y) / (model.R * model.R), -1.0, 1.0);
            return model.R * std::acos(c);
        }
        case ManifoldKind::flat_torus: {
            const vec_t tx = intrinsic_of(model, x);
            const vec_t ty = intrinsic_of(model, y);
            const double d1 = wrap_abs(tx[0] - ty[0], model.L1);
            const double d2 = wrap_abs(tx[1] - ty[1], model.L2);
            return std::hypot(d1, d2);
        }
    }
    throw std::logic_error("unreachable");
}

double ball_measure(const ManifoldModel& model, double r) {
    if (r < 0.0) throw std::domain_error("ball radius must be nonnegative");
    switch (model.kind) {
        case ManifoldKind::circle:
            return std::min(r / (kPi * model.R), 1.0);
        case ManifoldKind::sphere2:
            return (1.0 - std::cos(std::min(r / model.R, kPi))) / 2.0;
        case ManifoldKind::flat_torus: {
            // wrapped disc = disc intersected with the centered fundamental rectangle
            const double a = model.L1 / 2.0;
            const double b = model.L2 / 2.0;
            if (r >= std::hypot(a, b)) return 1.0;
            return disc_rect_area(r, a, b) / (model.L1 * model.L2);
        }
    }
    throw std::logic_error("unreachable");
}

double ball_measure(const ManifoldModel& model, const vec_t& x, double r) {
    check_on_manifold(model, x);
    return ball_measure(model, r);
}

vec_t exp_inverse(const ManifoldModel& model, const vec_t& center, const vec_t& y) {
    const double d = geodesic_distance(model, center, y);
    if (d >= model.injectivity_radius)
        throw std::domain_error("point outside injectivity radius of the center");
    switch (model.kind) {
        case ManifoldKind::circle: {
            double dt = intrinsic_of(model, y)[0] - intrinsic_of(model, center)[0];
            if (dt > kPi) dt -= kTwoPi;
            if (dt < -kPi) dt += kTwoPi;
            vec_t v(1);
            v[0] = model.R * dt;
            return v;
        }
        case ManifoldKind::sphere2: {
            vec_t v = vec_t::Zero(2);
            if (d == 0.0) return v;
            const vec_t c_hat = center / model.R;
            const vec_t y_hat = y / model.R;
            const double ct = std::clamp(c_hat.dot(y_hat), -1.0, 1.0);
            vec_t w = y_hat - ct * c_hat;  // tangent direction at center
            const double wn = w.norm();
            if (wn < 1e-300) return v;
            w /= wn;
            // deterministic tangent basis at center
            int axis = 0;
            for (int a = 1; a < 3; ++a)
                if (std::fabs(c_hat[a]) < std::fabs(c_hat[axis])) axis = a;
            vec_t e1 = vec_t::Zero(3);
            e1[axis] = 1.0;
            e1 -= e1.dot(c_hat) * c_hat;
            e1.normalize();
            vec_t e2(3);
            e2[0] = c_hat[1] * e1[2] - c_hat[2] * e1[1];
            e2[1] = c_hat[2] * e1[0] - c_hat[0] * e1[2];
            e2[2] = c_hat[0] * e1[1] - c_hat[1] * e1[0];
            v[0] = d * w.dot(e1);
            v[1] = d * w.dot(e2);
            return v;
        }
        case ManifoldKind::flat_torus: {
            const vec_t tc = intrinsic_of(model, center);
            const vec_t ty = intrinsic_of(model, y);
            vec_t v(2);
            for (int a = 0; a < 2; ++a) {
                const double L = (a == 0) ? model.L1 : model.L2;
                double dt = std::fmod(ty[a] - tc[a], L);
                if (dt > L / 2.0) dt -= L;
                if (dt < -L / 2.0) dt += L;
                v[a] = dt;
            }
            return v;
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace geocert
