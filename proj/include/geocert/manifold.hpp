#pragma once

#include <string>

#include "geocert/types.hpp"

namespace geocert {

enum class ManifoldKind { circle, sphere2, flat_torus };

/// A catalog member of (M, d_M, mu) with closed-form sampling, geodesics,
/// ball measures, log maps and the regularity constants the certifiers need.
struct ManifoldModel {
    ManifoldKind kind;
    int k;  // intrinsic dimension
    int K;  // ambient dimension
    double R = 1.0;        // circle / sphere radius
    double L1 = 1.0;       // torus side lengths
    double L2 = 1.0;
    double curvature_bound;     // Lambda, 1/length^2
    double injectivity_radius;  // i(M)
    double r_bullet;            // min(i(M)/2, pi/(2 sqrt(Lambda)))
    double ahlfors_cl;
    double ahlfors_cu;
    double doubling_v;
    double s0;        // minimum branch separation
    double r0;        // minimum radius of curvature
    double diameter;

    std::string name() const;
};

ManifoldModel make_circle(double R);
ManifoldModel make_sphere2(double R);
ManifoldModel make_flat_torus(double L1, double L2);

/// n i.i.d. uniform points, one ambient coordinate row per point.
mat_t sample(const ManifoldModel& model, int n, uint64_t seed);

double geodesic_distance(const ManifoldModel& model, const vec_t& x, const vec_t& y);

/// mu(B_M(x, r)); the catalog models are homogeneous so the center drops out.
double ball_measure(const ManifoldModel& model, double r);
double ball_measure(const ManifoldModel& model, const vec_t& x, double r);

/// Log map: tangent vector in R^k with norm equal to the geodesic distance.
vec_t exp_inverse(const ManifoldModel& model, const vec_t& center, const vec_t& y);

/// Intrinsic parameterization (angle, (z-angle, azimuth), (t1,t2)) and its inverse.
vec_t intrinsic_of(const ManifoldModel& model, const vec_t& ambient);
vec_t ambient_of(const ManifoldModel& model, const vec_t& intrinsic);

/// Row-wise intrinsic coordinates, plus a geodesic distance that skips the
/// ambient checks; used by the O(n^2) scans.
mat_t intrinsic_rows(const ManifoldModel& model, const mat_t& points);
double geodesic_intrinsic(const ManifoldModel& model, const mat_t& intr, int i, int j);

/// Throws std::domain_error if x is off the embedded manifold beyond tolerance.
void check_on_manifold(const ManifoldModel& model, const vec_t& x);

}  // namespace geocert
