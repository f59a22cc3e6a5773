#pragma once

#include <mobius/spheres.hpp>

#include <functional>
#include <vector>

namespace mobius {

/// Parameterized surface patch with analytic first and second derivatives.
struct ParamSurface {
    std::function<ImQuaternion(double, double)> f, fu, fv, fuu, fuv, fvv;
    double u0 = 0, u1 = 1, v0 = 0, v1 = 1;
    bool closed = false;  // the domain covers a closed surface exactly once
};

ParamSurface plane_surface();
ParamSurface sphere_surface(double radius);
ParamSurface torus_surface(double major, double minor);

/// First and second order data at a parameter point. The shape operator
/// convention is dn = W df, so a round sphere with outward normal has
/// H = +1/radius and center = f - n/H.
struct ShapeData {
    ImQuaternion f, fu, fv;
    ImQuaternion n;        // unit, along fu x fv
    ImQuaternion nu, nv;   // via the Weingarten map
    double mean = 0;       // H
    double gauss = 0;      // K
    ImQuaternion qu, qv;   // trace-free part of dn: q = dn - H df
    double sigma = 0;      // area density sqrt(EG - F^2)
};

/// Throws std::domain_error when the metric degenerates.
ShapeData shape_data(const ParamSurface& surf, double u, double v);

/// Real function on the parameter domain with partial derivatives.
struct ScalarField {
    std::function<double(double, double)> value, du, dv;
};

ScalarField zero_field();
/// h = H with derivatives by high-order finite differences.
ScalarField mean_curvature_field(const ParamSurface& surf);

/// Tangent sphere congruence Sigma(u, v) through f with normal n and the
/// prescribed curvature function h.
Sphere2 congruence_sphere(const ParamSurface& surf, const ScalarField& h, double u, double v);

/// Parallel transport around the ccw parameter square of side eps centered at
/// (u, v), each edge contributing exp(1/2 Sigma_mid (Sigma_end - Sigma_start)).
/// Returns (M - I) / (eps^2 sigma) for comparison with curvature_formula.
QMat2 loop_holonomy(const ParamSurface& surf, const ScalarField& h, double u, double v,
                    double eps);

/// The limit of loop_holonomy as eps -> 0:
/// -1/2 T_f [[c n, 0], [w, c n]] T_f^{-1} with c = (H^2 - K) - (H - h)^2 and
/// w = (dh ^ ((H - h) df + q))(du, dv) / sigma.
QMat2 curvature_formula(const ParamSurface& surf, const ScalarField& h, double u, double v);

/// Gauss-Legendre quadrature of (H^2 - K) sigma over the domain.
/// Only meaningful for closed presets; throws otherwise.
double willmore_energy_quadrature(const ParamSurface& surf, int order = 256);

/// RK4 integration of psi' = 1/2 Sigma Sigma' psi along a sphere path, with
/// Sigma' by fourth-order central differences of the callable. Returns the
/// steps + 1 projective points of the trajectory.
std::vector<PointS3> integrate_orthogonal_trajectory(
    const std::function<QMat2(double)>& sigma, const HVector& psi0, double t0, double t1,
    int steps);

/// Gauss-Legendre nodes and weights on [a, b].
void gauss_legendre(int order, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights);

}  // namespace mobius
