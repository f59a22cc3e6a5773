#include <mobius/smooth.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mobius {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2 * std::numbers::pi;
}  // namespace

ParamSurface plane_surface() {
    ParamSurface s;
    s.f = [](double u, double v) { return ImQuaternion{u, v, 0}; };
    s.fu = [](double, double) { return ImQuaternion{1, 0, 0}; };
    s.fv = [](double, double) { return ImQuaternion{0, 1, 0}; };
    s.fuu = s.fuv = s.fvv = [](double, double) { return ImQuaternion{}; };
    s.u0 = -1; s.u1 = 1; s.v0 = -1; s.v1 = 1;
    s.closed = false;
    return s;
}

ParamSurface sphere_surface(double radius) {
    if (radius <= 0) throw std::domain_error("sphere radius must be positive");
    ParamSurface s;
    double r = radius;
    s.f = [r](double u, double v) {
        return ImQuaternion{r * std::cos(u) * std::cos(v), r * std::sin(u) * std::cos(v),
                            r * std::sin(v)};
    };
    s.fu = [r](double u, double v) {
        return ImQuaternion{-r * std::sin(u) * std::cos(v), r * std::cos(u) * std::cos(v), 0};
    };
    s.fv = [r](double u, double v) {
        return ImQuaternion{-r * std::cos(u) * std::sin(v), -r * std::sin(u) * std::sin(v),
                            r * std::cos(v)};
    };
    s.fuu = [r](double u, double v) {
        return ImQuaternion{-r * std::cos(u) * std::cos(v), -r * std::sin(u) * std::cos(v), 0};
    };
    s.fuv = [r](double u, double v) {
        return ImQuaternion{r * std::sin(u) * std::sin(v), -r * std::cos(u) * std::sin(v), 0};
    };
    s.fvv = [r](double u, double v) {
        return ImQuaternion{-r * std::cos(u) * std::cos(v), -r * std::sin(u) * std::cos(v),
                            -r * std::sin(v)};
    };
    s.u0 = 0; s.u1 = kTwoPi; s.v0 = -kPi / 2; s.v1 = kPi / 2;
    s.closed = true;
    return s;
}

ParamSurface torus_surface(double major, double minor) {
    if (minor <= 0 || major <= minor) {
        throw std::domain_error("torus requires major > minor > 0");
    }
    ParamSurface s;
    double R = major, r = minor;
    s.f = [R, r](double u, double v) {
        double w = R + r * std::cos(v);
        return ImQuaternion{w * std::cos(u), w * std::sin(u), r * std::sin(v)};
    };
    s.fu = [R, r](double u, double v) {
        double w = R + r * std::cos(v);
        return ImQuaternion{-w * std::sin(u), w * std::cos(u), 0};
    };
    s.fv = [r](double u, double v) {
        return ImQuaternion{-r * std::sin(v) * std::cos(u), -r * std::sin(v) * std::sin(u),
                            r * std::cos(v)};
    };
    s.fuu = [R, r](double u, double v) {
        double w = R + r * std::cos(v);
        return ImQuaternion{-w * std::cos(u), -w * std::sin(u), 0};
    };
    s.fuv = [r](double u, double v) {
        return ImQuaternion{r * std::sin(v) * std::sin(u), -r * std::sin(v) * std::cos(u), 0};
    };
    s.fvv = [r](double u, double v) {
        return ImQuaternion{-r * std::cos(v) * std::cos(u), -r * std::cos(v) * std::sin(u),
                            -r * std::sin(v)};
    };
    s.u0 = 0; s.u1 = kTwoPi; s.v0 = 0; s.v1 = kTwoPi;
    s.closed = true;
    return s;
}

ShapeData shape_data(const ParamSurface& surf, double u, double v) {
    ShapeData d;
    d.f = surf.f(u, v);
    d.fu = surf.fu(u, v);
    d.fv = surf.fv(u, v);
    double E = dot(d.fu, d.fu), F = dot(d.fu, d.fv), G = dot(d.fv, d.fv);
    double det = E * G - F * F;
    if (det <= 1e-18 * (E + G) * (E + G)) throw std::domain_error("degenerate metric");
    d.sigma = std::sqrt(det);
    d.n = cross(d.fu, d.fv) / d.sigma;

    // Second fundamental form in the dn = W df convention.
    double L = -dot(surf.fuu(u, v), d.n);
    double M = -dot(surf.fuv(u, v), d.n);
    double N = -dot(surf.fvv(u, v), d.n);
    double w11 = (G * L - F * M) / det;
    double w12 = (G * M - F * N) / det;
    double w21 = (E * M - F * L) / det;
    double w22 = (E * N - F * M) / det;
    d.nu = d.fu * w11 + d.fv * w21;
    d.nv = d.fu * w12 + d.fv * w22;
    d.mean = 0.5 * (w11 + w22);
    d.gauss = w11 * w22 - w12 * w21;
    d.qu = d.nu - d.fu * d.mean;
    d.qv = d.nv - d.fv * d.mean;
    return d;
}

ScalarField zero_field() {
    auto zero = [](double, double) { return 0.0; };
    return {zero, zero, zero};
}

ScalarField mean_curvature_field(const ParamSurface& surf) {
    auto h = [surf](double u, double v) { return shape_data(surf, u, v).mean; };
    constexpr double step = 1e-4;
    auto d4 = [](auto g, double t) {
        return (g(t - 2 * step) - 8 * g(t - step) + 8 * g(t + step) - g(t + 2 * step)) /
               (12 * step);
    };
    return {h,
            [h, d4](double u, double v) {
                return d4([&](double t) { return h(t, v); }, u);
            },
            [h, d4](double u, double v) {
                return d4([&](double t) { return h(u, t); }, v);
            }};
}

Sphere2 congruence_sphere(const ParamSurface& surf, const ScalarField& h, double u, double v) {
    ShapeData d = shape_data(surf, u, v);
    return sphere_from_point_normal_h(d.f, d.n, h.value(u, v));
}

QMat2 loop_holonomy(const ParamSurface& surf, const ScalarField& h, double u, double v,
                    double eps) {
    double e = eps / 2;
    double cu[4] = {u - e, u + e, u + e, u - e};
    double cv[4] = {v - e, v - e, v + e, v + e};
    QMat2 corner[4];
    for (int k = 0; k < 4; ++k) {
        corner[k] = congruence_sphere(surf, h, cu[k], cv[k]).matrix();
    }
    QMat2 m = QMat2::identity();
    for (int k = 0; k < 4; ++k) {
        int k1 = (k + 1) % 4;
        QMat2 mid = congruence_sphere(surf, h, 0.5 * (cu[k] + cu[k1]),
                                      0.5 * (cv[k] + cv[k1])).matrix();
        m = exp(mid * (corner[k1] - corner[k]) * 0.5) * m;
    }
    double sigma = shape_data(surf, u, v).sigma;
    return (m - QMat2::identity()) / (eps * eps * sigma);
}

QMat2 curvature_formula(const ParamSurface& surf, const ScalarField& h, double u, double v) {
    ShapeData d = shape_data(surf, u, v);
    double hv = h.value(u, v);
    double c = (d.mean * d.mean - d.gauss) - (d.mean - hv) * (d.mean - hv);
    ImQuaternion wu = d.fu * (d.mean - hv) + d.qu;
    ImQuaternion wv = d.fv * (d.mean - hv) + d.qv;
    ImQuaternion w = (wv * h.du(u, v) - wu * h.dv(u, v)) / d.sigma;
    QMat2 block{Quaternion(d.n * c), {}, Quaternion(w), Quaternion(d.n * c)};
    return conjugate_by_translation(d.f, block) * -0.5;
}

void gauss_legendre(int order, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights) {
    nodes.assign(order, 0.0);
    weights.assign(order, 0.0);
    for (int i = 0; i < (order + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (order + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            // Legendre recurrence for P_n(x) and P'_n(x).
            double p0 = 1, p1 = x;
            for (int n = 2; n <= order; ++n) {
                double p2 = ((2 * n - 1) * x * p1 - (n - 1) * p0) / n;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double wgt = 2.0 / ((1 - x * x) * dp * dp);
        nodes[i] = 0.5 * (a + b) - 0.5 * (b - a) * x;
        nodes[order - 1 - i] = 0.5 * (a + b) + 0.5 * (b - a) * x;
        weights[i] = weights[order - 1 - i] = 0.5 * (b - a) * wgt;
    }
}

double willmore_energy_quadrature(const ParamSurface& surf, int order) {
    if (!surf.closed) throw std::domain_error("quadrature requires a closed preset surface");
    std::vector<double> un, uw, vn, vw;
    gauss_legendre(order, surf.u0, surf.u1, un, uw);
    gauss_legendre(order, surf.v0, surf.v1, vn, vw);
    double total = 0;
    for (int i = 0; i < order; ++i) {
        for (int j = 0; j < order; ++j) {
            ShapeData d = shape_data(surf, un[i], vn[j]);
            total += uw[i] * vw[j] * (d.mean * d.mean - d.gauss) * d.sigma;
        }
    }
    return total;
}

std::vector<PointS3> integrate_orthogonal_trajectory(
    const std::function<QMat2(double)>& sigma, const HVector& psi0, double t0, double t1,
    int steps) {
    if (steps < 1) throw std::domain_error("need at least one step");
    double dt = (t1 - t0) / steps;
    double fd = dt;
    auto velocity_matrix = [&](double t) {
        QMat2 ds = (sigma(t - 2 * fd) - sigma(t - fd) * 8 + sigma(t + fd) * 8 -
                    sigma(t + 2 * fd)) / (12 * fd);
        return sigma(t) * ds * 0.5;
    };
    auto to_point = [](const HVector& psi) {
        if (psi.p1.norm() <= 1e-12 * psi.p0.norm()) return PointS3::infinity();
        return PointS3((psi.p0 * psi.p1.inverse()).im());
    };

    std::vector<PointS3> path;
    path.reserve(steps + 1);
    HVector psi = psi0;
    path.push_back(to_point(psi));
    for (int s = 0; s < steps; ++s) {
        double t = t0 + s * dt;
        QMat2 b1 = velocity_matrix(t);
        QMat2 b2 = velocity_matrix(t + 0.5 * dt);
        QMat2 b4 = velocity_matrix(t + dt);
        HVector k1 = b1 * psi;
        HVector k2 = b2 * (psi + k1 * (0.5 * dt));
        HVector k3 = b2 * (psi + k2 * (0.5 * dt));
        HVector k4 = b4 * (psi + k3 * dt);
        psi = psi + (k1 + k2 * 2 + k3 * 2 + k4) * (dt / 6);
        psi = psi * (1.0 / psi.norm());  // projective rescale for conditioning
        path.push_back(to_point(psi));
    }
    return path;
}

}  // namespace mobius
