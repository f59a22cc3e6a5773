#include <mobius/spheres.hpp>

#include <cmath>
#include <stdexcept>

namespace mobius {

namespace {

double scale_of(const QMat2& m) { return std::max(1.0, m.fnorm()); }

Quaternion incidence_form(const QMat2& m, const HVector& psi) {
    return herm(m * psi, psi);
}

}  // namespace

// --- Membership -------------------------------------------------------------

bool Sphere2::is_member(const QMat2& m, double tol) {
    double s = scale_of(m);
    return std::abs(real_trace(m)) <= tol * s &&
           (adjoint_star(m) - m).fnorm() <= tol * s &&
           (m * m + QMat2::identity()).fnorm() <= tol * s * s;
}

Sphere2::Sphere2(const QMat2& m) : m_(m) {
    if (!is_member(m)) throw std::invalid_argument("matrix is not an oriented 2-sphere");
}

bool Circle::is_member(const QMat2& m, double tol) {
    double s = scale_of(m);
    return (adjoint_star(m) + m).fnorm() <= tol * s &&
           (m * m + QMat2::identity()).fnorm() <= tol * s * s;
}

Circle::Circle(const QMat2& m) : m_(m) {
    if (!is_member(m)) throw std::invalid_argument("matrix is not an oriented circle");
}

bool PointPair::is_member(const QMat2& m, double tol) {
    double s = scale_of(m);
    return (adjoint_star(m) + m).fnorm() <= tol * s &&
           (m * m - QMat2::identity()).fnorm() <= tol * s * s;
}

PointPair::PointPair(const QMat2& m) : m_(m) {
    if (!is_member(m)) throw std::invalid_argument("matrix is not an oriented point pair");
}

bool LightVector::is_member(const QMat2& m, double tol) {
    double s = scale_of(m);
    return (adjoint_star(m) - m).fnorm() <= tol * s &&
           std::abs(real_trace(m)) <= tol * s &&
           std::abs(inner(m, m)) <= tol * s * s;
}

LightVector::LightVector(const QMat2& m) : m_(m) {
    if (!is_member(m)) throw std::invalid_argument("matrix is not in the light cone");
}

InfTranslation::InfTranslation(const QMat2& m, const PointS3& basepoint)
    : m_(m), basepoint_(basepoint) {
    if ((adjoint_star(m) + m).fnorm() > 1e-9 * scale_of(m)) {
        throw std::invalid_argument("infinitesimal translation must lie in sp(1,1)");
    }
    // Kernel contains the basepoint line and the image lies in it.
    HVector psi = basepoint.homogeneous();
    HVector image = m * psi;
    double s = scale_of(m) * psi.norm();
    if (image.norm() > 1e-8 * s) {
        throw std::invalid_argument("basepoint line not in the kernel");
    }
    // The image of any vector must be a right multiple of psi: test on a basis.
    HVector e0{Quaternion::real(1), {}};
    HVector e1{{}, Quaternion::real(1)};
    for (const HVector& v : {m * e0, m * e1}) {
        // v parallel to psi iff v psi~ - psi (psi~ v)/|psi|^2 ... use the
        // Hermitian-orthogonal test: component of v orthogonal to psi line.
        Quaternion coeff = (psi.p0.conj() * v.p0 + psi.p1.conj() * v.p1) / psi.norm2();
        HVector residual = v - psi * coeff;
        if (residual.norm() > 1e-8 * scale_of(m)) {
            throw std::invalid_argument("image not contained in the basepoint line");
        }
    }
}

// --- Constructors -----------------------------------------------------------

Sphere2 sphere_from_point_normal_h(const ImQuaternion& p, const ImQuaternion& n, double h) {
    if (std::abs(n.norm() - 1.0) > 1e-9) throw std::domain_error("normal must be unit length");
    QMat2 local{Quaternion(n), {}, Quaternion::real(-h), Quaternion(-n)};
    return Sphere2(conjugate_by_translation(p, local));
}

Circle circle_from_point_tangent_binormal(const ImQuaternion& p, const ImQuaternion& t,
                                          const ImQuaternion& kb) {
    if (std::abs(t.norm() - 1.0) > 1e-9) throw std::domain_error("tangent must be unit length");
    if (std::abs(dot(t, kb)) > 1e-9 * std::max(1.0, kb.norm())) {
        throw std::domain_error("curvature binormal must be orthogonal to the tangent");
    }
    // Conjugate of the line rotation diag(t, t) by the parabolic map taking
    // the tangent line to the circle: the lower left entry is +kb.
    QMat2 local{Quaternion(t), {}, Quaternion(kb), Quaternion(t)};
    return Circle(conjugate_by_translation(p, local));
}

Circle circle_through_points(const ImQuaternion& p1, const ImQuaternion& p2,
                             const ImQuaternion& p3) {
    ImQuaternion u = p2 - p1;
    ImQuaternion v = p3 - p1;
    double su = u.norm(), sv = v.norm(), sw = (p3 - p2).norm();
    double scale = std::max({su, sv, sw});
    if (su < 1e-14 * scale || sv < 1e-14 * scale || sw < 1e-14 * scale || scale == 0) {
        throw std::domain_error("coincident points have no circumcircle");
    }
    ImQuaternion nrm = cross(u, v);
    if (nrm.norm() <= 1e-12 * su * sv) {
        // Collinear but distinct: the oriented line through the points.
        return circle_from_point_tangent_binormal(p1, normalized(u), {});
    }
    double n2 = nrm.norm2();
    ImQuaternion center =
        p1 + (u.norm2() * cross(v, nrm) + v.norm2() * cross(nrm, u)) / (2.0 * n2);
    ImQuaternion radial = p1 - center;
    double r = radial.norm();
    ImQuaternion axis = nrm / nrm.norm();
    ImQuaternion t = normalized(cross(axis, radial));
    ImQuaternion n_in = -radial / r;  // unit, towards the center
    ImQuaternion kb = cross(t, n_in) / r;
    return circle_from_point_tangent_binormal(p1, t, kb);
}

PointPair point_pair(const PointS3& p1, const PointS3& p2) {
    QMat2 source_sink{Quaternion::real(-1), {}, {}, Quaternion::real(1)};
    if (p1.is_infinity() && p2.is_infinity()) {
        throw std::domain_error("point pair requires distinct points");
    }
    if (p2.is_infinity()) {
        // U = T_p diag(1,-1) T_p^{-1}: eigenvalue -1 on the lift of p1.
        QMat2 local{Quaternion::real(1), {}, {}, Quaternion::real(-1)};
        return PointPair(conjugate_by_translation(p1.affine(), local));
    }
    if (p1.is_infinity()) {
        return PointPair(conjugate_by_translation(p2.affine(), source_sink));
    }
    ImQuaternion a = p1.affine(), b = p2.affine();
    ImQuaternion diff = b - a;
    if (diff.norm() < 1e-14 * std::max(1.0, std::max(a.norm(), b.norm()))) {
        throw std::domain_error("point pair requires distinct points");
    }
    Quaternion inv = Quaternion(diff).inverse();
    QMat2 local{Quaternion::real(1), {}, inv * 2.0, Quaternion::real(-1)};
    return PointPair(conjugate_by_translation(a, local));
}

LightVector euclidean_lift(const ImQuaternion& p) {
    return LightVector(QMat2{Quaternion(p), Quaternion::real(p.norm2()),
                             Quaternion::real(1), Quaternion(-p)});
}

LightVector lift_infinity() {
    return LightVector(QMat2{{}, Quaternion::real(1), {}, {}});
}

InfTranslation inf_translation(const ImQuaternion& p, const ImQuaternion& w) {
    QMat2 local{{}, {}, Quaternion(w), {}};
    return InfTranslation(conjugate_by_translation(p, local), PointS3(p));
}

// --- Incidence and extraction ----------------------------------------------

bool incident(const Sphere2& s, const PointS3& p, double tol) {
    const HVector& psi = p.homogeneous();
    return incidence_form(s.matrix(), psi).norm() <= tol * psi.norm2();
}

bool incident(const Circle& c, const PointS3& p, double tol) {
    const HVector& psi = p.homogeneous();
    return incidence_form(c.matrix(), psi).norm() <= tol * psi.norm2();
}

ImQuaternion sphere_normal_at(const Sphere2& s, const PointS3& p) {
    if (p.is_infinity()) throw std::domain_error("normal extraction needs an affine point");
    if (!incident(s, p)) throw std::domain_error("point does not lie on the sphere");
    QMat2 local = conjugate_by_translation(-p.affine(), s.matrix());
    return normalized(local.a.im());
}

double sphere_mean_curvature_at(const Sphere2& s, const PointS3& p) {
    if (p.is_infinity()) throw std::domain_error("mean curvature extraction needs an affine point");
    if (!incident(s, p)) throw std::domain_error("point does not lie on the sphere");
    QMat2 local = conjugate_by_translation(-p.affine(), s.matrix());
    return -local.c.real();
}

ImQuaternion circle_tangent_at(const Circle& c, const PointS3& p) {
    if (p.is_infinity()) throw std::domain_error("tangent extraction needs an affine point");
    if (!incident(c, p)) throw std::domain_error("point does not lie on the circle");
    QMat2 local = conjugate_by_translation(-p.affine(), c.matrix());
    return normalized(local.a.im());
}

SphereGeometry sphere_geometry(const Sphere2& s) {
    // S = [[a, beta], [gamma, -a]] with a in Im H, beta, gamma in R.
    const QMat2& m = s.matrix();
    ImQuaternion a = m.a.im();
    double beta = m.b.real();
    double gamma = m.c.real();
    if (std::abs(gamma) < 1e-10 * scale_of(m)) {
        return PlaneGeometry{normalized(a), beta / 2.0};
    }
    ImQuaternion center = a / gamma;
    return RoundSphereGeometry{center, 1.0 / std::abs(gamma), -gamma};
}

// --- Pencils and products ---------------------------------------------------

PencilClass classify_pencil(const Sphere2& s1, const Sphere2& s2) {
    double same = (s1.matrix() - s2.matrix()).fnorm();
    double opp = (s1.matrix() + s2.matrix()).fnorm();
    if (std::min(same, opp) < 1e-10 * scale_of(s1.matrix())) {
        throw std::domain_error("degenerate pencil: S1 = +-S2");
    }
    double d = inner(s1.matrix(), s2.matrix());
    if (d <= -1.0) {
        throw std::domain_error("inconsistent sphere orientations: <S1,S2> <= -1");
    }
    QMat2 c = cross(s1.matrix(), s2.matrix());
    if (std::abs(d - 1.0) < 1e-8) {
        return PencilClass{PencilKind::Parabolic, 0.0, c};
    }
    if (d < 1.0) {
        double alpha = std::acos(d);
        return PencilClass{PencilKind::Elliptic, alpha, c / std::sin(alpha)};
    }
    double sigma = std::acosh(d);
    return PencilClass{PencilKind::Hyperbolic, sigma, c / std::sinh(sigma)};
}

MoebiusMap rolling_map(const Sphere2& s1, const Sphere2& s2) {
    double d = inner(s1.matrix(), s2.matrix());
    if (d <= -1.0) {
        throw std::domain_error("inconsistent sphere orientations: <S1,S2> <= -1");
    }
    QMat2 q = QMat2::identity() - s2.matrix() * s1.matrix();
    return MoebiusMap(q);
}

CircleProduct circle_circle_product(const Circle& c1, const Circle& c2) {
    return CircleProduct{inner(c1.matrix(), c2.matrix()), cross(c1.matrix(), c2.matrix())};
}

Circle sphere_pointpair_product(const Sphere2& s, const PointPair& u) {
    QMat2 commutator = s.matrix() * u.matrix() - u.matrix() * s.matrix();
    if (commutator.fnorm() > 1e-8 * scale_of(s.matrix()) * scale_of(u.matrix())) {
        throw std::domain_error("point pair does not lie on the sphere");
    }
    return Circle(s.matrix() * u.matrix());
}

}  // namespace mobius
