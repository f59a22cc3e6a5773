#pragma once

#include <mobius/quaternion.hpp>

namespace mobius {

/// A vector in H^2, acted on by QMat2 from the left and by quaternion
/// scalars from the right.
struct HVector {
    Quaternion p0, p1;

    HVector operator+(const HVector& o) const { return {p0 + o.p0, p1 + o.p1}; }
    HVector operator-(const HVector& o) const { return {p0 - o.p0, p1 - o.p1}; }
    HVector operator*(const Quaternion& s) const { return {p0 * s, p1 * s}; }
    HVector operator*(double s) const { return {p0 * s, p1 * s}; }
    double norm2() const { return p0.norm2() + p1.norm2(); }
    double norm() const { return std::sqrt(norm2()); }
};

/// The indefinite Hermitian form <psi, phi> = conj(psi0) phi1 + conj(psi1) phi0
/// whose isotropic lines model S^3.
inline Quaternion herm(const HVector& psi, const HVector& phi) {
    return psi.p0.conj() * phi.p1 + psi.p1.conj() * phi.p0;
}

/// 2x2 quaternionic matrix [[a, b], [c, d]].
struct QMat2 {
    Quaternion a, b, c, d;

    QMat2() = default;
    QMat2(Quaternion a_, Quaternion b_, Quaternion c_, Quaternion d_)
        : a(a_), b(b_), c(c_), d(d_) {}

    static QMat2 identity() { return {Quaternion::real(1), {}, {}, Quaternion::real(1)}; }
    static QMat2 zero() { return {}; }

    QMat2 operator+(const QMat2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
    QMat2 operator-(const QMat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
    QMat2 operator-() const { return {-a, -b, -c, -d}; }
    QMat2 operator*(double s) const { return {a * s, b * s, c * s, d * s}; }
    QMat2 operator/(double s) const { return {a / s, b / s, c / s, d / s}; }

    QMat2 operator*(const QMat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
    }

    HVector operator*(const HVector& v) const {
        return {a * v.p0 + b * v.p1, c * v.p0 + d * v.p1};
    }

    /// Frobenius norm over the 8 real components; used for tolerances only.
    double fnorm() const { return std::sqrt(a.norm2() + b.norm2() + c.norm2() + d.norm2()); }
};

inline QMat2 operator*(double s, const QMat2& m) { return m * s; }

/// Adjoint with respect to the indefinite Hermitian form:
/// [[a,b],[c,d]]* = [[conj(d), conj(b)], [conj(c), conj(a)]].
inline QMat2 adjoint_star(const QMat2& m) {
    return {m.d.conj(), m.b.conj(), m.c.conj(), m.a.conj()};
}

inline double real_trace(const QMat2& m) { return m.a.real() + m.d.real(); }

/// <A, B> = -1/2 tr_R(AB). Of signature (4,1) on Hermitian traceless matrices.
inline double inner(const QMat2& x, const QMat2& y) {
    // Only the real part of the diagonal of x*y is needed.
    double t = (x.a * y.a + x.b * y.c).real() + (x.c * y.b + x.d * y.d).real();
    return -0.5 * t;
}

/// Half the commutator, A x B = 1/2 (AB - BA).
inline QMat2 cross(const QMat2& x, const QMat2& y) {
    return (x * y - y * x) * 0.5;
}

/// Matrix exponential. Closed form when A^2 = sigma I (the trig, nilpotent and
/// hyperbolic branches used by sphere pencils); scaled-and-squared series otherwise.
QMat2 exp(const QMat2& m);

/// Inverse via the faithful 8x8 real representation. Throws std::domain_error
/// when singular. Fast path +-adjoint when A*A = +-I.
QMat2 inverse(const QMat2& m);

/// Translation generator T_x = [[1, x], [0, 1]].
inline QMat2 translation_matrix(const ImQuaternion& x) {
    return {Quaternion::real(1), Quaternion(x), {}, Quaternion::real(1)};
}

/// Conjugate m by the translation T_p: T_p m T_p^{-1}.
inline QMat2 conjugate_by_translation(const ImQuaternion& p, const QMat2& m) {
    return translation_matrix(p) * m * translation_matrix(-p);
}

}  // namespace mobius
