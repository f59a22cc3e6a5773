#include <mobius/moebius.hpp>

#include <cmath>
#include <stdexcept>

namespace mobius {

namespace {
constexpr double kMembershipTol = 1e-9;
constexpr double kInfinityThreshold = 1e-12;
}  // namespace

PointS3 PointS3::from_homogeneous(const HVector& psi) {
    double n2 = psi.norm2();
    if (n2 == 0) throw std::invalid_argument("zero homogeneous vector");
    Quaternion q = herm(psi, psi);
    if (q.norm() > 1e-10 * n2) throw std::invalid_argument("homogeneous vector is not isotropic");
    PointS3 p;
    p.psi_ = psi;
    return p;
}

bool PointS3::is_infinity() const {
    return psi_.p1.norm() <= kInfinityThreshold * psi_.p0.norm();
}

ImQuaternion PointS3::affine() const {
    if (is_infinity()) throw std::domain_error("infinity point has no affine chart");
    Quaternion p = psi_.p0 * psi_.p1.inverse();
    return p.im();
}

MoebiusMap::MoebiusMap(const QMat2& m) {
    QMat2 aa = adjoint_star(m) * m;
    double t = 0.5 * real_trace(aa);
    if (t == 0) throw std::invalid_argument("matrix is not in Moeb(3)");
    orientation_ = t > 0 ? 1 : -1;
    m_ = m / std::sqrt(std::abs(t));
    QMat2 check = adjoint_star(m_) * m_ - QMat2::identity() * double(orientation_);
    if (check.fnorm() > kMembershipTol * (1 + m_.fnorm() * m_.fnorm())) {
        throw std::invalid_argument("matrix is not in Moeb(3): A*A != +-I");
    }
}

MoebiusMap MoebiusMap::inverse() const {
    // A*A = +-I so the inverse is +-A*.
    MoebiusMap out;
    out.m_ = adjoint_star(m_) * double(orientation_);
    out.orientation_ = orientation_;
    return out;
}

PointS3 MoebiusMap::operator()(const PointS3& p) const {
    HVector image = m_ * p.homogeneous();
    return PointS3::from_homogeneous(image);
}

QMat2 MoebiusMap::conjugate(const QMat2& b) const {
    return m_ * b * adjoint_star(m_) * double(orientation_);
}

MoebiusMap translation(const ImQuaternion& x) {
    return MoebiusMap(translation_matrix(x));
}

MoebiusMap stretch_rotation(const Quaternion& mu) {
    if (mu.norm2() == 0) throw std::domain_error("stretch rotation by zero quaternion");
    return MoebiusMap(QMat2{mu, {}, {}, mu.conj().inverse()});
}

MoebiusMap inv_translation(const ImQuaternion& y) {
    return MoebiusMap(QMat2{Quaternion::real(1), {}, Quaternion(y), Quaternion::real(1)});
}

SpDecomposition decompose(const MoebiusMap& a) {
    if (a.orientation() != 1) {
        throw std::invalid_argument("decompose requires an orientation preserving map");
    }
    const QMat2& m = a.matrix();
    double scale = m.fnorm();

    auto decompose_upper = [&](const QMat2& u) -> SpDecomposition {
        // c = 0: A = [[a, b], [0, d]] with d = conj(a)^{-1}, x = conj(d) b.
        if (u.a.norm() <= 1e-14 * scale) {
            throw std::invalid_argument("malformed Sp(1,1) matrix: a = c = 0");
        }
        SpDecomposition out;
        out.y = {};
        out.mu = u.a;
        Quaternion x = u.d.conj() * u.b;
        out.x = x.im();
        return out;
    };

    if (m.c.norm() <= 1e-12 * scale) {
        return decompose_upper(m);
    }
    // A does not fix infinity: p_inf = a c^{-1}, y = p_inf^{-1}, reduce.
    Quaternion p_inf = m.a * m.c.inverse();
    Quaternion y = p_inf.inverse();
    QMat2 reducer{Quaternion::real(1), {}, -y, Quaternion::real(1)};
    QMat2 reduced = reducer * m;
    SpDecomposition out = decompose_upper(reduced);
    out.y = y.im();
    return out;
}

MoebiusVectorFieldElem::MoebiusVectorFieldElem(const QMat2& y) : y_(y) {
    QMat2 check = adjoint_star(y) + y;
    if (check.fnorm() > 1e-9 * (1 + y.fnorm())) {
        throw std::invalid_argument("matrix is not in sp(1,1): Y* + Y != 0");
    }
}

ImQuaternion vector_field_at(const MoebiusVectorFieldElem& y, const PointS3& p) {
    if (p.is_infinity()) throw std::domain_error("vector field chart undefined at infinity");
    ImQuaternion pt = p.affine();
    HVector psi{Quaternion(pt), Quaternion::real(1)};
    HVector dpsi = y.matrix() * psi;
    // d(psi0 psi1^{-1}) at psi1 = 1: dpsi0 - p dpsi1.
    Quaternion dp = dpsi.p0 - Quaternion(pt) * dpsi.p1;
    return dp.im();
}

}  // namespace mobius
