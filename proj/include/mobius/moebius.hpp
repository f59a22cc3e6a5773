#pragma once

#include <mobius/qmat2.hpp>

#include <optional>

namespace mobius {

/// A point of S^3 = R^3 u {infinity}, stored as a homogeneous vector in H^2
/// lying on an isotropic line of the Hermitian form.
class PointS3 {
  public:
    PointS3() : psi_{Quaternion{}, Quaternion::real(1)} {}
    explicit PointS3(const ImQuaternion& p) : psi_{Quaternion(p), Quaternion::real(1)} {}
    static PointS3 infinity() {
        PointS3 q;
        q.psi_ = {Quaternion::real(1), Quaternion{}};
        return q;
    }
    /// From a raw homogeneous vector; throws if the line is not isotropic.
    static PointS3 from_homogeneous(const HVector& psi);

    bool is_infinity() const;
    /// Affine chart coordinates; throws for the infinity point.
    ImQuaternion affine() const;
    const HVector& homogeneous() const { return psi_; }

  private:
    HVector psi_;
};

/// An element of Moeb(3): a quaternionic 2x2 matrix with A*A = +-I, stored
/// scale-normalized. orientation is +1 for Sp(1,1), -1 for orientation
/// reversing maps. The sign of the matrix itself (double cover) is kept.
class MoebiusMap {
  public:
    MoebiusMap() : m_(QMat2::identity()), orientation_(1) {}
    /// Normalizes the projective scale; throws if A*A is not a real multiple
    /// of +-I within tolerance.
    explicit MoebiusMap(const QMat2& m);

    const QMat2& matrix() const { return m_; }
    int orientation() const { return orientation_; }

    MoebiusMap operator*(const MoebiusMap& o) const { return MoebiusMap(m_ * o.m_); }
    MoebiusMap inverse() const;

    PointS3 operator()(const PointS3& p) const;
    /// Conjugation B -> A B A^{-1}, the change-of-coordinates action.
    QMat2 conjugate(const QMat2& b) const;

  private:
    QMat2 m_;
    int orientation_;
};

/// Generators.
MoebiusMap translation(const ImQuaternion& x);
MoebiusMap stretch_rotation(const Quaternion& mu);
MoebiusMap inv_translation(const ImQuaternion& y);

struct SpDecomposition {
    ImQuaternion y;
    Quaternion mu;
    ImQuaternion x;
};

/// A = T^_y R_mu T_x for A in Sp(1,1). Throws for orientation-reversing input.
SpDecomposition decompose(const MoebiusMap& a);

/// An element of sp(1,1), i.e. Y* + Y = 0: an infinitesimal Moebius
/// transformation of S^3.
class MoebiusVectorFieldElem {
  public:
    explicit MoebiusVectorFieldElem(const QMat2& y);
    const QMat2& matrix() const { return y_; }

  private:
    QMat2 y_;
};

/// Velocity of the flow exp(tY) at an affine point p, evaluated analytically.
ImQuaternion vector_field_at(const MoebiusVectorFieldElem& y, const PointS3& p);

}  // namespace mobius
