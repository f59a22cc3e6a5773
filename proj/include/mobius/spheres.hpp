#pragma once

#include <mobius/moebius.hpp>

#include <variant>

namespace mobius {

/// Oriented 2-sphere: tr_R S = 0, S* = S, S^2 = -I.
class Sphere2 {
  public:
    explicit Sphere2(const QMat2& m);
    const QMat2& matrix() const { return m_; }
    Sphere2 operator-() const { return Sphere2(-m_); }

    static bool is_member(const QMat2& m, double tol = 1e-9);

  private:
    QMat2 m_;
};

/// Oriented circle: C* = -C, C^2 = -I.
class Circle {
  public:
    explicit Circle(const QMat2& m);
    const QMat2& matrix() const { return m_; }
    Circle operator-() const { return Circle(-m_); }

    static bool is_member(const QMat2& m, double tol = 1e-9);

  private:
    QMat2 m_;
};

/// Oriented point pair: U* = -U, U^2 = I. The first point carries the -1
/// eigenvalue (the source of the induced vector field).
class PointPair {
  public:
    explicit PointPair(const QMat2& m);
    const QMat2& matrix() const { return m_; }
    PointPair operator-() const { return PointPair(-m_); }

    static bool is_member(const QMat2& m, double tol = 1e-9);

  private:
    QMat2 m_;
};

/// Element of the light cone in R^{4,1}: Hermitian, traceless, null.
class LightVector {
  public:
    explicit LightVector(const QMat2& m);
    const QMat2& matrix() const { return m_; }

    static bool is_member(const QMat2& m, double tol = 1e-9);

  private:
    QMat2 m_;
};

/// Element of V_p: an infinitesimal translation once p is sent to infinity.
class InfTranslation {
  public:
    InfTranslation(const QMat2& m, const PointS3& basepoint);
    const QMat2& matrix() const { return m_; }
    const PointS3& basepoint() const { return basepoint_; }

  private:
    QMat2 m_;
    PointS3 basepoint_;
};

// --- Constructors -----------------------------------------------------------

/// Inversion in the oriented sphere through p with unit normal n and mean
/// curvature h there: S = T_p [[n, 0], [-h, -n]] T_p^{-1}. h = 0 is a plane.
Sphere2 sphere_from_point_normal_h(const ImQuaternion& p, const ImQuaternion& n, double h);

/// 180 degree rotation about the circle through p with unit tangent t and
/// curvature binormal kb (kb perpendicular to t; kb = 0 is a line).
Circle circle_from_point_tangent_binormal(const ImQuaternion& p, const ImQuaternion& t,
                                          const ImQuaternion& kb);

/// The unique oriented circle through p1, p2, p3 traversed in that order.
/// Collinear but distinct points give the line through them.
Circle circle_through_points(const ImQuaternion& p1, const ImQuaternion& p2,
                             const ImQuaternion& p3);

/// Inversion in the pair (p1, p2): U psi_1 = -psi_1, U psi_2 = +psi_2.
PointPair point_pair(const PointS3& p1, const PointS3& p2);

/// Euclidean lift Psi_p = [[p, |p|^2], [1, -p]] into the light cone.
LightVector euclidean_lift(const ImQuaternion& p);
LightVector lift_infinity();

/// V_p element with direction w in the chart where p sits at the origin.
InfTranslation inf_translation(const ImQuaternion& p, const ImQuaternion& w);

// --- Incidence and extraction ----------------------------------------------

/// |<S psi, psi>| < tol |psi|^2.
bool incident(const Sphere2& s, const PointS3& p, double tol = 1e-8);
bool incident(const Circle& c, const PointS3& p, double tol = 1e-8);

/// Unit normal of the sphere at an incident affine point.
ImQuaternion sphere_normal_at(const Sphere2& s, const PointS3& p);
/// Signed mean curvature of the sphere read off at an incident affine point.
double sphere_mean_curvature_at(const Sphere2& s, const PointS3& p);
/// Unit tangent of the circle at an incident affine point.
ImQuaternion circle_tangent_at(const Circle& c, const PointS3& p);

struct PlaneGeometry {
    ImQuaternion normal;  // unit
    double offset;        // plane is <normal, x> = offset
};
struct RoundSphereGeometry {
    ImQuaternion center;
    double radius;
    double mean_curvature;  // signed; +1/radius means outward normal
};
using SphereGeometry = std::variant<PlaneGeometry, RoundSphereGeometry>;

SphereGeometry sphere_geometry(const Sphere2& s);

// --- Pencils and products ---------------------------------------------------

enum class PencilKind { Elliptic, Parabolic, Hyperbolic };

struct PencilClass {
    PencilKind kind;
    /// Intersection angle alpha for elliptic, 0 for parabolic, rapidity sigma
    /// for hyperbolic pencils.
    double angle_or_sigma;
    /// Unit circle / nilpotent infinitesimal translation / unit point pair.
    /// exp(1/2 * angle_or_sigma * axis) maps S1 to S2 (for parabolic the
    /// geodesic generator is the axis itself: exp(axis / 2)).
    QMat2 axis;
};

/// Classify the pencil spanned by S1, S2 by the sign of <S1,S2>^2 - 1.
/// Throws for S1 = +-S2 and for inconsistent orientations (<S1,S2> <= -1).
PencilClass classify_pencil(const Sphere2& s1, const Sphere2& s2);

/// Q = I - S2 S1, the pencil geodesic map with Q S1 Q^{-1} = S2.
MoebiusMap rolling_map(const Sphere2& s1, const Sphere2& s2);

struct CircleProduct {
    double cos_beta;
    QMat2 cross_term;  // sin(beta) times the common normal circle
};

CircleProduct circle_circle_product(const Circle& c1, const Circle& c2);

/// Normal circle C = S U = U S for a point pair U lying on the sphere S.
Circle sphere_pointpair_product(const Sphere2& s, const PointPair& u);

}  // namespace mobius
