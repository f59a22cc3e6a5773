#pragma once

#include <cmath>
#include <stdexcept>

namespace mobius {

struct Quaternion;

/// A purely imaginary quaternion, identified with a point or vector in R^3.
/// Kept as a distinct type so R^3-only interfaces are enforced by the compiler.
struct ImQuaternion {
    double x = 0, y = 0, z = 0;

    constexpr ImQuaternion() = default;
    constexpr ImQuaternion(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr ImQuaternion operator+(const ImQuaternion& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr ImQuaternion operator-(const ImQuaternion& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr ImQuaternion operator-() const { return {-x, -y, -z}; }
    constexpr ImQuaternion operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr ImQuaternion operator/(double s) const { return {x / s, y / s, z / s}; }
    ImQuaternion& operator+=(const ImQuaternion& o) { x += o.x; y += o.y; z += o.z; return *this; }
    ImQuaternion& operator-=(const ImQuaternion& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }

    double norm2() const { return x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm2()); }
};

inline constexpr ImQuaternion operator*(double s, const ImQuaternion& v) { return v * s; }

inline constexpr double dot(const ImQuaternion& a, const ImQuaternion& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline constexpr ImQuaternion cross(const ImQuaternion& a, const ImQuaternion& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline ImQuaternion normalized(const ImQuaternion& v) {
    double n = v.norm();
    if (n == 0) throw std::domain_error("cannot normalize zero vector");
    return v / n;
}

/// Quaternion q = w + x i + y j + z k with the Hamilton product.
/// No normalization happens on construction; projective scale is handled
/// by the consumers that need it.
struct Quaternion {
    double w = 0, x = 0, y = 0, z = 0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}
    constexpr Quaternion(const ImQuaternion& v) : w(0), x(v.x), y(v.y), z(v.z) {}
    static constexpr Quaternion real(double r) { return {r, 0, 0, 0}; }

    constexpr Quaternion operator+(const Quaternion& o) const { return {w + o.w, x + o.x, y + o.y, z + o.z}; }
    constexpr Quaternion operator-(const Quaternion& o) const { return {w - o.w, x - o.x, y - o.y, z - o.z}; }
    constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }
    constexpr Quaternion operator*(double s) const { return {w * s, x * s, y * s, z * s}; }
    constexpr Quaternion operator/(double s) const { return {w / s, x / s, y / s, z / s}; }

    // Hamilton product; order matters.
    constexpr Quaternion operator*(const Quaternion& o) const {
        return {w * o.w - x * o.x - y * o.y - z * o.z,
                w * o.x + x * o.w + y * o.z - z * o.y,
                w * o.y - x * o.z + y * o.w + z * o.x,
                w * o.z + x * o.y - y * o.x + z * o.w};
    }

    Quaternion& operator+=(const Quaternion& o) { return *this = *this + o; }
    Quaternion& operator-=(const Quaternion& o) { return *this = *this - o; }

    constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
    double norm2() const { return w * w + x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm2()); }
    double real() const { return w; }
    constexpr ImQuaternion im() const { return {x, y, z}; }

    Quaternion inverse() const {
        double n2 = norm2();
        if (n2 == 0) throw std::domain_error("inverse of zero quaternion");
        return conj() / n2;
    }

    /// Max-norm distance used by the monodromy comparisons.
    double max_abs() const {
        return std::max(std::max(std::abs(w), std::abs(x)), std::max(std::abs(y), std::abs(z)));
    }
};

inline constexpr Quaternion operator*(double s, const Quaternion& q) { return q * s; }

inline Quaternion mul(const Quaternion& a, const Quaternion& b) { return a * b; }

/// exp of an imaginary quaternion: cos|v| + sin|v| v/|v|, with exp(0) = 1.
inline Quaternion exp_im(const ImQuaternion& v) {
    double t = v.norm();
    if (t == 0) return Quaternion::real(1);
    double s = std::sin(t) / t;
    return {std::cos(t), s * v.x, s * v.y, s * v.z};
}

/// Conjugation p -> q p q~. Preserves Im H and scales lengths by |q|^2.
inline ImQuaternion rotate(const Quaternion& q, const ImQuaternion& p) {
    if (q.norm2() == 0) throw std::domain_error("rotate by zero quaternion");
    Quaternion r = q * Quaternion(p) * q.conj();
    return r.im();
}

}  // namespace mobius
