#pragma once

#include <array>
#include <cmath>

namespace prrtc {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm2() const { return dot(*this); }
    double norm() const { return std::sqrt(norm2()); }

    bool operator==(const Vec3&) const = default;
};

// Row-major 3x3 matrix.
struct Mat3 {
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

    static Mat3 identity() { return {}; }

    Vec3 apply(const Vec3& v) const {
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
                m[3] * v.x + m[4] * v.y + m[5] * v.z,
                m[6] * v.x + m[7] * v.y + m[8] * v.z};
    }

    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                r.m[i * 3 + j] = m[i * 3 + 0] * o.m[0 * 3 + j] +
                                 m[i * 3 + 1] * o.m[1 * 3 + j] +
                                 m[i * 3 + 2] * o.m[2 * 3 + j];
            }
        }
        return r;
    }

    Mat3 transposed() const {
        return Mat3{{m[0], m[3], m[6], m[1], m[4], m[7], m[2], m[5], m[8]}};
    }

    double det() const {
        return m[0] * (m[4] * m[8] - m[5] * m[7]) -
               m[1] * (m[3] * m[8] - m[5] * m[6]) +
               m[2] * (m[3] * m[7] - m[4] * m[6]);
    }

    // Rodrigues rotation about a unit axis.
    static Mat3 axis_angle(const Vec3& axis, double angle) {
        const double c = std::cos(angle), s = std::sin(angle), t = 1.0 - c;
        const double ax = axis.x, ay = axis.y, az = axis.z;
        Mat3 r;
        r.m = {t * ax * ax + c,      t * ax * ay - s * az, t * ax * az + s * ay,
               t * ax * ay + s * az, t * ay * ay + c,      t * ay * az - s * ax,
               t * ax * az - s * ay, t * ay * az + s * ax, t * az * az + c};
        return r;
    }

    bool operator==(const Mat3&) const = default;
};

// Rigid transform, stored as rotation matrix plus translation.
struct Transform {
    Mat3 rotation;
    Vec3 translation;

    static Transform identity() { return {}; }

    Vec3 apply(const Vec3& p) const { return rotation.apply(p) + translation; }

    Transform operator*(const Transform& o) const {
        return {rotation * o.rotation, rotation.apply(o.translation) + translation};
    }

    bool operator==(const Transform&) const = default;
};

// Unit quaternion, scalar-first. The file formats carry poses as
// translation + quaternion; matrices are derived at load.
struct Quat {
    double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

    double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

    Quat normalized() const {
        const double n = norm();
        return {w / n, x / n, y / n, z / n};
    }

    Mat3 to_mat3() const {
        Mat3 r;
        r.m = {1 - 2 * (y * y + z * z), 2 * (x * y - w * z),     2 * (x * z + w * y),
               2 * (x * y + w * z),     1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
               2 * (x * z - w * y),     2 * (y * z + w * x),     1 - 2 * (x * x + y * y)};
        return r;
    }

    static Quat from_mat3(const Mat3& r) {
        const auto& m = r.m;
        Quat q;
        const double tr = m[0] + m[4] + m[8];
        if (tr > 0.0) {
            double s = std::sqrt(tr + 1.0) * 2.0;
            q.w = 0.25 * s;
            q.x = (m[7] - m[5]) / s;
            q.y = (m[2] - m[6]) / s;
            q.z = (m[3] - m[1]) / s;
        } else if (m[0] > m[4] && m[0] > m[8]) {
            double s = std::sqrt(1.0 + m[0] - m[4] - m[8]) * 2.0;
            q.w = (m[7] - m[5]) / s;
            q.x = 0.25 * s;
            q.y = (m[1] + m[3]) / s;
            q.z = (m[2] + m[6]) / s;
        } else if (m[4] > m[8]) {
            double s = std::sqrt(1.0 + m[4] - m[0] - m[8]) * 2.0;
            q.w = (m[2] - m[6]) / s;
            q.x = (m[1] + m[3]) / s;
            q.y = 0.25 * s;
            q.z = (m[5] + m[7]) / s;
        } else {
            double s = std::sqrt(1.0 + m[8] - m[0] - m[4]) * 2.0;
            q.w = (m[3] - m[1]) / s;
            q.x = (m[2] + m[6]) / s;
            q.y = (m[5] + m[7]) / s;
            q.z = 0.25 * s;
        }
        return q;
    }

    bool operator==(const Quat&) const = default;
};

// Pose as stored on disk: translation + unit quaternion. Kept verbatim so
// files round-trip exactly; the matrix form is derived once at load.
struct PoseSpec {
    Quat rotation;
    Vec3 translation;

    Transform to_transform() const { return {rotation.to_mat3(), translation}; }

    bool operator==(const PoseSpec&) const = default;
};

}  // namespace prrtc
