#pragma once

#include <array>
#include <cmath>

namespace bestshot {

// Right-handed coordinate frame: +Y up, +Z toward the default camera.
struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(dot(*this)); }
    Vec3 normalized() const {
        double n = norm();
        return n > 0.0 ? Vec3{x / n, y / n, z / n} : Vec3{};
    }
    bool finite() const {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

// Row-major 3x3 rotation matrix.
struct Mat3 {
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

    static Mat3 identity() { return {}; }

    Vec3 operator*(const Vec3& v) const {
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
                m[3] * v.x + m[4] * v.y + m[5] * v.z,
                m[6] * v.x + m[7] * v.y + m[8] * v.z};
    }
    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0.0;
                for (int k = 0; k < 3; ++k) s += m[i * 3 + k] * o.m[k * 3 + j];
                r.m[i * 3 + j] = s;
            }
        return r;
    }
};

// Rodrigues formula; the zero vector maps to the identity.
inline Mat3 axis_angle_to_matrix(const Vec3& aa) {
    double angle = aa.norm();
    if (angle < 1e-12) return Mat3::identity();
    Vec3 u = aa * (1.0 / angle);
    double c = std::cos(angle), s = std::sin(angle), t = 1.0 - c;
    Mat3 r;
    r.m = {c + u.x * u.x * t,        u.x * u.y * t - u.z * s,  u.x * u.z * t + u.y * s,
           u.y * u.x * t + u.z * s,  c + u.y * u.y * t,        u.y * u.z * t - u.x * s,
           u.z * u.x * t - u.y * s,  u.z * u.y * t + u.x * s,  c + u.z * u.z * t};
    return r;
}

// Rotation about +Y by `angle` radians.
inline Mat3 yaw_matrix(double angle) {
    double c = std::cos(angle), s = std::sin(angle);
    Mat3 r;
    r.m = {c, 0, s, 0, 1, 0, -s, 0, c};
    return r;
}

// Signed yaw of a direction relative to +Z, in [-pi, pi).
// Positive yaw turns toward +X.
inline double yaw_of(const Vec3& dir) {
    double yaw = std::atan2(dir.x, dir.z);
    if (yaw >= M_PI) yaw -= 2.0 * M_PI;
    return yaw;
}

constexpr double kPi = 3.14159265358979323846;

}  // namespace bestshot
