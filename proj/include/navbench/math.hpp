#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace navbench {

inline constexpr double kPi = std::numbers::pi;

struct Vec3f {
    float x = 0.0f;
    float y = 0.0f;
    float z = 0.0f;
};

struct Vec3d {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3d() = default;
    Vec3d(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}
    explicit Vec3d(const Vec3f& v) : x(v.x), y(v.y), z(v.z) {}

    Vec3d operator+(const Vec3d& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3d operator-(const Vec3d& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3d operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3d operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3d& operator+=(const Vec3d& o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
};

inline Vec3f to_vec3f(const Vec3d& v) {
    return {static_cast<float>(v.x), static_cast<float>(v.y), static_cast<float>(v.z)};
}

inline double dot(const Vec3d& a, const Vec3d& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3d cross(const Vec3d& a, const Vec3d& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3d& v) { return std::sqrt(dot(v, v)); }

inline double distance(const Vec3d& a, const Vec3d& b) { return norm(a - b); }

inline Vec3d normalized(const Vec3d& v) {
    const double n = norm(v);
    return n > 0.0 ? v / n : Vec3d{0.0, 0.0, 0.0};
}

inline double planar_distance(const Vec3d& a, const Vec3d& b) {
    return std::hypot(a.x - b.x, a.z - b.z);
}

/// Wraps an angle to [-pi, pi).
inline double wrap_angle(double a) {
    a = std::fmod(a + kPi, 2.0 * kPi);
    if (a < 0.0) a += 2.0 * kPi;
    return a - kPi;
}

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

/// Heading vector for a yaw about +Y; yaw 0 faces -Z, positive yaw turns
/// counterclockwise seen from above (right-handed, Y-up).
inline Vec3d heading(double yaw) { return {-std::sin(yaw), 0.0, -std::cos(yaw)}; }

/// Yaw that faces from `from` toward `to` in the floor plane.
inline double yaw_towards(const Vec3d& from, const Vec3d& to) {
    const double dx = to.x - from.x;
    const double dz = to.z - from.z;
    return std::atan2(-dx, -dz);
}

}  // namespace navbench
