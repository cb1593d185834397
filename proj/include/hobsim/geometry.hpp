#pragma once

#include <cmath>
#include <iosfwd>

namespace hobsim {

constexpr double kPi = 3.14159265358979323846;

inline double deg_to_rad(double deg) { return deg * (kPi / 180.0); }
inline double rad_to_deg(double rad) { return rad * (180.0 / kPi); }

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(dot(*this)); }
    Vec3 normalized() const { return *this / norm(); }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

/// Column-major-free 3x3 matrix; m[r][c].
struct Mat3 {
    double m[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

    Vec3 operator*(const Vec3& v) const {
        return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
                m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
                m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
    }
    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                r.m[i][j] = 0.0;
                for (int k = 0; k < 3; ++k) r.m[i][j] += m[i][k] * o.m[k][j];
            }
        return r;
    }
    Mat3 transposed() const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.m[i][j] = m[j][i];
        return r;
    }

    static Mat3 identity() { return Mat3{}; }

    /// Rotation about +z by angle (right-hand rule).
    static Mat3 rot_z(double angle) {
        const double c = std::cos(angle), s = std::sin(angle);
        Mat3 r;
        r.m[0][0] = c; r.m[0][1] = -s; r.m[0][2] = 0;
        r.m[1][0] = s; r.m[1][1] = c;  r.m[1][2] = 0;
        r.m[2][0] = 0; r.m[2][1] = 0;  r.m[2][2] = 1;
        return r;
    }

    /// Rotation about an arbitrary unit axis (Rodrigues).
    static Mat3 rot_axis(const Vec3& u, double angle) {
        const double c = std::cos(angle), s = std::sin(angle), t = 1.0 - c;
        Mat3 r;
        r.m[0][0] = c + u.x * u.x * t;
        r.m[0][1] = u.x * u.y * t - u.z * s;
        r.m[0][2] = u.x * u.z * t + u.y * s;
        r.m[1][0] = u.y * u.x * t + u.z * s;
        r.m[1][1] = c + u.y * u.y * t;
        r.m[1][2] = u.y * u.z * t - u.x * s;
        r.m[2][0] = u.z * u.x * t - u.y * s;
        r.m[2][1] = u.z * u.y * t + u.x * s;
        r.m[2][2] = c + u.z * u.z * t;
        return r;
    }
};

/// Rigid transform q = R*p + t.
struct RigidTransform {
    Mat3 rot;
    Vec3 trans;

    Vec3 apply(const Vec3& p) const { return rot * p + trans; }
    Vec3 apply_vector(const Vec3& v) const { return rot * v; }

    RigidTransform inverse() const {
        RigidTransform inv;
        inv.rot = rot.transposed();
        inv.trans = -(inv.rot * trans);
        return inv;
    }
    RigidTransform compose(const RigidTransform& inner) const {
        // (*this) after inner: q = R_outer*(R_inner*p + t_inner) + t_outer
        RigidTransform r;
        r.rot = rot * inner.rot;
        r.trans = rot * inner.trans + trans;
        return r;
    }
};

std::ostream& operator<<(std::ostream& os, const Vec3& v);

}  // namespace hobsim
