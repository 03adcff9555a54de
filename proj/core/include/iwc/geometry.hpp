#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace iwc {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double k) const { return {x * k, y * k}; }
    bool operator==(const Vec2&) const = default;

    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double cross(Vec2 o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
    double norm2() const { return x * x + y * y; }

    Vec2 normalized() const {
        double n = norm();
        return n > 0 ? Vec2{x / n, y / n} : Vec2{0, 0};
    }
};

inline Vec2 operator*(double k, Vec2 v) { return v * k; }

inline double distance(Vec2 a, Vec2 b) { return (b - a).norm(); }

/// Wrap an angle in degrees into (-180, 180].
inline double wrap_deg(double deg) {
    deg = std::fmod(deg, 360.0);
    if (deg <= -180.0) deg += 360.0;
    if (deg > 180.0) deg -= 360.0;
    return deg;
}

/// Wrap an angle in radians into (-pi, pi].
inline double wrap_rad(double rad) {
    rad = std::fmod(rad, 2.0 * M_PI);
    if (rad <= -M_PI) rad += 2.0 * M_PI;
    if (rad > M_PI) rad -= 2.0 * M_PI;
    return rad;
}

inline Vec2 heading_vector(double heading_rad) {
    return {std::cos(heading_rad), std::sin(heading_rad)};
}

/// Closest point on segment [a,b] to p, returned as the parameter t in [0,1].
inline double project_on_segment(Vec2 p, Vec2 a, Vec2 b) {
    Vec2 ab = b - a;
    double len2 = ab.norm2();
    if (len2 <= 0.0) return 0.0;
    return std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
}

inline double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    double t = project_on_segment(p, a, b);
    return distance(p, a + (b - a) * t);
}

/// Proper intersection test of segments [a,b] and [c,d]; fills t along [a,b].
inline bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d, double* t_ab = nullptr) {
    Vec2 r = b - a;
    Vec2 s = d - c;
    double denom = r.cross(s);
    Vec2 qp = c - a;
    if (std::abs(denom) < 1e-12) return false;  // parallel
    double t = qp.cross(s) / denom;
    double u = qp.cross(r) / denom;
    if (t < -1e-9 || t > 1.0 + 1e-9 || u < -1e-9 || u > 1.0 + 1e-9) return false;
    if (t_ab) *t_ab = std::clamp(t, 0.0, 1.0);
    return true;
}

/// Axis-aligned oriented rectangle given by center, unit axis, half extents.
struct OrientedRect {
    Vec2 center;
    Vec2 axis;  // unit vector along the long side
    double half_len = 0.0;
    double half_wid = 0.0;

    /// Distance from p to the rectangle (0 if inside).
    double distance_to(Vec2 p) const {
        Vec2 d = p - center;
        double u = std::abs(d.dot(axis));
        double v = std::abs(d.cross(axis));
        double du = std::max(0.0, u - half_len);
        double dv = std::max(0.0, v - half_wid);
        return std::hypot(du, dv);
    }

    bool overlaps_circle(Vec2 p, double radius) const { return distance_to(p) <= radius; }
};

}  // namespace iwc
