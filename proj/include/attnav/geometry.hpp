#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

namespace attnav {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double norm() const { return std::hypot(x, y); }
};

inline double dist(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

// Wraps an angle into (-pi, pi].
inline double wrap_angle(double a) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    a = std::fmod(a, two_pi);
    if (a <= -std::numbers::pi) a += two_pi;
    if (a > std::numbers::pi) a -= two_pi;
    return a;
}

// Axis-aligned rectangle, x0<=x1, y0<=y1.
struct Rect {
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double area() const { return width() * height(); }
    Vec2 center() const { return {(x0 + x1) / 2, (y0 + y1) / 2}; }

    bool contains(const Vec2& p) const {
        return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
    }

    Rect inflated(double r) const { return {x0 - r, y0 - r, x1 + r, y1 + r}; }
    Rect deflated(double r) const { return {x0 + r, y0 + r, x1 - r, y1 - r}; }

    bool valid() const { return x1 >= x0 && y1 >= y0; }
};

// Segment-AABB overlap via Liang-Barsky clipping.
inline bool segment_intersects_rect(const Vec2& a, const Vec2& b, const Rect& r) {
    double t0 = 0.0, t1 = 1.0;
    double dx = b.x - a.x, dy = b.y - a.y;
    auto clip = [&](double p, double q) {
        if (p == 0.0) return q >= 0.0;
        double t = q / p;
        if (p < 0.0) {
            if (t > t1) return false;
            if (t > t0) t0 = t;
        } else {
            if (t < t0) return false;
            if (t < t1) t1 = t;
        }
        return true;
    };
    return clip(-dx, a.x - r.x0) && clip(dx, r.x1 - a.x) &&
           clip(-dy, a.y - r.y0) && clip(dy, r.y1 - a.y);
}

// First positive ray-rectangle hit (slab method). Origin may be outside the
// rect; returns nullopt when the ray misses.
inline std::optional<double> ray_rect_hit(const Vec2& origin, const Vec2& dir, const Rect& r) {
    double tmin = 0.0, tmax = std::numeric_limits<double>::infinity();
    const double o[2] = {origin.x, origin.y};
    const double d[2] = {dir.x, dir.y};
    const double lo[2] = {r.x0, r.y0};
    const double hi[2] = {r.x1, r.y1};
    for (int i = 0; i < 2; ++i) {
        if (std::abs(d[i]) < 1e-15) {
            if (o[i] < lo[i] || o[i] > hi[i]) return std::nullopt;
        } else {
            double ta = (lo[i] - o[i]) / d[i];
            double tb = (hi[i] - o[i]) / d[i];
            if (ta > tb) std::swap(ta, tb);
            tmin = std::max(tmin, ta);
            tmax = std::min(tmax, tb);
            if (tmin > tmax) return std::nullopt;
        }
    }
    if (tmax < 0.0) return std::nullopt;
    return tmin > 0.0 ? tmin : tmax;
}

// Distance along the ray at which it exits the rectangle, assuming the origin
// lies inside. Returns nullopt if the origin is outside.
inline std::optional<double> ray_rect_exit(const Vec2& origin, const Vec2& dir, const Rect& r) {
    if (!r.contains(origin)) return std::nullopt;
    double tmax = std::numeric_limits<double>::infinity();
    const double o[2] = {origin.x, origin.y};
    const double d[2] = {dir.x, dir.y};
    const double lo[2] = {r.x0, r.y0};
    const double hi[2] = {r.x1, r.y1};
    for (int i = 0; i < 2; ++i) {
        if (std::abs(d[i]) < 1e-15) continue;
        double ta = (lo[i] - o[i]) / d[i];
        double tb = (hi[i] - o[i]) / d[i];
        tmax = std::min(tmax, std::max(ta, tb));
    }
    return tmax;
}

}  // namespace attnav
