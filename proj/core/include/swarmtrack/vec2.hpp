#pragma once

#include <cmath>

namespace swarmtrack {

/// Planar vector used for positions, velocities and displacements.
struct Vec2 {
    double x{0.0};
    double y{0.0};

    constexpr Vec2& operator+=(Vec2 o) noexcept {
        x += o.x;
        y += o.y;
        return *this;
    }
    constexpr Vec2& operator-=(Vec2 o) noexcept {
        x -= o.x;
        y -= o.y;
        return *this;
    }
    constexpr Vec2& operator*=(double s) noexcept {
        x *= s;
        y *= s;
        return *this;
    }

    [[nodiscard]] constexpr double norm_sq() const noexcept { return x * x + y * y; }
    [[nodiscard]] double norm() const noexcept { return std::sqrt(norm_sq()); }
    [[nodiscard]] bool finite() const noexcept { return std::isfinite(x) && std::isfinite(y); }

    friend constexpr bool operator==(Vec2, Vec2) = default;
};

constexpr Vec2 operator+(Vec2 a, Vec2 b) noexcept { return {a.x + b.x, a.y + b.y}; }
constexpr Vec2 operator-(Vec2 a, Vec2 b) noexcept { return {a.x - b.x, a.y - b.y}; }
constexpr Vec2 operator-(Vec2 a) noexcept { return {-a.x, -a.y}; }
constexpr Vec2 operator*(double s, Vec2 v) noexcept { return {s * v.x, s * v.y}; }
constexpr Vec2 operator*(Vec2 v, double s) noexcept { return {s * v.x, s * v.y}; }
constexpr double dot(Vec2 a, Vec2 b) noexcept { return a.x * b.x + a.y * b.y; }

inline double distance(Vec2 a, Vec2 b) noexcept { return (b - a).norm(); }
constexpr double distance_sq(Vec2 a, Vec2 b) noexcept { return (b - a).norm_sq(); }

}  // namespace swarmtrack
