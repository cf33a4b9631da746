#pragma once

#include <algorithm>
#include <cmath>
#include <utility>

namespace navsim {

/// Planar vector, used both for workspace points (m) and point-world points.
struct Vec2 {
  double x{0.0};
  double y{0.0};

  constexpr Vec2() = default;
  constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  constexpr Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2& operator-=(const Vec2& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr Vec2& operator*=(double s) {
    x *= s;
    y *= s;
    return *this;
  }
  constexpr bool operator==(const Vec2&) const = default;
};

constexpr Vec2 operator*(double s, const Vec2& v) { return v * s; }

constexpr double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
constexpr double norm_sq(const Vec2& v) { return dot(v, v); }
inline double norm(const Vec2& v) { return std::hypot(v.x, v.y); }
inline bool is_finite(const Vec2& v) { return std::isfinite(v.x) && std::isfinite(v.y); }

/// Counter-clockwise quarter turn.
constexpr Vec2 perp(const Vec2& v) { return {-v.y, v.x}; }

/// Unit vector along v, or (0,0) when ||v|| <= eps.
inline Vec2 normalized(const Vec2& v, double eps = 0.0) {
  const double n = norm(v);
  if (n <= eps) return {};
  return v / n;
}

/// Dense 2x2 matrix, row-major. Used for Jacobians and (symmetric) Hessians.
struct Mat2 {
  double xx{0.0}, xy{0.0};
  double yx{0.0}, yy{0.0};

  static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr Mat2 diagonal(double a, double b) { return {a, 0.0, 0.0, b}; }
  static constexpr Mat2 outer(const Vec2& a, const Vec2& b) {
    return {a.x * b.x, a.x * b.y, a.y * b.x, a.y * b.y};
  }

  constexpr Mat2 operator+(const Mat2& o) const {
    return {xx + o.xx, xy + o.xy, yx + o.yx, yy + o.yy};
  }
  constexpr Mat2 operator-(const Mat2& o) const {
    return {xx - o.xx, xy - o.xy, yx - o.yx, yy - o.yy};
  }
  constexpr Mat2 operator*(double s) const { return {xx * s, xy * s, yx * s, yy * s}; }
  constexpr Mat2& operator+=(const Mat2& o) {
    xx += o.xx;
    xy += o.xy;
    yx += o.yx;
    yy += o.yy;
    return *this;
  }
  constexpr Vec2 operator*(const Vec2& v) const {
    return {xx * v.x + xy * v.y, yx * v.x + yy * v.y};
  }
  constexpr Mat2 operator*(const Mat2& o) const {
    return {xx * o.xx + xy * o.yx, xx * o.xy + xy * o.yy,
            yx * o.xx + yy * o.yx, yx * o.xy + yy * o.yy};
  }
  constexpr Mat2 transposed() const { return {xx, yx, xy, yy}; }
  constexpr double det() const { return xx * yy - xy * yx; }
  constexpr double trace() const { return xx + yy; }
  double frobenius() const { return std::sqrt(xx * xx + xy * xy + yx * yx + yy * yy); }
  constexpr bool operator==(const Mat2&) const = default;
};

constexpr Mat2 operator*(double s, const Mat2& m) { return m * s; }

/// Eigenvalues of the symmetric part of m, ascending.
inline std::pair<double, double> symmetric_eigenvalues(const Mat2& m) {
  const double off = 0.5 * (m.xy + m.yx);
  const double mean = 0.5 * (m.xx + m.yy);
  const double half_diff = 0.5 * (m.xx - m.yy);
  const double r = std::hypot(half_diff, off);
  return {mean - r, mean + r};
}

}  // namespace navsim
