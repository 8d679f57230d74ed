// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pdq {

// Ground point. For one-dimensional regions only x is meaningful and y is
// kept at zero.
struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, const Point& p) { return {s * p.x, s * p.y}; }

inline double dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }
inline double squared_norm(const Point& p) { return p.x * p.x + p.y * p.y; }
inline double squared_distance(const Point& a, const Point& b) { return squared_norm(a - b); }
inline double distance(const Point& a, const Point& b) { return std::sqrt(squared_distance(a, b)); }

// Axis-aligned target region anchored at the origin: the interval [0, width]
// when dim() == 1, or the rectangle [0, width] x [0, height] when dim() == 2.
class Region {
 public:
  static Region interval(double length) {
    if (!(length > 0.0)) throw std::invalid_argument("Region: length must be positive");
    return Region(1, length, 0.0);
  }

  static Region rectangle(double width, double height) {
    if (!(width > 0.0) || !(height > 0.0))
      throw std::invalid_argument("Region: width and height must be positive");
    return Region(2, width, height);
  }

  int dim() const { return dim_; }
  double width() const { return width_; }
  double height() const { return height_; }

  // Length in 1D, area in 2D.
  double measure() const { return dim_ == 1 ? width_ : width_ * height_; }

  double diameter() const {
    return dim_ == 1 ? width_ : std::sqrt(width_ * width_ + height_ * height_);
  }

  bool contains(const Point& p, double tol = 0.0) const {
    if (p.x < -tol || p.x > width_ + tol) return false;
    if (dim_ == 1) return true;
    return p.y >= -tol && p.y <= height_ + tol;
  }

  Point clamp(const Point& p) const {
    Point q{std::clamp(p.x, 0.0, width_), 0.0};
    if (dim_ == 2) q.y = std::clamp(p.y, 0.0, height_);
    return q;
  }

 private:
  Region(int dim, double width, double height) : dim_(dim), width_(width), height_(height) {}

  int dim_;
  double width_;
  double height_;
};

}  // namespace pdq
