#pragma once

#include <cmath>

namespace fatigue {

// Image-space point: origin top-left, x rightward, y downward.
struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(const Point& a, const Point& b) {
  return std::hypot(b.x - a.x, b.y - a.y);
}

inline Point midpoint(const Point& a, const Point& b) {
  return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
}

// Integer pixel rectangle as it appears in face manifests.
struct Rect {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;
};

// Axis-aligned box in continuous pixel coordinates (edge space: pixel i
// covers [i, i+1)).
struct Box {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  static Box centered(Point c, double width, double height) {
    return {c.x - 0.5 * width, c.y - 0.5 * height, width, height};
  }
};

inline Box intersect(const Box& b, double width, double height) {
  double x0 = std::max(b.x, 0.0);
  double y0 = std::max(b.y, 0.0);
  double x1 = std::min(b.x + b.w, width);
  double y1 = std::min(b.y + b.h, height);
  return {x0, y0, x1 - x0, y1 - y0};
}

}  // namespace fatigue
