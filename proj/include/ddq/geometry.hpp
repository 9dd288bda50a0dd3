#pragma once

#include <cmath>

#include "ddq/error.hpp"

namespace ddq {

// Axis-aligned box in image coordinates, corner form.
// Invariants: x2 >= x1, y2 >= y1, all coordinates finite. Degenerate
// (zero-area) boxes are allowed.
struct Box {
  double x1 = 0, y1 = 0, x2 = 0, y2 = 0;

  double width() const { return x2 - x1; }
  double height() const { return y2 - y1; }
  double center_x() const { return 0.5 * (x1 + x2); }
  double center_y() const { return 0.5 * (y1 + y2); }

  static Box from_center_size(double cx, double cy, double w, double h) {
    return Box{cx - 0.5 * w, cy - 0.5 * h, cx + 0.5 * w, cy + 0.5 * h};
  }
};

inline bool is_valid(const Box& b) {
  return std::isfinite(b.x1) && std::isfinite(b.y1) && std::isfinite(b.x2) &&
         std::isfinite(b.y2) && b.x2 >= b.x1 && b.y2 >= b.y1;
}

inline bool is_degenerate(const Box& b) {
  return b.x2 <= b.x1 || b.y2 <= b.y1;
}

// (x2-x1)*(y2-y1); zero for degenerate boxes.
double area(const Box& b);

// Intersection over union in [0,1]. Two degenerate boxes yield 0 so NMS
// orderings stay total.
double iou(const Box& a, const Box& b);

// IoU minus the hull-gap penalty, in (-1,1]. Throws GeometryError when both
// boxes are degenerate (hull area would be 0).
double giou(const Box& a, const Box& b);

// Intersection area (used by iou and the metrics matchers).
double intersection_area(const Box& a, const Box& b);

}  // namespace ddq
