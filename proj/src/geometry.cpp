#include "ddq/geometry.hpp"

#include <algorithm>

namespace ddq {

double area(const Box& b) {
  const double w = b.x2 - b.x1;
  const double h = b.y2 - b.y1;
  if (w <= 0 || h <= 0) return 0.0;
  return w * h;
}

double intersection_area(const Box& a, const Box& b) {
  const double iw = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
  const double ih = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
  if (iw <= 0 || ih <= 0) return 0.0;
  return iw * ih;
}

double iou(const Box& a, const Box& b) {
  const double inter = intersection_area(a, b);
  const double uni = area(a) + area(b) - inter;
  if (uni <= 0) return 0.0;
  return inter / uni;
}

double giou(const Box& a, const Box& b) {
  if (is_degenerate(a) && is_degenerate(b)) {
    throw GeometryError("geometry: giou undefined for two degenerate boxes");
  }
  const double inter = intersection_area(a, b);
  const double uni = area(a) + area(b) - inter;
  const Box hull{std::min(a.x1, b.x1), std::min(a.y1, b.y1),
                 std::max(a.x2, b.x2), std::max(a.y2, b.y2)};
  const double hull_area = area(hull);
  const double iou_val = uni > 0 ? inter / uni : 0.0;
  return iou_val - (hull_area - uni) / hull_area;
}

}  // namespace ddq
