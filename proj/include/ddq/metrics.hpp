#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ddq/geometry.hpp"

namespace ddq {

struct Detection {
  Box box;
  double score = 0;
  int image_id = 0;
};

// Per-detection match flags for one image, aligned to the input order.
struct DetMatch {
  std::vector<std::uint8_t> tp;
  std::vector<int> matched_gt;  // -1 when unmatched
};

// Score-ordered greedy matching: each detection (descending score, ties by
// input order) takes the unmatched ground truth of highest IoU >= iou_thresh;
// a ground truth matches at most one detection.
DetMatch greedy_match(const std::vector<Detection>& dets,
                      const std::vector<Box>& gts, double iou_thresh);

// Area under the 101-point interpolated precision-recall curve. With zero
// ground truths: 1.0 if there are also zero detections, else 0.0.
double average_precision(const std::vector<Detection>& dets,
                         const std::vector<std::vector<Box>>& gts_per_image,
                         double iou_thresh);

// Mean AP over IoU thresholds 0.50:0.05:0.95.
double coco_map(const std::vector<Detection>& dets,
                const std::vector<std::vector<Box>>& gts_per_image);

// Keep the top-k detections per image, match at iou_thresh, and return
// aggregate TP / total ground truths. 1.0 when there are no ground truths.
double recall_at_k(const std::vector<Detection>& dets,
                   const std::vector<std::vector<Box>>& gts_per_image, int k,
                   double iou_thresh = 0.5);

// Log-average miss rate over 9 log-spaced FPPI reference points in
// [1e-2, 1], matching at IoU 0.5. At each reference the best achievable miss
// rate among score thresholds with FPPI <= reference is used (1.0 when only
// the empty threshold qualifies); miss rates are floored at 1e-4 inside the
// geometric mean. Throws MetricError when no image has a ground truth.
double mmr(const std::vector<Detection>& dets,
           const std::vector<std::vector<Box>>& gts_per_image);

struct EvalReport {
  double ap50 = 0;
  double map = 0;
  std::vector<std::pair<int, double>> recall_at;  // (k, AR@k) at IoU 0.5
  double mmr = 0;
  long tp = 0, fp = 0, fn = 0;  // counts at IoU 0.5, all detections
};

EvalReport evaluate(const std::vector<Detection>& dets,
                    const std::vector<std::vector<Box>>& gts_per_image,
                    const std::vector<int>& recall_ks = {100, 200, 300});

}  // namespace ddq
