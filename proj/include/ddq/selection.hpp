#pragma once

#include <vector>

#include "ddq/geometry.hpp"

namespace ddq {

// A candidate detection: predicted box, class-agnostic score, optional
// per-class probabilities and provenance (pyramid level, anchor position).
// Ids are unique within a QuerySet; if class_scores is non-empty, score must
// equal its maximum.
struct Query {
  Box box;
  double score = 0;
  std::vector<double> class_scores;  // empty when absent
  int level = 0;
  int id = 0;
  double anchor_x = 0;
  double anchor_y = 0;
};

// Ordered list of queries; the original ordering is kept stable.
using QuerySet = std::vector<Query>;

// Throws SchemaError on duplicate ids, scores outside [0,1], or a score that
// disagrees with max(class_scores).
void validate(const QuerySet& qs);

// For each level independently, the k highest-score queries (all if fewer),
// concatenated in ascending level order, each level sorted by descending
// score (ties: lower id first).
QuerySet topk_per_level(const QuerySet& qs, int k);

// Distinct Queries Selection: greedy class-agnostic NMS in descending score
// order (ties: lower id first). A query is suppressed iff its IoU with an
// already-kept query is strictly greater than iou_thresh. Kept queries return
// in descending score order. Guarantees: (A) no two kept queries have
// IoU > iou_thresh; (B) every suppressed query has IoU > iou_thresh with some
// kept query of score >= its own.
QuerySet distinct_query_selection(const QuerySet& qs, double iou_thresh);

}  // namespace ddq
