#pragma once

#include <utility>
#include <vector>

#include "ddq/geometry.hpp"
#include "ddq/selection.hpp"

namespace ddq {

// Matching-cost weights, DETR defaults (1, 5, 2).
struct CostWeights {
  double w_cls = 1.0;
  double w_l1 = 5.0;
  double w_giou = 2.0;
};

// Classification-cost flavor. NegProb is -p (DETR); Focal is the
// focal-weighted variant used by deformable-DETR style matchers.
enum class ClsCost { kNegProb, kFocal };

struct GroundTruth {
  Box box;
  int class_id = 0;
};

// Outcome of a one-to-one assignment: each ground truth gets exactly one
// query, every query lands in positives or negatives (never both).
struct AssignmentResult {
  std::vector<std::pair<int, int>> pairs;  // (gt_index, query_id)
  std::vector<int> positives;              // sorted query ids
  std::vector<int> negatives;              // sorted query ids
  double total_cost = 0;
};

// w_cls*(-p_gtclass) + w_l1*L1(corners)/image_diag + w_giou*(-giou).
// Throws SchemaError when the query lacks a score for the gt class.
double match_cost(const Query& q, const GroundTruth& gt, const CostWeights& w,
                  double image_diag, ClsCost cls_cost = ClsCost::kNegProb);

// Minimum-cost injective map of rows (ground truths) into columns (queries)
// of a G x Q matrix, Q >= G. Query ids in the result are column indices.
// total_cost is summed in ascending gt order. Throws InfeasibleError if
// Q < G.
AssignmentResult hungarian(const std::vector<std::vector<double>>& cost);

// Builds the match_cost matrix and solves it; positives are the matched
// query ids. Throws InfeasibleError when |qs| < |gts| (DQS kept too few
// queries; lower the threshold or raise k).
AssignmentResult one_to_one_assign(const QuerySet& qs,
                                   const std::vector<GroundTruth>& gts,
                                   const CostWeights& w, double image_diag,
                                   ClsCost cls_cost = ClsCost::kNegProb);

// Soft one-to-many assignment for the auxiliary head. Per ground truth the K
// smallest-cost queries form the positive set P; each gets target
//   t_i = s_i*IoU_i^6 / max_j(s_j*IoU_j^6) * max_j(IoU_j),
// zero when the denominator vanishes. A query in several P sets takes its
// maximum target (gt_index records which gt produced it). The regression
// weight equals the target.
struct SoftTarget {
  int query_id = 0;
  double target = 0;
  int gt_index = -1;
};

struct SoftTargets {
  std::vector<SoftTarget> entries;  // sorted by query_id; zero targets omitted

  double target_for(int query_id) const;
};

SoftTargets soft_one_to_many_assign(const QuerySet& qs,
                                    const std::vector<GroundTruth>& gts,
                                    const CostWeights& w, int k,
                                    double image_diag);

}  // namespace ddq
