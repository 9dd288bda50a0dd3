#pragma once

#include <vector>

#include "ddq/assignment.hpp"
#include "ddq/geometry.hpp"
#include "ddq/selection.hpp"

namespace ddq {

// Loss weights: GIoU 2, classification 1.
struct LossWeights {
  double w_giou = 2.0;
  double w_cls = 1.0;
};

// Probabilities are clamped to [kProbEps, 1-kProbEps] before logs.
inline constexpr double kProbEps = 1e-7;

// -y*log(p) - (1-y)*log(1-p), y a soft target in [0,1].
double bce(double p, double y);

// Quality focal loss: |y-p|^beta * bce(p, y). beta = 0 reduces to bce.
double qfocal(double p, double y, double beta = 2.0);

// 1 - giou(a, b), in [0,2).
double giou_loss(const Box& a, const Box& b);

// Loss of an identical query pair under one-to-one assignment: one query is
// labeled positive, the other negative: -log(p1) - log(1-p2).
double duplicated_pair_loss(double p1, double p2);

// How a duplicated pair rescales the classification gradient relative to a
// lone query.
enum class GradientRegime { kSuppressed, kZero, kNegativeTraining };

const char* to_string(GradientRegime r);

struct GradientRatioReport {
  double p = 0;
  double alpha = 0;     // 1 - p/(1-p)
  double fd_alpha = 0;  // finite-difference cross-check
  GradientRegime regime = GradientRegime::kSuppressed;
};

// alpha = 1 - p/(1-p) with a central finite-difference estimate of
// [dL1/dp]/[dL0/dp] (L1 the duplicated-pair loss at p1 = p2 = p, L0 the
// single-query bce with y = 1). Throws Error when p is outside (0,1).
GradientRatioReport gradient_ratio(double p);

struct LossBreakdown {
  double total = 0;
  double cls = 0;  // unweighted classification sum
  double reg = 0;  // unweighted regression sum
};

// Main loss over the selected (distinct) queries:
//   total = w_giou * sum_positives giou_loss + w_cls * sum_all qfocal.
// Positive classification targets default to the IoU between the matched box
// and its ground truth (quality-focal convention); hard_targets switches them
// to 1. Negatives target 0.
LossBreakdown main_loss(const QuerySet& selected, const AssignmentResult& assign,
                        const std::vector<GroundTruth>& gts,
                        const LossWeights& w, bool hard_targets = false,
                        double qfocal_beta = 2.0);

// Auxiliary loss over dense queries with soft targets; the GIoU term of each
// entry is reweighted by its classification target.
LossBreakdown auxiliary_loss(const QuerySet& dense, const SoftTargets& targets,
                             const std::vector<GroundTruth>& gts,
                             const LossWeights& w, double qfocal_beta = 2.0);

}  // namespace ddq
