#include "ddq/losses.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "ddq/error.hpp"

namespace ddq {
namespace {

double clamp_prob(double p) {
  return std::min(std::max(p, kProbEps), 1.0 - kProbEps);
}

}  // namespace

double bce(double p, double y) {
  const double pc = clamp_prob(p);
  return -y * std::log(pc) - (1.0 - y) * std::log(1.0 - pc);
}

double qfocal(double p, double y, double beta) {
  if (beta < 0) throw Error("losses: qfocal beta must be non-negative");
  if (beta == 0.0) return bce(p, y);
  return std::pow(std::abs(y - p), beta) * bce(p, y);
}

double giou_loss(const Box& a, const Box& b) { return 1.0 - giou(a, b); }

double duplicated_pair_loss(double p1, double p2) {
  return -std::log(clamp_prob(p1)) - std::log(1.0 - clamp_prob(p2));
}

const char* to_string(GradientRegime r) {
  switch (r) {
    case GradientRegime::kSuppressed:
      return "suppressed";
    case GradientRegime::kZero:
      return "zero";
    case GradientRegime::kNegativeTraining:
      return "negative-training";
  }
  return "unknown";
}

GradientRatioReport gradient_ratio(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error("losses: gradient_ratio requires p in (0,1)");
  }
  GradientRatioReport rep;
  rep.p = p;
  rep.alpha = 1.0 - p / (1.0 - p);
  const double h = 1e-6;
  const double d1 = (duplicated_pair_loss(p + h, p + h) -
                     duplicated_pair_loss(p - h, p - h)) /
                    (2.0 * h);
  const double d0 = (bce(p + h, 1.0) - bce(p - h, 1.0)) / (2.0 * h);
  rep.fd_alpha = d1 / d0;
  const double tol = 1e-9;
  if (std::abs(rep.alpha) <= tol) {
    rep.regime = GradientRegime::kZero;
  } else if (rep.alpha < 0) {
    rep.regime = GradientRegime::kNegativeTraining;
  } else {
    rep.regime = GradientRegime::kSuppressed;
  }
  return rep;
}

LossBreakdown main_loss(const QuerySet& selected, const AssignmentResult& assign,
                        const std::vector<GroundTruth>& gts,
                        const LossWeights& w, bool hard_targets,
                        double qfocal_beta) {
  std::unordered_map<int, int> gt_of_query;  // query_id -> gt index
  for (const auto& [gt_index, query_id] : assign.pairs) {
    gt_of_query.emplace(query_id, gt_index);
  }
  LossBreakdown out;
  for (const auto& q : selected) {
    const auto it = gt_of_query.find(q.id);
    if (it == gt_of_query.end()) {
      out.cls += qfocal(q.score, 0.0, qfocal_beta);
      continue;
    }
    const auto& gt = gts[it->second];
    const double p = q.class_scores.empty()
                         ? q.score
                         : q.class_scores[gt.class_id];
    const double y = hard_targets ? 1.0 : iou(q.box, gt.box);
    out.cls += qfocal(p, y, qfocal_beta);
    out.reg += giou_loss(q.box, gt.box);
  }
  out.total = w.w_cls * out.cls + w.w_giou * out.reg;
  return out;
}

LossBreakdown auxiliary_loss(const QuerySet& dense, const SoftTargets& targets,
                             const std::vector<GroundTruth>& gts,
                             const LossWeights& w, double qfocal_beta) {
  LossBreakdown out;
  for (const auto& q : dense) {
    double t = 0;
    int gt_index = -1;
    const auto it = std::lower_bound(
        targets.entries.begin(), targets.entries.end(), q.id,
        [](const SoftTarget& e, int id) { return e.query_id < id; });
    if (it != targets.entries.end() && it->query_id == q.id) {
      t = it->target;
      gt_index = it->gt_index;
    }
    double p = q.score;
    if (gt_index >= 0 && !q.class_scores.empty()) {
      p = q.class_scores[gts[gt_index].class_id];
    }
    out.cls += qfocal(p, t, qfocal_beta);
    if (gt_index >= 0 && t > 0) {
      out.reg += t * giou_loss(q.box, gts[gt_index].box);
    }
  }
  out.total = w.w_cls * out.cls + w.w_giou * out.reg;
  return out;
}

}  // namespace ddq
