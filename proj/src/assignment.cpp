#include "ddq/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ddq/error.hpp"

namespace ddq {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double cls_cost_value(double p, ClsCost kind) {
  switch (kind) {
    case ClsCost::kNegProb:
      return -p;
    case ClsCost::kFocal: {
      // Deformable-DETR focal cost, alpha = 0.25, gamma = 2.
      const double alpha = 0.25, gamma = 2.0, eps = 1e-8;
      const double pc = std::min(std::max(p, eps), 1.0 - eps);
      const double pos = alpha * std::pow(1.0 - pc, gamma) * (-std::log(pc));
      const double neg =
          (1.0 - alpha) * std::pow(pc, gamma) * (-std::log(1.0 - pc));
      return pos - neg;
    }
  }
  return 0;
}

// Shortest-augmenting-path Hungarian with potentials (rows <= cols).
// Returns the matched column per row.
std::vector<int> solve_rectangular(const std::vector<std::vector<double>>& a,
                                   int rows, int cols) {
  std::vector<double> u(rows + 1, 0.0), v(cols + 1, 0.0);
  std::vector<int> p(cols + 1, 0), way(cols + 1, 0);
  for (int i = 1; i <= rows; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(cols + 1, kInf);
    std::vector<char> used(cols + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = kInf;
      int j1 = -1;
      for (int j = 1; j <= cols; ++j) {
        if (used[j]) continue;
        const double cur = a[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= cols; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> col_of_row(rows, -1);
  for (int j = 1; j <= cols; ++j) {
    if (p[j] != 0) col_of_row[p[j] - 1] = j - 1;
  }
  return col_of_row;
}

AssignmentResult result_from_matching(const std::vector<int>& col_of_row,
                                      const std::vector<std::vector<double>>& cost,
                                      const std::vector<int>& query_ids) {
  AssignmentResult res;
  const int g = static_cast<int>(col_of_row.size());
  res.pairs.reserve(g);
  std::vector<char> matched(query_ids.size(), 0);
  for (int i = 0; i < g; ++i) {
    const int j = col_of_row[i];
    res.pairs.emplace_back(i, query_ids[j]);
    res.total_cost += cost[i][j];
    matched[j] = 1;
    res.positives.push_back(query_ids[j]);
  }
  for (std::size_t j = 0; j < query_ids.size(); ++j) {
    if (!matched[j]) res.negatives.push_back(query_ids[j]);
  }
  std::sort(res.positives.begin(), res.positives.end());
  std::sort(res.negatives.begin(), res.negatives.end());
  return res;
}

double class_prob(const Query& q, int class_id) {
  if (class_id < 0 ||
      static_cast<std::size_t>(class_id) >= q.class_scores.size()) {
    throw SchemaError("assignment: query " + std::to_string(q.id) +
                      " has no class score for class " +
                      std::to_string(class_id));
  }
  return q.class_scores[class_id];
}

}  // namespace

double match_cost(const Query& q, const GroundTruth& gt, const CostWeights& w,
                  double image_diag, ClsCost cls_cost) {
  if (!(image_diag > 0)) {
    throw SchemaError("assignment: image_diag must be positive");
  }
  const double p = class_prob(q, gt.class_id);
  const double l1 = std::abs(q.box.x1 - gt.box.x1) +
                    std::abs(q.box.y1 - gt.box.y1) +
                    std::abs(q.box.x2 - gt.box.x2) +
                    std::abs(q.box.y2 - gt.box.y2);
  return w.w_cls * cls_cost_value(p, cls_cost) + w.w_l1 * l1 / image_diag +
         w.w_giou * (-giou(q.box, gt.box));
}

AssignmentResult hungarian(const std::vector<std::vector<double>>& cost) {
  const int g = static_cast<int>(cost.size());
  if (g == 0) return {};
  const int q = static_cast<int>(cost.front().size());
  for (const auto& row : cost) {
    if (static_cast<int>(row.size()) != q) {
      throw SchemaError("assignment: ragged cost matrix");
    }
    for (double c : row) {
      if (!std::isfinite(c)) {
        throw SchemaError("assignment: non-finite cost");
      }
    }
  }
  if (q < g) {
    throw InfeasibleError("assignment: fewer queries (" + std::to_string(q) +
                          ") than ground truths (" + std::to_string(g) + ")");
  }
  std::vector<int> ids(q);
  std::iota(ids.begin(), ids.end(), 0);
  return result_from_matching(solve_rectangular(cost, g, q), cost, ids);
}

AssignmentResult one_to_one_assign(const QuerySet& qs,
                                   const std::vector<GroundTruth>& gts,
                                   const CostWeights& w, double image_diag,
                                   ClsCost cls_cost) {
  const int g = static_cast<int>(gts.size());
  const int q = static_cast<int>(qs.size());
  if (g == 0) {
    AssignmentResult res;
    for (const auto& query : qs) res.negatives.push_back(query.id);
    std::sort(res.negatives.begin(), res.negatives.end());
    return res;
  }
  if (q < g) {
    throw InfeasibleError(
        "assignment: fewer queries (" + std::to_string(q) +
        ") than ground truths (" + std::to_string(g) +
        "); DQS kept too few - lower the threshold or raise k");
  }
  std::vector<std::vector<double>> cost(g, std::vector<double>(q));
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < q; ++j) {
      cost[i][j] = match_cost(qs[j], gts[i], w, image_diag, cls_cost);
    }
  }
  std::vector<int> ids(q);
  for (int j = 0; j < q; ++j) ids[j] = qs[j].id;
  return result_from_matching(solve_rectangular(cost, g, q), cost, ids);
}

double SoftTargets::target_for(int query_id) const {
  const auto it = std::lower_bound(
      entries.begin(), entries.end(), query_id,
      [](const SoftTarget& e, int id) { return e.query_id < id; });
  if (it != entries.end() && it->query_id == query_id) return it->target;
  return 0.0;
}

SoftTargets soft_one_to_many_assign(const QuerySet& qs,
                                    const std::vector<GroundTruth>& gts,
                                    const CostWeights& w, int k,
                                    double image_diag) {
  if (k < 1) throw SchemaError("assignment: soft assignment requires K >= 1");
  const int q = static_cast<int>(qs.size());
  std::vector<SoftTarget> best(q);  // indexed like qs, target 0 by default
  for (int j = 0; j < q; ++j) best[j].query_id = qs[j].id;

  std::vector<int> order(q);
  for (int gi = 0; gi < static_cast<int>(gts.size()); ++gi) {
    const auto& gt = gts[gi];
    std::vector<double> cost(q);
    for (int j = 0; j < q; ++j) {
      cost[j] = match_cost(qs[j], gt, w, image_diag);
    }
    std::iota(order.begin(), order.end(), 0);
    const int take = std::min(k, q);
    std::partial_sort(order.begin(), order.begin() + take, order.end(),
                      [&](int a, int b) {
                        if (cost[a] != cost[b]) return cost[a] < cost[b];
                        return qs[a].id < qs[b].id;
                      });
    // Targets over the positive set P.
    double max_quality = 0, max_iou = 0;
    std::vector<double> quality(take), iou_val(take);
    for (int t = 0; t < take; ++t) {
      const auto& query = qs[order[t]];
      const double s = query.class_scores[gt.class_id];  // checked by match_cost
      iou_val[t] = iou(query.box, gt.box);
      quality[t] = s * std::pow(iou_val[t], 6.0);
      max_quality = std::max(max_quality, quality[t]);
      max_iou = std::max(max_iou, iou_val[t]);
    }
    if (max_quality <= 0) continue;  // all-zero quality: targets stay 0
    for (int t = 0; t < take; ++t) {
      const double target = quality[t] / max_quality * max_iou;
      auto& slot = best[order[t]];
      if (target > slot.target) {
        slot.target = target;
        slot.gt_index = gi;
      }
    }
  }

  SoftTargets out;
  for (const auto& e : best) {
    if (e.target > 0) out.entries.push_back(e);
  }
  std::sort(out.entries.begin(), out.entries.end(),
            [](const SoftTarget& a, const SoftTarget& b) {
              return a.query_id < b.query_id;
            });
  return out;
}

}  // namespace ddq
