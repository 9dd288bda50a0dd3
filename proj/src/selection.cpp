#include "ddq/selection.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <unordered_set>

#include "ddq/error.hpp"

namespace ddq {
namespace {

bool score_order(const Query& a, const Query& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.id < b.id;
}

}  // namespace

void validate(const QuerySet& qs) {
  std::unordered_set<int> ids;
  ids.reserve(qs.size());
  for (const auto& q : qs) {
    if (!ids.insert(q.id).second) {
      throw SchemaError("selection: duplicate query id " + std::to_string(q.id));
    }
    if (!(q.score >= 0.0 && q.score <= 1.0)) {
      throw SchemaError("selection: query score outside [0,1]");
    }
    if (!q.class_scores.empty()) {
      const double mx =
          *std::max_element(q.class_scores.begin(), q.class_scores.end());
      if (std::abs(mx - q.score) > 1e-12) {
        throw SchemaError("selection: score != max(class_scores)");
      }
    }
  }
}

QuerySet topk_per_level(const QuerySet& qs, int k) {
  if (k < 1) throw SchemaError("selection: topk_per_level requires k >= 1");
  std::map<int, std::vector<std::size_t>> by_level;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    by_level[qs[i].level].push_back(i);
  }
  QuerySet out;
  out.reserve(qs.size());
  for (auto& [level, idx] : by_level) {
    std::sort(idx.begin(), idx.end(), [&qs](std::size_t a, std::size_t b) {
      return score_order(qs[a], qs[b]);
    });
    const std::size_t take = std::min<std::size_t>(idx.size(), k);
    for (std::size_t i = 0; i < take; ++i) out.push_back(qs[idx[i]]);
  }
  return out;
}

QuerySet distinct_query_selection(const QuerySet& qs, double iou_thresh) {
  if (!(iou_thresh > 0.0 && iou_thresh <= 1.0)) {
    throw SchemaError("selection: DQS threshold must lie in (0,1]");
  }
  std::vector<std::size_t> order(qs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&qs](std::size_t a, std::size_t b) {
    return score_order(qs[a], qs[b]);
  });
  QuerySet kept;
  for (std::size_t i : order) {
    bool suppressed = false;
    for (const auto& k : kept) {
      if (iou(qs[i].box, k.box) > iou_thresh) {
        suppressed = true;
        break;
      }
    }
    if (!suppressed) kept.push_back(qs[i]);
  }
  return kept;
}

}  // namespace ddq
