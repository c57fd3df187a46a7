#include "epic/metrics.h"

#include <algorithm>

#include "epic/errors.h"

namespace epic {

DetectionReport compute_report(const std::vector<int>& predictions,
                               const std::vector<double>& labels,
                               const PsiWeights& psi, double theta_used) {
  if (predictions.size() != labels.size())
    throw DataError("compute_report: prediction/label size mismatch");
  if (predictions.empty()) throw DataError("compute_report: empty input");

  DetectionReport r;
  r.theta = theta_used;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    if (predictions[i] != 1 && predictions[i] != -1)
      throw DataError("compute_report: predictions must be +-1");
    if (labels[i] != 1.0 && labels[i] != -1.0)
      throw DataError("compute_report: labels must be +-1");
    const bool flagged = predictions[i] == 1;
    const bool hot = labels[i] == 1.0;
    if (hot) ++r.actual;
    if (flagged && hot) ++r.hit;
    if (flagged && !hot) ++r.extra;
  }
  if (r.actual > 0) {
    r.accuracy = static_cast<double>(r.hit) / static_cast<double>(r.actual);
    r.false_alarm_ratio =
        static_cast<double>(r.extra) / static_cast<double>(r.actual);
  } else {
    // Nothing to find: perfect recall by convention, raw extras as the ratio.
    r.degenerate = true;
    r.accuracy = 1.0;
    r.false_alarm_ratio = static_cast<double>(r.extra);
  }
  r.psi = psi.alpha * r.accuracy + psi.beta * r.false_alarm_ratio;
  return r;
}

std::vector<DetectionReport> sweep_tradeoff(const std::vector<double>& scores,
                                            const std::vector<double>& labels,
                                            const std::vector<double>& theta_grid,
                                            const PsiWeights& psi) {
  if (scores.size() != labels.size())
    throw DataError("sweep_tradeoff: score/label size mismatch");
  std::vector<double> grid = theta_grid;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<DetectionReport> rows;
  rows.reserve(grid.size());
  std::vector<int> pred(scores.size());
  for (double theta : grid) {
    for (std::size_t i = 0; i < scores.size(); ++i)
      pred[i] = scores[i] >= theta ? 1 : -1;
    rows.push_back(compute_report(pred, labels, psi, theta));
  }
  return rows;
}

}  // namespace epic
