#pragma once

#include <cstdint>
#include <vector>

namespace epic {

struct PsiWeights {
  double alpha = 1.0;
  double beta = -0.02;  // false alarms priced in hotspot units
};

struct DetectionReport {
  double theta = 0.0;
  std::int64_t hit = 0;     // flagged actual hotspots
  std::int64_t extra = 0;   // flagged non-hotspots
  std::int64_t actual = 0;  // labeled hotspots
  double accuracy = 0.0;           // hit / actual
  double false_alarm_ratio = 0.0;  // extra / actual ("X times" unit)
  double psi = 0.0;                // alpha*accuracy + beta*ratio
  bool degenerate = false;         // no actual hotspots in the label set
};

// Count-based quality report. With no actual hotspots the report is flagged
// degenerate: accuracy 1, ratio = extra.
DetectionReport compute_report(const std::vector<int>& predictions,
                               const std::vector<double>& labels,
                               const PsiWeights& psi, double theta_used);

// One report per threshold (grid sorted ascending, deduplicated): flags are
// score >= theta. Raising theta only removes flags, so both accuracy and
// false-alarm columns are non-increasing.
std::vector<DetectionReport> sweep_tradeoff(const std::vector<double>& scores,
                                            const std::vector<double>& labels,
                                            const std::vector<double>& theta_grid,
                                            const PsiWeights& psi);

}  // namespace epic
