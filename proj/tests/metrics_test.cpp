// Detection metrics: hit/extra accounting fixtures, the figure-of-merit
// arithmetic, degenerate label sets, and the threshold sweep checked
// against a brute-force recount oracle.

#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "epic/errors.h"
#include "epic/metrics.h"
#include "epic/rng.h"

namespace {

using namespace epic;

std::vector<int> predictions_from(const std::vector<double>& scores,
                                  double theta) {
  std::vector<int> out;
  out.reserve(scores.size());
  for (double s : scores) out.push_back(s >= theta ? 1 : -1);
  return out;
}

// hits hot of them, plus extras false alarms, over a fixed population.
void build_case(int actual, int hit, int extra, int cold,
                std::vector<int>* preds, std::vector<double>* labels) {
  preds->clear();
  labels->clear();
  for (int i = 0; i < actual; ++i) {
    labels->push_back(1.0);
    preds->push_back(i < hit ? 1 : -1);
  }
  for (int i = 0; i < cold; ++i) {
    labels->push_back(-1.0);
    preds->push_back(i < extra ? 1 : -1);
  }
}

TEST(Metrics, PerfectRecallFixture) {
  std::vector<int> preds;
  std::vector<double> labels;
  build_case(9, 9, 48, 500, &preds, &labels);
  const DetectionReport r = compute_report(preds, labels, PsiWeights{}, 0.0);
  EXPECT_EQ(r.hit, 9);
  EXPECT_EQ(r.actual, 9);
  EXPECT_EQ(r.extra, 48);
  EXPECT_DOUBLE_EQ(r.accuracy, 1.0);
  EXPECT_DOUBLE_EQ(r.false_alarm_ratio, 48.0 / 9.0);
  EXPECT_FALSE(r.degenerate);
}

TEST(Metrics, PartialRecallFixture) {
  std::vector<int> preds;
  std::vector<double> labels;
  build_case(9, 6, 0, 100, &preds, &labels);
  const DetectionReport r = compute_report(preds, labels, PsiWeights{}, 0.0);
  EXPECT_DOUBLE_EQ(r.accuracy, 6.0 / 9.0);  // prints as 0.667
  EXPECT_NEAR(r.accuracy, 0.667, 5e-4);
  EXPECT_DOUBLE_EQ(r.false_alarm_ratio, 0.0);
}

TEST(Metrics, FalseAlarmRatioUnits) {
  // extra = 5 x actual reads as exactly "5X".
  std::vector<int> preds;
  std::vector<double> labels;
  build_case(10, 10, 50, 200, &preds, &labels);
  EXPECT_DOUBLE_EQ(
      compute_report(preds, labels, PsiWeights{}, 0.0).false_alarm_ratio, 5.0);
  build_case(10, 10, 100, 200, &preds, &labels);
  EXPECT_DOUBLE_EQ(
      compute_report(preds, labels, PsiWeights{}, 0.0).false_alarm_ratio, 10.0);
  build_case(10, 10, 320, 400, &preds, &labels);
  EXPECT_DOUBLE_EQ(
      compute_report(preds, labels, PsiWeights{}, 0.0).false_alarm_ratio, 32.0);
}

TEST(Metrics, FigureOfMeritArithmetic) {
  std::vector<int> preds;
  std::vector<double> labels;
  build_case(10, 8, 15, 100, &preds, &labels);
  PsiWeights psi;
  psi.alpha = 1.0;
  psi.beta = -0.02;
  const DetectionReport r = compute_report(preds, labels, psi, 0.25);
  EXPECT_DOUBLE_EQ(r.accuracy, 0.8);
  EXPECT_DOUBLE_EQ(r.false_alarm_ratio, 1.5);
  EXPECT_DOUBLE_EQ(r.psi, 1.0 * 0.8 + (-0.02) * 1.5);
  EXPECT_DOUBLE_EQ(r.theta, 0.25);
  // Custom weights flow through linearly.
  PsiWeights other;
  other.alpha = 2.0;
  other.beta = -0.1;
  EXPECT_DOUBLE_EQ(compute_report(preds, labels, other, 0.25).psi,
                   2.0 * 0.8 - 0.1 * 1.5);
}

TEST(Metrics, DegenerateNoHotspots) {
  std::vector<int> preds{1, -1, 1};
  std::vector<double> labels{-1.0, -1.0, -1.0};
  const DetectionReport r = compute_report(preds, labels, PsiWeights{}, 0.0);
  EXPECT_TRUE(r.degenerate);
  EXPECT_EQ(r.actual, 0);
  EXPECT_EQ(r.extra, 2);
  EXPECT_DOUBLE_EQ(r.accuracy, 1.0);
  EXPECT_DOUBLE_EQ(r.false_alarm_ratio, 2.0);  // per-hotspot unit undefined
}

TEST(Metrics, LengthMismatchThrows) {
  EXPECT_THROW(
      compute_report({1, -1}, {1.0}, PsiWeights{}, 0.0), DataError);
}

TEST(Metrics, BadLabelThrows) {
  EXPECT_THROW(
      compute_report({1, -1}, {1.0, 0.5}, PsiWeights{}, 0.0), DataError);
}

TEST(Metrics, HitNeverExceedsActual) {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> preds;
    std::vector<double> labels;
    for (int i = 0; i < 200; ++i) {
      preds.push_back(rng.uniform_int(0, 1) == 0 ? -1 : 1);
      labels.push_back(rng.uniform_int(0, 4) == 0 ? 1.0 : -1.0);
    }
    const DetectionReport r = compute_report(preds, labels, PsiWeights{}, 0.0);
    int actual = 0;
    for (double l : labels) actual += l > 0;
    ASSERT_EQ(r.actual, actual);
    ASSERT_LE(r.hit, r.actual);
    ASSERT_LE(r.extra, static_cast<int>(labels.size()) - actual);
  }
}

TEST(Metrics, SweepEndpointsAndMonotonicity) {
  Rng rng(11);
  std::vector<double> scores, labels;
  for (int i = 0; i < 300; ++i) {
    scores.push_back(rng.uniform_real(-1.0, 1.0));
    labels.push_back(rng.uniform_int(0, 5) == 0 ? 1.0 : -1.0);
  }
  int actual = 0;
  for (double l : labels) actual += l > 0;
  const int cold = static_cast<int>(labels.size()) - actual;
  std::vector<double> grid{-std::numeric_limits<double>::infinity(), -2.0,
                           -0.5, 0.0, 0.5, 2.0,
                           std::numeric_limits<double>::infinity()};
  const auto rows = sweep_tradeoff(scores, labels, grid, PsiWeights{});
  ASSERT_EQ(rows.size(), grid.size());
  // Theta below every score flags everything: accuracy 1, all cold
  // fragments are extras.
  EXPECT_DOUBLE_EQ(rows.front().accuracy, 1.0);
  EXPECT_DOUBLE_EQ(rows.front().false_alarm_ratio,
                   static_cast<double>(cold) / actual);
  // Theta above every score flags nothing.
  EXPECT_DOUBLE_EQ(rows.back().accuracy, 0.0);
  EXPECT_DOUBLE_EQ(rows.back().false_alarm_ratio, 0.0);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    ASSERT_LE(rows[i].accuracy, rows[i - 1].accuracy + 1e-15);
    ASSERT_LE(rows[i].false_alarm_ratio,
              rows[i - 1].false_alarm_ratio + 1e-15);
  }
}

TEST(Metrics, SweepRowsMatchIndependentRecount) {
  Rng rng(23);
  std::vector<double> scores, labels;
  for (int i = 0; i < 400; ++i) {
    scores.push_back(rng.uniform_real(-1.0, 1.0));
    labels.push_back(rng.uniform_int(0, 7) == 0 ? 1.0 : -1.0);
  }
  std::vector<double> grid;
  for (int i = 0; i <= 40; ++i) grid.push_back(-1.0 + 2.0 * i / 40.0);
  const PsiWeights psi;
  const auto rows = sweep_tradeoff(scores, labels, grid, psi);
  ASSERT_EQ(rows.size(), grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g) {
    // Brute-force recount at this threshold.
    int hit = 0, extra = 0, actual = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      const bool flag = scores[i] >= grid[g];
      if (labels[i] > 0) {
        ++actual;
        hit += flag;
      } else {
        extra += flag;
      }
    }
    ASSERT_EQ(rows[g].hit, hit);
    ASSERT_EQ(rows[g].extra, extra);
    ASSERT_EQ(rows[g].actual, actual);
    ASSERT_DOUBLE_EQ(rows[g].theta, grid[g]);
    // And the row equals an independent compute_report call.
    const DetectionReport direct =
        compute_report(predictions_from(scores, grid[g]), labels, psi, grid[g]);
    ASSERT_DOUBLE_EQ(rows[g].accuracy, direct.accuracy);
    ASSERT_DOUBLE_EQ(rows[g].false_alarm_ratio, direct.false_alarm_ratio);
    ASSERT_DOUBLE_EQ(rows[g].psi, direct.psi);
  }
}

TEST(Metrics, SweepSizeMismatchThrows) {
  EXPECT_THROW(sweep_tradeoff({0.1, 0.2}, {1.0}, {0.0}, PsiWeights{}),
               DataError);
}

}  // namespace
