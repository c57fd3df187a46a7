#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "epic/config.h"
#include "epic/pipeline.h"

namespace epic {

// Everything a seeded end-to-end run produces, kept in memory so callers can
// inspect intermediates (the CLI persists them; tests assert on them).
struct BenchArtifacts {
  Layout layout;
  std::vector<Fragment> frags;
  std::vector<FragmentLabel> labels;  // one per fragment, id order
  std::vector<CalibSample> samples;   // raw features joined with labels
  std::vector<std::size_t> calib_idx; // ascending indexes into samples
  std::vector<std::size_t> test_idx;
  MetaModel model;
  CalibDiagnostics diag;

  // Test-split evaluation.
  std::vector<Detection> detections;              // meta decisions
  std::vector<double> test_labels;                // t_litho per test fragment
  std::vector<double> test_scores_meta;
  std::vector<double> test_scores_ann;
  std::vector<double> test_scores_svm;
  std::vector<double> test_scores_pm;
  DetectionReport report_meta, report_ann, report_svm, report_pm;
  std::vector<DetectionReport> sweep_meta, sweep_ann, sweep_svm, sweep_pm;
};

// Deterministic function of (cfg, seed) for any thread count: generate,
// fragment, label, extract, split calibration/test by seeded shuffle,
// calibrate, score the test split with the meta-classifier and each base at
// its own operating threshold, and sweep every trade-off curve.
BenchArtifacts bench_run(const RunConfig& cfg, std::uint64_t seed, int threads);

// Persist the full report suite into a directory (created if needed):
// layout.txt, labels.csv, samples.csv, model.txt, detections.csv,
// report.csv (meta operating point), report_{ann,svm,pm}.csv and
// sweep_{meta,ann,svm,pm}.csv. Byte-deterministic.
void bench_save(const BenchArtifacts& a, const RunConfig& cfg,
                std::uint64_t seed, const std::string& dir);

}  // namespace epic
