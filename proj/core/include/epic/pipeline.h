#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "epic/ann.h"
#include "epic/features.h"
#include "epic/meta.h"
#include "epic/metrics.h"
#include "epic/oracle.h"
#include "epic/pattern_matcher.h"
#include "epic/qp.h"
#include "epic/svm.h"

namespace epic {

struct CalibConfig {
  AnnTrainConfig ann;
  SvmTrainConfig svm;
  PmConfig pm;
  std::vector<int> l_per_base{8, 8, 2};  // ANN, SVM, PM level counts
  double lambda0_init = 1e-5;
  QpSolveConfig qp;
  PsiWeights psi;
  int theta_grid = 512;
  int threads = 1;
};

// Everything needed to score fragments later, self-contained.
struct MetaModel {
  FeatureConfig features;
  std::int64_t frag_len = 100;
  OracleConfig oracle;  // provenance: the labeling settings this model fits
  HotspotClass target = HotspotClass::kC0;
  NormParams norm;
  AnnModel ann;
  SvmModel svm;
  PmLibrary pm;
  std::vector<WeightingFunction> weighting;
  double theta = 0.0;
  double lambda0 = 0.0;  // final (possibly escalated) anchor weight
  PsiWeights psi;
  int theta_grid = 512;
};

struct ThresholdChoice {
  double theta = 0.0;
  double psi = 0.0;
  bool degenerate_labels = false;  // no hotspots in the label set
};

struct CalibDiagnostics {
  BaseOutputs calib_outputs;
  std::vector<double> meta_scores;
  QpSolution qp;
  double mse_meta = 0.0;
  bool svm_converged = true;
  double svm_kkt = 0.0;
  std::vector<double> ann_loss_trace;
  ThresholdChoice theta_choice;
};

struct MetaCalibResult {
  std::vector<WeightingFunction> weighting;
  double lambda0 = 0.0;
  QpSolution qp;
  QpProblem problem;
};

struct Detection {
  std::int64_t fragment_id = 0;
  int t_meta = -1;
  double score = 0.0;
};

// Candidate thresholds for a sweep: up to grid_size score quantiles, the
// maximum score, and the +-inf sentinels; ascending, deduplicated (at most
// grid_size + 3 values).
std::vector<double> threshold_grid(std::vector<double> scores, int grid_size);

// Threshold selection by sweeping candidate thetas (score quantiles plus
// +-inf sentinels) and maximizing psi; ties resolve toward the larger theta.
// Degenerate psi weights short-circuit: alpha = 0 -> +inf (flag nothing),
// else beta = 0 -> -inf (flag everything). No hotspot labels -> +inf with
// the degenerate flag set.
ThresholdChoice select_threshold(const std::vector<double>& scores,
                                 const std::vector<double>& labels,
                                 const PsiWeights& psi, int grid_size);

// QP + weighting stage alone (injectable base outputs, used by tests too):
// assemble at lambda0_init, escalate until positive definite, solve, slice
// into weighting functions. Levels that never activate snap to weight 1
// (the anchor optimum; the convention for lambda0 = 0).
MetaCalibResult calibrate_meta(const BaseOutputs& outputs,
                               const std::vector<int>& l_per_base,
                               double lambda0_init, const QpSolveConfig& qp_cfg);

// Full calibration: normalize, train the three bases, compute calibration
// base outputs, fit the weighting via the QP, pick per-base thresholds and
// the meta threshold by psi sweep. Samples must carry raw features.
MetaModel calibrate(const std::vector<CalibSample>& raw_samples,
                    const CalibConfig& cfg, CalibDiagnostics* diag = nullptr);

// Base outputs [ann, svm, pm] for one raw feature vector under a model.
void base_outputs_row(const MetaModel& m, const FeatureVector& raw,
                      double* out3);

// Score a stream of raw feature vectors (must be sorted by fragment id).
// Deterministic for any thread count.
std::vector<Detection> predict(const MetaModel& m,
                               const std::vector<FeatureVector>& raw_features,
                               int threads);

// All-weight-one vector for a single base, zeros elsewhere: the meta score
// then equals that base's raw output.
std::vector<WeightingFunction> make_unit_weighting(
    int base_index, const std::vector<int>& l_per_base);

// Fixed-weight hybrid: top level 0.5 for each ML base, 1.0 for the matcher,
// decision threshold kStaticHybridTheta.
std::vector<WeightingFunction> make_static_hybrid(
    const std::vector<int>& l_per_base);
inline constexpr double kStaticHybridTheta = 1.0;

}  // namespace epic
