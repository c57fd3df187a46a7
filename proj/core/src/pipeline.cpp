#include "epic/pipeline.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "epic/errors.h"
#include "epic/parallel.h"

namespace epic {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

std::vector<double> threshold_grid(std::vector<double> scores, int grid_size) {
  std::sort(scores.begin(), scores.end());
  std::vector<double> cand;
  cand.push_back(-kInf);
  if (!scores.empty()) {
    const int g = std::max(1, grid_size);
    for (int i = 0; i < g; ++i) {
      const std::size_t idx = std::min(
          scores.size() - 1,
          static_cast<std::size_t>(static_cast<double>(i) *
                                   static_cast<double>(scores.size()) /
                                   static_cast<double>(g)));
      cand.push_back(scores[idx]);
    }
    cand.push_back(scores.back());
  }
  cand.push_back(kInf);
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  return cand;
}

ThresholdChoice select_threshold(const std::vector<double>& scores,
                                 const std::vector<double>& labels,
                                 const PsiWeights& psi, int grid_size) {
  if (scores.size() != labels.size())
    throw DataError("select_threshold: score/label size mismatch");
  if (scores.empty()) throw DataError("select_threshold: empty input");

  bool any_hot = false;
  for (double l : labels) any_hot = any_hot || l == 1.0;
  if (!any_hot) return {kInf, 0.0, true};

  // Degenerate quality weights collapse the sweep to a sentinel.
  if (psi.alpha == 0.0) return {kInf, 0.0, false};
  if (psi.beta == 0.0) return {-kInf, psi.alpha, false};

  const std::vector<double> cand = threshold_grid(scores, grid_size);
  const std::vector<DetectionReport> rows =
      sweep_tradeoff(scores, labels, cand, psi);
  std::size_t best = 0;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].psi >= rows[best].psi) best = i;  // ties -> larger theta
  return {rows[best].theta, rows[best].psi, false};
}

MetaCalibResult calibrate_meta(const BaseOutputs& outputs,
                               const std::vector<int>& l_per_base,
                               double lambda0_init, const QpSolveConfig& qp_cfg) {
  MetaCalibResult res;
  res.problem = adjust_lambda0(
      [&](double l0) { return qp_assemble(outputs, l_per_base, l0); },
      lambda0_init);
  res.lambda0 = res.problem.lambda0;
  res.qp = solve_qp(res.problem, qp_cfg);

  std::vector<double> x = res.qp.x;
  // Levels no calibration sample ever activated carry no data term; their
  // optimum is the anchor value 1 (exactly, when lambda0 > 0; by convention
  // when lambda0 == 0). Snap to remove solver tolerance noise.
  for (std::size_t i = 0; i < x.size(); ++i)
    if (res.problem.level_counts[i] == 0) x[i] = 1.0;
  res.weighting = weights_from_solution(res.problem, x);
  return res;
}

MetaModel calibrate(const std::vector<CalibSample>& raw_samples,
                    const CalibConfig& cfg, CalibDiagnostics* diag) {
  if (raw_samples.empty()) throw DataError("calibrate: empty sample set");
  if (cfg.l_per_base.size() != 3)
    throw DataError("calibrate: expected level counts for exactly 3 bases");
  bool has_pos = false, has_neg = false;
  for (const CalibSample& s : raw_samples) {
    if (s.features.normalized)
      throw DataError("calibrate: samples must carry raw features");
    if (s.t_litho == 1.0) has_pos = true;
    if (s.t_litho == -1.0) has_neg = true;
  }
  if (!has_pos || !has_neg)
    throw DataError("calibrate: calibration set has a single class");

  MetaModel m;
  m.psi = cfg.psi;
  m.theta_grid = cfg.theta_grid;

  std::vector<CalibSample> normalized = normalize_dataset(raw_samples, &m.norm);

  AnnTrainResult ann_res = ann_train(normalized, cfg.ann);
  m.ann = std::move(ann_res.model);
  m.ann.norm = m.norm;

  SvmTrainResult svm_res = svm_train(normalized, cfg.svm);
  m.svm = std::move(svm_res.model);
  m.svm.norm = m.norm;

  std::vector<CalibSample> hotspots;
  for (const CalibSample& s : raw_samples)
    if (s.t_litho == 1.0) hotspots.push_back(s);
  m.pm = pm_build_library(hotspots, cfg.pm);

  const int n = static_cast<int>(raw_samples.size());
  BaseOutputs outputs;
  outputs.rows = n;
  outputs.cols = 3;
  outputs.x.assign(static_cast<std::size_t>(n) * 3, 0.0);
  outputs.t.resize(static_cast<std::size_t>(n));
  parallel_for(static_cast<std::size_t>(n), cfg.threads, [&](std::size_t i) {
    outputs.x[i * 3 + 0] = ann_raw_score(m.ann, normalized[i].features.values);
    outputs.x[i * 3 + 1] = svm_raw_score(m.svm, normalized[i].features.values);
    outputs.x[i * 3 + 2] =
        static_cast<double>(pm_match(m.pm, raw_samples[i].features));
    outputs.t[i] = raw_samples[i].t_litho;
  });

  MetaCalibResult meta =
      calibrate_meta(outputs, cfg.l_per_base, cfg.lambda0_init, cfg.qp);
  m.weighting = meta.weighting;
  m.lambda0 = meta.lambda0;

  std::vector<double> meta_scores(static_cast<std::size_t>(n));
  std::vector<double> ann_scores(static_cast<std::size_t>(n));
  std::vector<double> svm_scores(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    meta_scores[static_cast<std::size_t>(i)] =
        meta_score(m.weighting, &outputs.x[static_cast<std::size_t>(i) * 3]);
    ann_scores[static_cast<std::size_t>(i)] = outputs.at(i, 0);
    svm_scores[static_cast<std::size_t>(i)] = outputs.at(i, 1);
  }

  const ThresholdChoice tc =
      select_threshold(meta_scores, outputs.t, cfg.psi, cfg.theta_grid);
  m.theta = tc.theta;
  // Standalone operating points for the bases, same psi sweep.
  m.ann.threshold =
      select_threshold(ann_scores, outputs.t, cfg.psi, cfg.theta_grid).theta;
  m.svm.threshold =
      select_threshold(svm_scores, outputs.t, cfg.psi, cfg.theta_grid).theta;

  if (diag) {
    diag->calib_outputs = std::move(outputs);
    diag->meta_scores = std::move(meta_scores);
    diag->qp = std::move(meta.qp);
    diag->mse_meta = 0.0;
    for (int i = 0; i < n; ++i) {
      const double r = diag->meta_scores[static_cast<std::size_t>(i)] -
                       diag->calib_outputs.t[static_cast<std::size_t>(i)];
      diag->mse_meta += r * r;
    }
    diag->mse_meta /= static_cast<double>(n);
    diag->svm_converged = svm_res.converged;
    diag->svm_kkt = svm_res.kkt_residual;
    diag->ann_loss_trace = std::move(ann_res.loss_trace);
    diag->theta_choice = tc;
  }
  return m;
}

void base_outputs_row(const MetaModel& m, const FeatureVector& raw,
                      double* out3) {
  FeatureVector norm = raw;
  apply_norm(m.norm, norm);
  out3[0] = ann_raw_score(m.ann, norm.values);
  out3[1] = svm_raw_score(m.svm, norm.values);
  out3[2] = static_cast<double>(pm_match(m.pm, raw));
}

std::vector<Detection> predict(const MetaModel& m,
                               const std::vector<FeatureVector>& raw_features,
                               int threads) {
  for (std::size_t i = 1; i < raw_features.size(); ++i)
    if (raw_features[i - 1].fragment_id >= raw_features[i].fragment_id)
      throw DataError("predict: features must be sorted by fragment id");
  std::vector<Detection> out(raw_features.size());
  parallel_for(raw_features.size(), threads, [&](std::size_t i) {
    double row[3];
    base_outputs_row(m, raw_features[i], row);
    const double score = meta_score(m.weighting, row);
    out[i] = Detection{raw_features[i].fragment_id, meta_decide(score, m.theta),
                       score};
  });
  return out;
}

std::vector<WeightingFunction> make_unit_weighting(
    int base_index, const std::vector<int>& l_per_base) {
  if (base_index < 0 || base_index >= static_cast<int>(l_per_base.size()))
    throw DataError("make_unit_weighting: base index out of range");
  std::vector<WeightingFunction> out;
  for (std::size_t k = 0; k < l_per_base.size(); ++k) {
    WeightingFunction w;
    w.base_index = static_cast<int>(k);
    w.levels.assign(static_cast<std::size_t>(l_per_base[k]),
                    static_cast<int>(k) == base_index ? 1.0 : 0.0);
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<WeightingFunction> make_static_hybrid(
    const std::vector<int>& l_per_base) {
  if (l_per_base.size() != 3)
    throw DataError("make_static_hybrid: expects 3 bases");
  std::vector<WeightingFunction> out;
  const double tops[3] = {0.5, 0.5, 1.0};
  for (std::size_t k = 0; k < 3; ++k) {
    WeightingFunction w;
    w.base_index = static_cast<int>(k);
    w.levels.assign(static_cast<std::size_t>(l_per_base[k]), 0.0);
    w.levels.back() = tops[k];
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace epic
