#include "epic/bench.h"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "epic/errors.h"
#include "epic/model_io.h"
#include "epic/parallel.h"
#include "epic/rng.h"

namespace epic {

namespace {

constexpr std::uint64_t kSplitTag = 0x73706C6974;  // "split"

std::vector<int> decide_all(const std::vector<double>& scores, double theta) {
  std::vector<int> out(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i)
    out[i] = meta_decide(scores[i], theta);
  return out;
}

}  // namespace

BenchArtifacts bench_run(const RunConfig& cfg, std::uint64_t seed, int threads) {
  BenchArtifacts a;
  a.layout = generate_layout(seed, cfg.gen);
  validate_layout(a.layout);
  a.frags = fragment_layout(a.layout, cfg.frag_len);
  a.labels = label_fragments(a.layout, a.frags, cfg.oracle, cfg.target, threads);

  std::vector<FeatureVector> feats =
      extract_all(a.layout, a.frags, cfg.features, threads);
  if (feats.size() != a.labels.size())
    throw DataError("bench: feature/label count mismatch");
  a.samples.resize(feats.size());
  for (std::size_t i = 0; i < feats.size(); ++i) {
    if (feats[i].fragment_id != a.labels[i].fragment_id)
      throw DataError("bench: feature/label id mismatch");
    a.samples[i].features = std::move(feats[i]);
    a.samples[i].t_litho = a.labels[i].t_litho;
  }

  const std::size_t n = a.samples.size();
  if (n < 2) throw DataError("bench: need at least 2 fragments to split");
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  Rng rng(derive_seed(seed, kSplitTag));
  for (std::size_t i = n - 1; i > 0; --i) {
    const std::size_t j = static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(i)));
    std::swap(idx[i], idx[j]);
  }
  std::size_t calib_count = static_cast<std::size_t>(
      std::llround(cfg.calib_fraction * static_cast<double>(n)));
  calib_count = std::min(n - 1, std::max<std::size_t>(1, calib_count));
  a.calib_idx.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(calib_count));
  a.test_idx.assign(idx.begin() + static_cast<std::ptrdiff_t>(calib_count), idx.end());
  std::sort(a.calib_idx.begin(), a.calib_idx.end());
  std::sort(a.test_idx.begin(), a.test_idx.end());

  std::vector<CalibSample> calib;
  calib.reserve(a.calib_idx.size());
  for (std::size_t i : a.calib_idx) calib.push_back(a.samples[i]);

  a.model = calibrate(calib, make_calib_config(cfg, seed, threads), &a.diag);
  a.model.features = cfg.features;
  a.model.frag_len = cfg.frag_len;
  a.model.oracle = cfg.oracle;
  a.model.target = cfg.target;

  std::vector<FeatureVector> test_feats;
  test_feats.reserve(a.test_idx.size());
  for (std::size_t i : a.test_idx) test_feats.push_back(a.samples[i].features);
  a.detections = predict(a.model, test_feats, threads);

  const std::size_t nt = a.test_idx.size();
  a.test_labels.resize(nt);
  a.test_scores_meta.resize(nt);
  a.test_scores_ann.resize(nt);
  a.test_scores_svm.resize(nt);
  a.test_scores_pm.resize(nt);
  parallel_for(nt, threads, [&](std::size_t i) {
    double row[3];
    base_outputs_row(a.model, test_feats[i], row);
    a.test_scores_ann[i] = row[0];
    a.test_scores_svm[i] = row[1];
    a.test_scores_pm[i] = row[2];
    a.test_scores_meta[i] = a.detections[i].score;
    a.test_labels[i] = a.samples[a.test_idx[i]].t_litho;
  });

  a.report_meta = compute_report(decide_all(a.test_scores_meta, a.model.theta),
                                 a.test_labels, cfg.psi, a.model.theta);
  a.report_ann =
      compute_report(decide_all(a.test_scores_ann, a.model.ann.threshold),
                     a.test_labels, cfg.psi, a.model.ann.threshold);
  a.report_svm =
      compute_report(decide_all(a.test_scores_svm, a.model.svm.threshold),
                     a.test_labels, cfg.psi, a.model.svm.threshold);
  a.report_pm = compute_report(decide_all(a.test_scores_pm, 0.0), a.test_labels,
                               cfg.psi, 0.0);

  a.sweep_meta = sweep_tradeoff(
      a.test_scores_meta, a.test_labels,
      threshold_grid(a.test_scores_meta, cfg.theta_grid), cfg.psi);
  a.sweep_ann = sweep_tradeoff(a.test_scores_ann, a.test_labels,
                               threshold_grid(a.test_scores_ann, cfg.theta_grid),
                               cfg.psi);
  a.sweep_svm = sweep_tradeoff(a.test_scores_svm, a.test_labels,
                               threshold_grid(a.test_scores_svm, cfg.theta_grid),
                               cfg.psi);
  a.sweep_pm = sweep_tradeoff(a.test_scores_pm, a.test_labels,
                              threshold_grid(a.test_scores_pm, cfg.theta_grid),
                              cfg.psi);
  return a;
}

void bench_save(const BenchArtifacts& a, const RunConfig& cfg,
                std::uint64_t seed, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(fs::path(dir), ec);
  if (ec) throw DataError("bench: cannot create directory '" + dir + "'");
  const auto at = [&](const char* name) {
    return (fs::path(dir) / name).string();
  };

  save_layout(a.layout, cfg, at("layout.txt"));
  save_labels(a.labels, cfg, at("labels.csv"));
  save_samples(a.samples, cfg, at("samples.csv"));

  ModelFile mf;
  mf.prng = kPrngName;
  mf.seed = seed;
  mf.config = config_echo(cfg);
  mf.model = a.model;
  save_model(mf, at("model.txt"));

  save_detections(a.detections, cfg, at("detections.csv"));
  save_reports({a.report_meta}, cfg, at("report.csv"));
  save_reports({a.report_ann}, cfg, at("report_ann.csv"));
  save_reports({a.report_svm}, cfg, at("report_svm.csv"));
  save_reports({a.report_pm}, cfg, at("report_pm.csv"));
  save_reports(a.sweep_meta, cfg, at("sweep_meta.csv"));
  save_reports(a.sweep_ann, cfg, at("sweep_ann.csv"));
  save_reports(a.sweep_svm, cfg, at("sweep_svm.csv"));
  save_reports(a.sweep_pm, cfg, at("sweep_pm.csv"));
}

}  // namespace epic
