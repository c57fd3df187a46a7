// Microbenchmarks for the hot paths: aerial intensity sums, EPE bisection,
// window feature extraction, base-learner scoring, the weighting-fit QP, and
// pattern-library matching. Shared fixtures are built once per process.

#include <cstdint>
#include <vector>

#include <benchmark/benchmark.h>

#include "epic/ann.h"
#include "epic/config.h"
#include "epic/features.h"
#include "epic/geometry.h"
#include "epic/meta.h"
#include "epic/oracle.h"
#include "epic/pattern_matcher.h"
#include "epic/pipeline.h"
#include "epic/qp.h"
#include "epic/rng.h"
#include "epic/svm.h"

namespace {

using namespace epic;

struct Scene {
  Layout layout;
  RectIndex index;
  std::vector<Fragment> frags;
  std::vector<FeatureVector> feats;
  std::vector<CalibSample> normalized;
  NormParams norm;
  AnnModel ann;
  SvmModel svm;
  PmLibrary pm;

  Scene() : layout(make_layout()), index(layout) {
    const RunConfig cfg;
    frags = fragment_layout(layout, cfg.frag_len);
    feats = extract_all(layout, frags, cfg.features, 1);

    // Labels cheap enough for a fixture: alternate so both classes exist.
    std::vector<CalibSample> samples(feats.size());
    std::vector<CalibSample> hotspots;
    for (std::size_t i = 0; i < feats.size(); ++i) {
      samples[i].features = feats[i];
      samples[i].t_litho = i % 7 == 0 ? 1.0 : -1.0;
      if (samples[i].t_litho > 0) hotspots.push_back(samples[i]);
    }
    pm = pm_build_library(hotspots, PmConfig{});
    normalized = normalize_dataset(samples, &norm);

    AnnTrainConfig acfg;
    acfg.epochs = 30;  // fixture model only; speed over fit quality
    ann = ann_train(normalized, acfg).model;
    SvmTrainConfig scfg;
    scfg.max_passes = 20;
    svm = svm_train(normalized, scfg).model;
  }

  static Layout make_layout() {
    GenConfig g;
    g.rect_count = 120;
    g.width = 24000;
    g.height = 24000;
    return generate_layout(7, g);
  }
};

const Scene& scene() {
  static const Scene* s = new Scene;
  return *s;
}

void BM_AerialIntensity(benchmark::State& state) {
  const Scene& s = scene();
  const OracleConfig cfg;
  double x = 2000.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        aerial_intensity(s.layout, s.index, x, 12000.0, cfg));
    x += 17.0;
    if (x > 22000.0) x = 2000.0;
  }
}
BENCHMARK(BM_AerialIntensity);

void BM_SimulateEpe(benchmark::State& state) {
  const Scene& s = scene();
  const OracleConfig cfg;
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        simulate_epe(s.layout, s.index, s.frags[i], cfg));
    i = (i + 1) % s.frags.size();
  }
}
BENCHMARK(BM_SimulateEpe);

void BM_ExtractFeatures(benchmark::State& state) {
  const Scene& s = scene();
  const FeatureConfig cfg;
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        extract_features(s.layout, s.index, s.frags[i], cfg));
    i = (i + 1) % s.frags.size();
  }
}
BENCHMARK(BM_ExtractFeatures);

void BM_AnnScore(benchmark::State& state) {
  const Scene& s = scene();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ann_raw_score(s.ann, s.normalized[i].features.values));
    i = (i + 1) % s.normalized.size();
  }
}
BENCHMARK(BM_AnnScore);

void BM_SvmScore(benchmark::State& state) {
  const Scene& s = scene();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        svm_raw_score(s.svm, s.normalized[i].features.values));
    i = (i + 1) % s.normalized.size();
  }
}
BENCHMARK(BM_SvmScore);

void BM_PmMatch(benchmark::State& state) {
  const Scene& s = scene();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pm_match(s.pm, s.feats[i]));
    i = (i + 1) % s.feats.size();
  }
}
BENCHMARK(BM_PmMatch);

void BM_QpSolve(benchmark::State& state) {
  // A realistic weighting-fit instance: three bases, 8/8/2 levels, 2000 rows.
  Rng rng(derive_seed(2026, 0xBE7C));
  BaseOutputs o;
  o.rows = 2000;
  o.cols = 3;
  for (int i = 0; i < o.rows; ++i) {
    for (int k = 0; k < o.cols; ++k) o.x.push_back(rng.uniform_real(-1.0, 1.0));
    o.t.push_back(rng.uniform_int(0, 1) == 0 ? -1.0 : 1.0);
  }
  const QpProblem p = qp_assemble(o, {8, 8, 2}, 1e-5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_qp(p, QpSolveConfig{}));
  }
}
BENCHMARK(BM_QpSolve);

void BM_QpAssemble(benchmark::State& state) {
  Rng rng(derive_seed(2026, 0xBE7D));
  BaseOutputs o;
  o.rows = 2000;
  o.cols = 3;
  for (int i = 0; i < o.rows; ++i) {
    for (int k = 0; k < o.cols; ++k) o.x.push_back(rng.uniform_real(-1.0, 1.0));
    o.t.push_back(rng.uniform_int(0, 1) == 0 ? -1.0 : 1.0);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(qp_assemble(o, {8, 8, 2}, 1e-5));
  }
}
BENCHMARK(BM_QpAssemble);

}  // namespace

BENCHMARK_MAIN();
