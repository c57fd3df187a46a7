#include "cli.h"

#include <cstdint>
#include <iostream>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "epic/bench.h"
#include "epic/errors.h"
#include "epic/model_io.h"
#include "epic/rng.h"
#include "epic/text_io.h"

namespace epic {

namespace {

struct CommonFlags {
  std::uint64_t seed = 1;
  std::vector<std::string> config_files;
  std::vector<std::string> sets;  // key=value overrides
  int threads = 1;
  std::string out;
};

void add_common(CLI::App* sub, CommonFlags& c, bool out_required = true) {
  sub->add_option("--seed", c.seed, "Run seed (all derived streams fan out from it)");
  sub->add_option("--config", c.config_files, "Config file of 'key value' lines")
      ->check(CLI::ExistingFile);
  sub->add_option("--set", c.sets, "Inline config override key=value");
  sub->add_option("--threads", c.threads, "Worker thread cap")
      ->check(CLI::PositiveNumber);
  CLI::Option* out = sub->add_option("--out", c.out, "Output path");
  if (out_required) out->required();
}

RunConfig build_config(const CommonFlags& c) {
  RunConfig cfg;
  for (const std::string& f : c.config_files) config_apply_file(cfg, f);
  for (const std::string& s : c.sets) {
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos || eq == 0)
      throw DataError("--set expects key=value, got '" + s + "'");
    config_apply(cfg, s.substr(0, eq), s.substr(eq + 1));
  }
  return cfg;
}

// Features and labels for a layout under the run config, joined by id.
std::vector<CalibSample> join_samples(const std::vector<FeatureVector>& feats,
                                      const std::vector<FragmentLabel>& labels) {
  if (feats.size() != labels.size())
    throw DataError("feature/label count mismatch: " + fmt_int(static_cast<std::int64_t>(feats.size())) +
                    " vs " + fmt_int(static_cast<std::int64_t>(labels.size())));
  std::vector<CalibSample> samples(feats.size());
  for (std::size_t i = 0; i < feats.size(); ++i) {
    if (feats[i].fragment_id != labels[i].fragment_id)
      throw DataError("feature/label id mismatch at row " +
                      fmt_int(static_cast<std::int64_t>(i)));
    samples[i].features = feats[i];
    samples[i].t_litho = labels[i].t_litho;
  }
  return samples;
}

std::vector<int> weighting_shape(const MetaModel& m) {
  std::vector<int> l;
  for (const WeightingFunction& w : m.weighting)
    l.push_back(static_cast<int>(w.levels.size()));
  return l;
}

int run_app(const std::vector<std::string>& args) {
  CLI::App app{"Lithography-hotspot meta-classification toolkit"};
  app.require_subcommand(1);

  // ---- gen ----
  CommonFlags gen_c;
  CLI::App* gen = app.add_subcommand("gen", "Generate a seeded layout");
  add_common(gen, gen_c);
  gen->callback([&] {
    const RunConfig cfg = build_config(gen_c);
    Layout l = generate_layout(gen_c.seed, cfg.gen);
    validate_layout(l);
    save_layout(l, cfg, gen_c.out);
  });

  // ---- label ----
  CommonFlags label_c;
  std::string label_layout, label_class;
  CLI::App* label = app.add_subcommand("label", "EPE-label every fragment");
  add_common(label, label_c);
  label->add_option("--layout", label_layout, "Layout file")->required()
      ->check(CLI::ExistingFile);
  label->add_option("--class", label_class, "Target class (C0 or C1)");
  label->callback([&] {
    RunConfig cfg = build_config(label_c);
    if (!label_class.empty()) {
      cfg.target = hotspot_class_from_name(label_class);
      if (cfg.target == HotspotClass::kNone)
        throw DataError("--class must be C0 or C1");
    }
    const Layout l = load_layout(label_layout);
    validate_layout(l);
    const std::vector<Fragment> frags = fragment_layout(l, cfg.frag_len);
    const std::vector<FragmentLabel> labels =
        label_fragments(l, frags, cfg.oracle, cfg.target, label_c.threads);
    save_labels(labels, cfg, label_c.out);
  });

  // ---- extract ----
  CommonFlags ex_c;
  std::string ex_layout, ex_labels;
  CLI::App* extract = app.add_subcommand("extract", "Extract window features");
  add_common(extract, ex_c);
  extract->add_option("--layout", ex_layout, "Layout file")->required()
      ->check(CLI::ExistingFile);
  extract->add_option("--labels", ex_labels, "Labels CSV")->required()
      ->check(CLI::ExistingFile);
  extract->callback([&] {
    const RunConfig cfg = build_config(ex_c);
    const Layout l = load_layout(ex_layout);
    validate_layout(l);
    const std::vector<Fragment> frags = fragment_layout(l, cfg.frag_len);
    const std::vector<FeatureVector> feats =
        extract_all(l, frags, cfg.features, ex_c.threads);
    const std::vector<FragmentLabel> labels = load_labels(ex_labels);
    save_samples(join_samples(feats, labels), cfg, ex_c.out);
  });

  // ---- calibrate ----
  CommonFlags cal_c;
  std::string cal_samples;
  CLI::App* cal = app.add_subcommand("calibrate", "Fit the meta-classifier");
  add_common(cal, cal_c);
  cal->add_option("--samples", cal_samples, "Samples CSV")->required()
      ->check(CLI::ExistingFile);
  cal->callback([&] {
    const RunConfig cfg = build_config(cal_c);
    const std::vector<CalibSample> samples = load_samples(cal_samples, &cfg);
    MetaModel m =
        calibrate(samples, make_calib_config(cfg, cal_c.seed, cal_c.threads));
    m.features = cfg.features;
    m.frag_len = cfg.frag_len;
    m.oracle = cfg.oracle;
    m.target = cfg.target;
    ModelFile mf;
    mf.prng = kPrngName;
    mf.seed = cal_c.seed;
    mf.config = config_echo(cfg);
    mf.model = std::move(m);
    save_model(mf, cal_c.out);
  });

  // ---- predict ----
  CommonFlags pred_c;
  std::string pred_model, pred_layout;
  bool pred_static = false;
  CLI::App* pred = app.add_subcommand("predict", "Score a layout with a model");
  add_common(pred, pred_c);
  pred->add_option("--model", pred_model, "Model file")->required()
      ->check(CLI::ExistingFile);
  pred->add_option("--layout", pred_layout, "Layout file")->required()
      ->check(CLI::ExistingFile);
  pred->add_flag("--static-hybrid", pred_static,
                 "Replace the fitted weighting with the fixed hybrid preset");
  pred->callback([&] {
    const RunConfig cfg = build_config(pred_c);
    ModelFile mf = load_model(pred_model);
    MetaModel& m = mf.model;
    if (pred_static) {
      m.weighting = make_static_hybrid(weighting_shape(m));
      m.theta = kStaticHybridTheta;
    }
    const Layout l = load_layout(pred_layout);
    validate_layout(l);
    const std::vector<Fragment> frags = fragment_layout(l, m.frag_len);
    const std::vector<FeatureVector> feats =
        extract_all(l, frags, m.features, pred_c.threads);
    save_detections(predict(m, feats, pred_c.threads), cfg, pred_c.out);
  });

  // ---- eval ----
  CommonFlags eval_c;
  std::string eval_dets, eval_labels;
  double eval_theta = std::numeric_limits<double>::quiet_NaN();
  CLI::App* eval = app.add_subcommand("eval", "Score detections against labels");
  add_common(eval, eval_c);
  eval->add_option("--detections", eval_dets, "Detections CSV")->required()
      ->check(CLI::ExistingFile);
  eval->add_option("--labels", eval_labels, "Labels CSV")->required()
      ->check(CLI::ExistingFile);
  eval->add_option("--theta", eval_theta,
                   "Threshold recorded in the report row");
  eval->callback([&] {
    const RunConfig cfg = build_config(eval_c);
    const std::vector<Detection> dets = load_detections(eval_dets);
    const std::vector<FragmentLabel> labels = load_labels(eval_labels);
    std::map<std::int64_t, double> truth;
    for (const FragmentLabel& l : labels) truth[l.fragment_id] = l.t_litho;
    std::vector<int> preds;
    std::vector<double> ys;
    for (const Detection& d : dets) {
      const auto it = truth.find(d.fragment_id);
      if (it == truth.end())
        throw DataError(eval_labels + ": no label for fragment " +
                        fmt_int(d.fragment_id));
      preds.push_back(d.t_meta);
      ys.push_back(it->second);
    }
    save_reports({compute_report(preds, ys, cfg.psi, eval_theta)}, cfg,
                 eval_c.out);
  });

  // ---- sweep ----
  CommonFlags sw_c;
  std::string sw_model, sw_layout, sw_labels, sw_method = "meta";
  int sw_grid = 0;
  CLI::App* sweep = app.add_subcommand("sweep", "Trade-off curve over thresholds");
  add_common(sweep, sw_c);
  sweep->add_option("--model", sw_model, "Model file")->required()
      ->check(CLI::ExistingFile);
  sweep->add_option("--layout", sw_layout, "Layout file")->required()
      ->check(CLI::ExistingFile);
  sweep->add_option("--labels", sw_labels, "Labels CSV")->required()
      ->check(CLI::ExistingFile);
  sweep->add_option("--method", sw_method, "meta, ann, svm, or pm")
      ->check(CLI::IsMember({"meta", "ann", "svm", "pm"}));
  sweep->add_option("--grid", sw_grid, "Candidate-threshold count (0 = config)");
  sweep->callback([&] {
    const RunConfig cfg = build_config(sw_c);
    const ModelFile mf = load_model(sw_model);
    const MetaModel& m = mf.model;
    const Layout l = load_layout(sw_layout);
    validate_layout(l);
    const std::vector<Fragment> frags = fragment_layout(l, m.frag_len);
    const std::vector<FeatureVector> feats =
        extract_all(l, frags, m.features, sw_c.threads);
    const std::vector<FragmentLabel> labels = load_labels(sw_labels);
    if (labels.size() != feats.size())
      throw DataError(sw_labels + ": label count does not match layout fragments");
    std::vector<double> scores(feats.size());
    std::vector<double> ys(feats.size());
    for (std::size_t i = 0; i < feats.size(); ++i) {
      if (labels[i].fragment_id != feats[i].fragment_id)
        throw DataError(sw_labels + ": fragment id mismatch at row " +
                        fmt_int(static_cast<std::int64_t>(i)));
      double row[3];
      base_outputs_row(m, feats[i], row);
      if (sw_method == "meta")
        scores[i] = meta_score(m.weighting, row);
      else if (sw_method == "ann")
        scores[i] = row[0];
      else if (sw_method == "svm")
        scores[i] = row[1];
      else
        scores[i] = row[2];
      ys[i] = labels[i].t_litho;
    }
    const int grid = sw_grid > 0 ? sw_grid : cfg.theta_grid;
    save_reports(sweep_tradeoff(scores, ys, threshold_grid(scores, grid), cfg.psi),
                 cfg, sw_c.out);
  });

  // ---- bench ----
  CommonFlags bench_c;
  CLI::App* bench = app.add_subcommand(
      "bench", "Seeded end-to-end run emitting the full report suite");
  add_common(bench, bench_c);
  bench->callback([&] {
    const RunConfig cfg = build_config(bench_c);
    const BenchArtifacts a = bench_run(cfg, bench_c.seed, bench_c.threads);
    bench_save(a, cfg, bench_c.seed, bench_c.out);
  });

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help text or the usage error
    return code == 0 ? 0 : 1;
  }
  return 0;
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args) {
  try {
    return run_app(args);
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace epic
