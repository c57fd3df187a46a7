#include "epic/config.h"

#include <fstream>
#include <functional>
#include <sstream>

#include "epic/errors.h"
#include "epic/rng.h"
#include "epic/text_io.h"

namespace epic {

namespace {

struct KeyBinding {
  const char* key;
  std::function<std::string(const RunConfig&)> get;
  std::function<void(RunConfig&, const std::string&)> set;
};

KeyBinding kv_i64(const char* key, std::int64_t RunConfig::* field) {
  return {key,
          [field](const RunConfig& c) { return fmt_int(c.*field); },
          [field](RunConfig& c, const std::string& v) { c.*field = parse_int(v); }};
}

template <typename Sub>
KeyBinding kv_i64(const char* key, Sub RunConfig::* sub, std::int64_t Sub::* field) {
  return {key,
          [=](const RunConfig& c) { return fmt_int(c.*sub.*field); },
          [=](RunConfig& c, const std::string& v) { c.*sub.*field = parse_int(v); }};
}

template <typename Sub>
KeyBinding kv_int(const char* key, Sub RunConfig::* sub, int Sub::* field) {
  return {key,
          [=](const RunConfig& c) { return fmt_int(c.*sub.*field); },
          [=](RunConfig& c, const std::string& v) {
            c.*sub.*field = static_cast<int>(parse_int(v));
          }};
}

template <typename Sub>
KeyBinding kv_dbl(const char* key, Sub RunConfig::* sub, double Sub::* field) {
  return {key,
          [=](const RunConfig& c) { return fmt_double(c.*sub.*field); },
          [=](RunConfig& c, const std::string& v) { c.*sub.*field = parse_double(v); }};
}

std::vector<KeyBinding> make_bindings() {
  std::vector<KeyBinding> b;
  b.push_back(kv_i64("gen.width", &RunConfig::gen, &GenConfig::width));
  b.push_back(kv_i64("gen.height", &RunConfig::gen, &GenConfig::height));
  b.push_back(kv_int("gen.rect_count", &RunConfig::gen, &GenConfig::rect_count));
  b.push_back(kv_i64("gen.min_dim", &RunConfig::gen, &GenConfig::min_dim));
  b.push_back(kv_i64("gen.max_dim", &RunConfig::gen, &GenConfig::max_dim));
  b.push_back(kv_i64("gen.min_spacing", &RunConfig::gen, &GenConfig::min_spacing));
  b.push_back(
      kv_i64("gen.inert_spacing", &RunConfig::gen, &GenConfig::inert_spacing));
  b.push_back(kv_i64("gen.edge_margin", &RunConfig::gen, &GenConfig::edge_margin));
  b.push_back(kv_dbl("gen.motif_rate", &RunConfig::gen, &GenConfig::motif_rate));
  b.push_back(
      kv_int("gen.max_place_tries", &RunConfig::gen, &GenConfig::max_place_tries));
  b.push_back(kv_i64("frag_len", &RunConfig::frag_len));
  b.push_back(kv_dbl("oracle.sigma", &RunConfig::oracle, &OracleConfig::sigma));
  b.push_back(kv_dbl("oracle.intensity_threshold", &RunConfig::oracle,
                     &OracleConfig::intensity_threshold));
  b.push_back(kv_dbl("oracle.epe_c0", &RunConfig::oracle, &OracleConfig::epe_c0));
  b.push_back(kv_dbl("oracle.epe_c1", &RunConfig::oracle, &OracleConfig::epe_c1));
  b.push_back(
      kv_dbl("oracle.sample_step", &RunConfig::oracle, &OracleConfig::sample_step));
  b.push_back(
      kv_i64("features.window", &RunConfig::features, &FeatureConfig::window));
  b.push_back(kv_int("features.grid", &RunConfig::features, &FeatureConfig::grid));
  b.push_back(kv_int("ann.hidden", &RunConfig::ann, &AnnTrainConfig::hidden));
  b.push_back(
      kv_dbl("ann.learning_rate", &RunConfig::ann, &AnnTrainConfig::learning_rate));
  b.push_back(kv_int("ann.epochs", &RunConfig::ann, &AnnTrainConfig::epochs));
  b.push_back(
      kv_dbl("ann.init_scale", &RunConfig::ann, &AnnTrainConfig::init_scale));
  b.push_back(kv_dbl("svm.c", &RunConfig::svm, &SvmTrainConfig::c));
  b.push_back(kv_dbl("svm.gamma", &RunConfig::svm, &SvmTrainConfig::gamma));
  b.push_back(kv_dbl("svm.kkt_tol", &RunConfig::svm, &SvmTrainConfig::kkt_tol));
  b.push_back(kv_int("svm.max_passes", &RunConfig::svm, &SvmTrainConfig::max_passes));
  b.push_back(kv_int("pm.levels", &RunConfig::pm, &PmConfig::levels));
  b.push_back(kv_int("pm.eps", &RunConfig::pm, &PmConfig::eps));
  b.push_back(kv_int("pm.budget", &RunConfig::pm, &PmConfig::budget));
  for (int k = 0; k < 3; ++k) {
    const char* keys[3] = {"meta.l_ann", "meta.l_svm", "meta.l_pm"};
    b.push_back({keys[k],
                 [k](const RunConfig& c) { return fmt_int(c.l_per_base[k]); },
                 [k](RunConfig& c, const std::string& v) {
                   c.l_per_base[static_cast<std::size_t>(k)] =
                       static_cast<int>(parse_int(v));
                 }});
  }
  b.push_back({"meta.lambda0_init",
               [](const RunConfig& c) { return fmt_double(c.lambda0_init); },
               [](RunConfig& c, const std::string& v) {
                 c.lambda0_init = parse_double(v);
               }});
  b.push_back(kv_dbl("qp.tol", &RunConfig::qp, &QpSolveConfig::tol));
  b.push_back(kv_i64("qp.max_iter", &RunConfig::qp, &QpSolveConfig::max_iter));
  b.push_back(kv_dbl("psi.alpha", &RunConfig::psi, &PsiWeights::alpha));
  b.push_back(kv_dbl("psi.beta", &RunConfig::psi, &PsiWeights::beta));
  b.push_back({"meta.theta_grid",
               [](const RunConfig& c) { return fmt_int(c.theta_grid); },
               [](RunConfig& c, const std::string& v) {
                 c.theta_grid = static_cast<int>(parse_int(v));
               }});
  b.push_back({"calib_fraction",
               [](const RunConfig& c) { return fmt_double(c.calib_fraction); },
               [](RunConfig& c, const std::string& v) {
                 c.calib_fraction = parse_double(v);
               }});
  b.push_back({"target",
               [](const RunConfig& c) {
                 return std::string(hotspot_class_name(c.target));
               },
               [](RunConfig& c, const std::string& v) {
                 c.target = hotspot_class_from_name(v);
                 if (c.target == HotspotClass::kNone)
                   throw DataError("config: target must be C0 or C1");
               }});
  return b;
}

const std::vector<KeyBinding>& bindings() {
  static const std::vector<KeyBinding> b = make_bindings();
  return b;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const KeyBinding& b : bindings()) out.emplace_back(b.key, b.get(cfg));
  return out;
}

void config_apply(RunConfig& cfg, const std::string& key, const std::string& value) {
  for (const KeyBinding& b : bindings()) {
    if (key == b.key) {
      b.set(cfg, value);
      return;
    }
  }
  throw DataError("config: unknown key '" + key + "'");
}

void config_apply_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("config: cannot open '" + path + "'");
  std::string line;
  std::int64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const std::vector<std::string_view> tok = split_ws(line);
    if (tok.empty()) continue;
    if (tok.size() != 2)
      throw DataError("config: '" + path + "' line " + fmt_int(lineno) +
                      ": expected 'key value'");
    config_apply(cfg, std::string(tok[0]), std::string(tok[1]));
  }
}

std::string config_block(const RunConfig& cfg) {
  std::string out;
  for (const auto& [k, v] : config_echo(cfg)) {
    out += k;
    out += ' ';
    out += v;
    out += '\n';
  }
  return out;
}

std::uint64_t config_hash(const RunConfig& cfg) {
  return fnv1a64(config_block(cfg));
}

CalibConfig make_calib_config(const RunConfig& cfg, std::uint64_t seed, int threads) {
  CalibConfig cc;
  cc.ann = cfg.ann;
  cc.svm = cfg.svm;
  cc.pm = cfg.pm;
  cc.l_per_base = cfg.l_per_base;
  cc.lambda0_init = cfg.lambda0_init;
  cc.qp = cfg.qp;
  cc.psi = cfg.psi;
  cc.theta_grid = cfg.theta_grid;
  cc.threads = threads;
  cc.ann.seed = derive_seed(seed, 0x616E6E);  // "ann"
  cc.svm.seed = derive_seed(seed, 0x73766D);  // "svm"
  return cc;
}

}  // namespace epic
