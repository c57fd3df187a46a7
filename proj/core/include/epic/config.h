#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "epic/pipeline.h"

namespace epic {

// Every tunable default in one place. The canonical key/value echo of this
// block is written into every output file (and hashed into benchmark
// summaries) so results stay auditable.
struct RunConfig {
  GenConfig gen;
  std::int64_t frag_len = 100;
  OracleConfig oracle;
  FeatureConfig features;
  AnnTrainConfig ann;
  SvmTrainConfig svm;
  PmConfig pm;
  std::vector<int> l_per_base{8, 8, 2};
  double lambda0_init = 1e-5;
  QpSolveConfig qp;
  PsiWeights psi;
  int theta_grid = 512;
  double calib_fraction = 0.6;
  HotspotClass target = HotspotClass::kC0;
};

// Key/value pairs in canonical order (seeds excluded; they are per-run).
std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& cfg);

// Apply one "key value" override; unknown keys raise DataError.
void config_apply(RunConfig& cfg, const std::string& key, const std::string& value);

// Load overrides from a file of "key value" lines ('#' comments allowed).
void config_apply_file(RunConfig& cfg, const std::string& path);

// The canonical text block ("key value\n" lines) and its FNV-1a hash.
std::string config_block(const RunConfig& cfg);
std::uint64_t config_hash(const RunConfig& cfg);

// CalibConfig slice of the run config (threads plumbed separately).
CalibConfig make_calib_config(const RunConfig& cfg, std::uint64_t seed, int threads);

}  // namespace epic
