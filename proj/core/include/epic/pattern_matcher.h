#pragma once

#include <cstdint>
#include <vector>

#include "epic/features.h"

namespace epic {

struct PmConfig {
  int levels = 8;  // quantization levels Q per cell
  int eps = 1;     // per-cell deviation tolerance
  int budget = 4;  // max number of cells allowed to deviate by more than eps
};

struct PmSignature {
  std::vector<std::uint8_t> cells;
  std::int64_t source_count = 1;  // training hotspots absorbed into this entry
};

struct PmLibrary {
  PmConfig cfg;
  int dim = 0;
  std::vector<PmSignature> sigs;
};

// Quantize raw (unnormalized) feature values in [0,1]: cell = floor(v*Q),
// clamped to Q-1 at v == 1. Values outside [0,1] raise DataError.
PmSignature pm_signature(const FeatureVector& raw, const PmConfig& cfg);

// Two signatures match when at most cfg.budget cells differ by more than
// cfg.eps levels (both bounds inclusive).
bool pm_sig_match(const PmSignature& a, const PmSignature& b,
                  const PmConfig& cfg);

// Greedy dedup over hotspot samples sorted by fragment id: a sample matching
// an existing signature is absorbed (first match wins), otherwise appended.
// Only t_litho = +1 samples are accepted.
PmLibrary pm_build_library(const std::vector<CalibSample>& hotspots_raw,
                           const PmConfig& cfg);

// +1 iff the query matches any library signature, else -1.
int pm_match(const PmLibrary& lib, const FeatureVector& raw);

}  // namespace epic
