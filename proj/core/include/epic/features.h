#pragma once

#include <cstdint>
#include <vector>

#include "epic/geometry.h"
#include "epic/oracle.h"

namespace epic {

struct FeatureConfig {
  std::int64_t window = 1200;  // square window side, nm (covers the optical radius)
  int grid = 8;                // G; feature dimension is G*G
};

struct FeatureVector {
  std::int64_t fragment_id = 0;
  std::vector<double> values;  // row-major G x G covered-area fractions
  bool normalized = false;
};

struct CalibSample {
  FeatureVector features;
  double t_litho = -1.0;  // +-1
};

struct NormParams {
  std::vector<double> mean;
  std::vector<double> scale;
};

// Covered-area fractions of the G x G cells of a window centered on the
// fragment, canonicalized so the outward normal points toward +x (material
// sits in the low-u columns). Cell overlaps are computed in scaled integer
// arithmetic, so each value is a single correctly rounded rational.
FeatureVector extract_features(const Layout& layout, const RectIndex& index,
                               const Fragment& frag, const FeatureConfig& cfg);

std::vector<FeatureVector> extract_all(const Layout& layout,
                                       const std::vector<Fragment>& frags,
                                       const FeatureConfig& cfg, int threads);

// Per-dimension population mean / standard deviation. Constant columns pass
// through untouched (mean 0, scale 1).
NormParams compute_norm(const std::vector<CalibSample>& samples);

// In-place (v - mean) / scale. Throws DataError when the vector is already
// normalized or dimensions mismatch; double application would corrupt scores.
void apply_norm(const NormParams& params, FeatureVector& fv);

// Convenience: compute params on the set and normalize a copy of every sample.
std::vector<CalibSample> normalize_dataset(std::vector<CalibSample> samples,
                                           NormParams* out_params);

}  // namespace epic
