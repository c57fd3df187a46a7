#include "epic/features.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "epic/errors.h"
#include "epic/parallel.h"

namespace epic {

namespace {

// Scaled-integer frame: multiply nm coordinates by 2G so fragment centers
// (half-integral) and cell boundaries (multiples of W/G from -W/2) are all
// exact integers. A cell side is then 2W and a cell area 4W^2.
struct CanonicalSpan {
  std::int64_t u1, u2, v1, v2;
};

CanonicalSpan canonicalize(std::int64_t a1, std::int64_t a2, std::int64_t b1,
                           std::int64_t b2, int nx, int ny) {
  if (nx == 1) return {a1, a2, b1, b2};
  if (nx == -1) return {-a2, -a1, -b2, -b1};
  if (ny == 1) return {b1, b2, -a2, -a1};
  return {-b2, -b1, a1, a2};  // ny == -1
}

}  // namespace

FeatureVector extract_features(const Layout& layout, const RectIndex& index,
                               const Fragment& frag, const FeatureConfig& cfg) {
  const std::int64_t W = cfg.window;
  const int G = cfg.grid;
  if (W <= 0 || G <= 0) throw DataError("extract_features: bad window/grid");
  const std::int64_t S = 2 * G;
  const std::int64_t GW = G * W;      // scaled window half-side
  const std::int64_t cell = 2 * W;    // scaled cell side

  const std::int64_t scx = std::llround(2.0 * frag.cx) * G;
  const std::int64_t scy = std::llround(2.0 * frag.cy) * G;

  static thread_local std::vector<std::int64_t> hits;
  const double half = static_cast<double>(W) / 2.0;
  index.query(frag.cx - half, frag.cy - half, frag.cx + half, frag.cy + half,
              hits);

  std::vector<std::int64_t> acc(static_cast<std::size_t>(G) * G, 0);
  for (std::int64_t ri : hits) {
    const Rect& r = layout.rects[static_cast<std::size_t>(ri)];
    const std::int64_t a1 = r.x1 * S - scx, a2 = r.x2 * S - scx;
    const std::int64_t b1 = r.y1 * S - scy, b2 = r.y2 * S - scy;
    CanonicalSpan s = canonicalize(a1, a2, b1, b2, frag.nx, frag.ny);
    s.u1 = std::max(s.u1, -GW);
    s.u2 = std::min(s.u2, GW);
    s.v1 = std::max(s.v1, -GW);
    s.v2 = std::min(s.v2, GW);
    if (s.u1 >= s.u2 || s.v1 >= s.v2) continue;

    const std::int64_t c_lo = (s.u1 + GW) / cell;
    const std::int64_t c_hi = (s.u2 + GW - 1) / cell;
    const std::int64_t r_lo = (s.v1 + GW) / cell;
    const std::int64_t r_hi = (s.v2 + GW - 1) / cell;
    for (std::int64_t row = r_lo; row <= r_hi; ++row) {
      const std::int64_t v0 = cell * row - GW;
      const std::int64_t ov = std::min(s.v2, v0 + cell) - std::max(s.v1, v0);
      for (std::int64_t col = c_lo; col <= c_hi; ++col) {
        const std::int64_t u0 = cell * col - GW;
        const std::int64_t ou = std::min(s.u2, u0 + cell) - std::max(s.u1, u0);
        acc[static_cast<std::size_t>(row) * G + col] += ou * ov;
      }
    }
  }

  FeatureVector fv;
  fv.fragment_id = frag.id;
  fv.values.resize(acc.size());
  const double cell_area = 4.0 * static_cast<double>(W) * static_cast<double>(W);
  for (std::size_t i = 0; i < acc.size(); ++i)
    fv.values[i] = static_cast<double>(acc[i]) / cell_area;
  return fv;
}

std::vector<FeatureVector> extract_all(const Layout& layout,
                                       const std::vector<Fragment>& frags,
                                       const FeatureConfig& cfg, int threads) {
  std::vector<FeatureVector> out(frags.size());
  const RectIndex index(layout);
  parallel_for(frags.size(), threads, [&](std::size_t i) {
    out[i] = extract_features(layout, index, frags[i], cfg);
  });
  return out;
}

NormParams compute_norm(const std::vector<CalibSample>& samples) {
  if (samples.empty()) throw DataError("compute_norm: empty sample set");
  const std::size_t dim = samples[0].features.values.size();
  for (const CalibSample& s : samples)
    if (s.features.values.size() != dim)
      throw DataError("compute_norm: inconsistent feature dimensions");

  NormParams p;
  p.mean.assign(dim, 0.0);
  p.scale.assign(dim, 1.0);
  const double n = static_cast<double>(samples.size());
  for (const CalibSample& s : samples)
    for (std::size_t j = 0; j < dim; ++j) p.mean[j] += s.features.values[j];
  for (std::size_t j = 0; j < dim; ++j) p.mean[j] /= n;
  for (std::size_t j = 0; j < dim; ++j) {
    double var = 0.0;
    for (const CalibSample& s : samples) {
      const double d = s.features.values[j] - p.mean[j];
      var += d * d;
    }
    var /= n;
    const double sd = std::sqrt(var);
    if (sd < 1e-12) {  // constant column: leave it untouched
      p.mean[j] = 0.0;
      p.scale[j] = 1.0;
    } else {
      p.scale[j] = sd;
    }
  }
  return p;
}

void apply_norm(const NormParams& params, FeatureVector& fv) {
  if (fv.normalized)
    throw DataError("apply_norm: feature vector is already normalized");
  if (params.mean.size() != fv.values.size())
    throw DataError("apply_norm: dimension mismatch");
  for (std::size_t j = 0; j < fv.values.size(); ++j)
    fv.values[j] = (fv.values[j] - params.mean[j]) / params.scale[j];
  fv.normalized = true;
}

std::vector<CalibSample> normalize_dataset(std::vector<CalibSample> samples,
                                           NormParams* out_params) {
  NormParams p = compute_norm(samples);
  for (CalibSample& s : samples) apply_norm(p, s.features);
  if (out_params) *out_params = p;
  return samples;
}

}  // namespace epic
