#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "epic/geometry.h"

namespace epic {

struct OracleConfig {
  double sigma = 40.0;               // Gaussian blur radius, nm
  double intensity_threshold = 0.5;  // print threshold
  double epe_c0 = 6.0;               // |EPE| >= epe_c0       -> class C0
  double epe_c1 = 4.5;               // epe_c1 <= |EPE| < c0  -> class C1
  double sample_step = 1.0;          // coarse bracket step for the crossing search, nm
};

enum class HotspotClass { kNone, kC0, kC1 };

struct EpeResult {
  double epe = 0.0;       // signed, nm; positive = printed contour recedes inward
  bool saturated = false; // no threshold crossing within +-4 sigma
};

struct FragmentLabel {
  std::int64_t fragment_id = 0;
  double epe_nm = 0.0;
  HotspotClass clazz = HotspotClass::kNone;
  double t_litho = -1.0;  // +1 iff clazz == target class
};

// Uniform-grid spatial index over layout rects. Queries return rect indexes
// in ascending order so downstream sums are order-stable.
class RectIndex {
 public:
  RectIndex(const Layout& layout, std::int64_t cell = 1024);
  // All rects whose bounding box intersects [x0,x1] x [y0,y1], ascending.
  void query(double x0, double y0, double x1, double y1,
             std::vector<std::int64_t>& out) const;

 private:
  std::int64_t cell_;
  std::int64_t nx_ = 0, ny_ = 0;
  std::int64_t ox_ = 0, oy_ = 0;
  std::vector<std::vector<std::int64_t>> buckets_;
};

// Exact separable Gaussian exposure: sum over rects of the product of CDF
// differences per axis. Rects farther than 8 sigma (per-axis) contribute
// below double precision and are skipped.
double aerial_intensity(const Layout& layout, const RectIndex& index,
                        double px, double py, const OracleConfig& cfg);
double aerial_intensity(const Layout& layout, double px, double py,
                        const OracleConfig& cfg);

// Signed edge-placement error at the fragment center. Walks outward from the
// drawn edge in cfg.sample_step increments (alternating +/-, nearer crossing
// wins, positive side on ties), then bisects the bracketed step down to
// 0.01 nm. epe = -d where d is the crossing offset along the outward normal.
// No crossing within +-4 sigma => saturated, epe = -+4 sigma with the sign
// taken from the center intensity.
EpeResult simulate_epe(const Layout& layout, const RectIndex& index,
                       const Fragment& frag, const OracleConfig& cfg);

HotspotClass classify_epe(double epe, const OracleConfig& cfg);

const char* hotspot_class_name(HotspotClass c);
HotspotClass hotspot_class_from_name(const std::string& name);

// Labels every fragment against the target class. Parallel over fragments;
// output order follows the input order.
std::vector<FragmentLabel> label_fragments(const Layout& layout,
                                           const std::vector<Fragment>& frags,
                                           const OracleConfig& cfg,
                                           HotspotClass target, int threads);

}  // namespace epic
