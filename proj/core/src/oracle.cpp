#include "epic/oracle.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "epic/errors.h"
#include "epic/parallel.h"

namespace epic {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Standard normal CDF.
double phi(double z) { return 0.5 * std::erfc(-z * kInvSqrt2); }

// Beyond this many sigmas a rect's per-axis factor is below double precision.
constexpr double kCutoffSigmas = 8.0;

}  // namespace

RectIndex::RectIndex(const Layout& layout, std::int64_t cell) : cell_(cell) {
  ox_ = 0;
  oy_ = 0;
  nx_ = std::max<std::int64_t>(1, (layout.width + cell_ - 1) / cell_ + 1);
  ny_ = std::max<std::int64_t>(1, (layout.height + cell_ - 1) / cell_ + 1);
  buckets_.resize(static_cast<std::size_t>(nx_ * ny_));
  for (std::size_t i = 0; i < layout.rects.size(); ++i) {
    const Rect& r = layout.rects[i];
    const std::int64_t cx0 = std::clamp<std::int64_t>((r.x1 - ox_) / cell_, 0, nx_ - 1);
    const std::int64_t cx1 = std::clamp<std::int64_t>((r.x2 - ox_) / cell_, 0, nx_ - 1);
    const std::int64_t cy0 = std::clamp<std::int64_t>((r.y1 - oy_) / cell_, 0, ny_ - 1);
    const std::int64_t cy1 = std::clamp<std::int64_t>((r.y2 - oy_) / cell_, 0, ny_ - 1);
    for (std::int64_t cy = cy0; cy <= cy1; ++cy)
      for (std::int64_t cx = cx0; cx <= cx1; ++cx)
        buckets_[static_cast<std::size_t>(cy * nx_ + cx)].push_back(
            static_cast<std::int64_t>(i));
  }
}

void RectIndex::query(double x0, double y0, double x1, double y1,
                      std::vector<std::int64_t>& out) const {
  out.clear();
  auto cell_of = [](double v, std::int64_t o, std::int64_t cell, std::int64_t n) {
    double c = std::floor((v - static_cast<double>(o)) / static_cast<double>(cell));
    return std::clamp<std::int64_t>(static_cast<std::int64_t>(c), 0, n - 1);
  };
  const std::int64_t cx0 = cell_of(x0, ox_, cell_, nx_);
  const std::int64_t cx1 = cell_of(x1, ox_, cell_, nx_);
  const std::int64_t cy0 = cell_of(y0, oy_, cell_, ny_);
  const std::int64_t cy1 = cell_of(y1, oy_, cell_, ny_);
  for (std::int64_t cy = cy0; cy <= cy1; ++cy)
    for (std::int64_t cx = cx0; cx <= cx1; ++cx) {
      const auto& b = buckets_[static_cast<std::size_t>(cy * nx_ + cx)];
      out.insert(out.end(), b.begin(), b.end());
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
}

double aerial_intensity(const Layout& layout, const RectIndex& index,
                        double px, double py, const OracleConfig& cfg) {
  const double sigma = cfg.sigma;
  if (!(sigma > 0)) throw DataError("aerial_intensity: sigma must be positive");
  const double reach = kCutoffSigmas * sigma;
  static thread_local std::vector<std::int64_t> hits;
  index.query(px - reach, py - reach, px + reach, py + reach, hits);

  double total = 0.0;
  for (std::int64_t i : hits) {
    const Rect& r = layout.rects[static_cast<std::size_t>(i)];
    const double dx = std::max({static_cast<double>(r.x1) - px,
                                px - static_cast<double>(r.x2), 0.0});
    const double dy = std::max({static_cast<double>(r.y1) - py,
                                py - static_cast<double>(r.y2), 0.0});
    if (dx >= reach || dy >= reach) continue;
    const double fx = phi((static_cast<double>(r.x2) - px) / sigma) -
                      phi((static_cast<double>(r.x1) - px) / sigma);
    const double fy = phi((static_cast<double>(r.y2) - py) / sigma) -
                      phi((static_cast<double>(r.y1) - py) / sigma);
    total += fx * fy;
  }
  return total;
}

double aerial_intensity(const Layout& layout, double px, double py,
                        const OracleConfig& cfg) {
  RectIndex index(layout);
  return aerial_intensity(layout, index, px, py, cfg);
}

EpeResult simulate_epe(const Layout& layout, const RectIndex& index,
                       const Fragment& frag, const OracleConfig& cfg) {
  const double range = 4.0 * cfg.sigma;
  const double step = cfg.sample_step;
  if (!(step > 0)) throw DataError("simulate_epe: sample_step must be positive");

  auto g = [&](double d) {
    return aerial_intensity(layout, index, frag.cx + d * frag.nx,
                            frag.cy + d * frag.ny, cfg) -
           cfg.intensity_threshold;
  };

  const double f0 = g(0.0);
  if (f0 == 0.0) return {0.0, false};
  const bool inside_sign = f0 > 0.0;  // printed at the drawn edge

  // March outward alternately (+step first) for the crossing nearest the edge.
  const int max_k = static_cast<int>(std::ceil(range / step));
  double bracket_lo = 0.0, bracket_hi = 0.0;
  bool found = false;
  double prev_pos = 0.0, prev_neg = 0.0;
  for (int k = 1; k <= max_k && !found; ++k) {
    const double d = std::min(static_cast<double>(k) * step, range);
    for (double signed_d : {d, -d}) {
      const double fv = g(signed_d);
      if ((fv > 0.0) != inside_sign || fv == 0.0) {
        bracket_lo = signed_d > 0 ? prev_pos : prev_neg;
        bracket_hi = signed_d;
        found = true;
        break;
      }
      (signed_d > 0 ? prev_pos : prev_neg) = signed_d;
    }
  }

  if (!found) {
    const double d = inside_sign ? range : -range;
    return {-d, true};
  }

  // Bisect [lo, hi] down to 0.01 nm; lo keeps the edge's sign.
  double lo = bracket_lo, hi = bracket_hi;
  while (std::abs(hi - lo) > 0.01) {
    const double mid = 0.5 * (lo + hi);
    const double fm = g(mid);
    if (fm == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((fm > 0.0) == inside_sign)
      lo = mid;
    else
      hi = mid;
  }
  const double d_cross = 0.5 * (lo + hi);
  return {-d_cross, false};
}

HotspotClass classify_epe(double epe, const OracleConfig& cfg) {
  const double a = std::abs(epe);
  if (a >= cfg.epe_c0) return HotspotClass::kC0;
  if (a >= cfg.epe_c1) return HotspotClass::kC1;
  return HotspotClass::kNone;
}

const char* hotspot_class_name(HotspotClass c) {
  switch (c) {
    case HotspotClass::kC0: return "C0";
    case HotspotClass::kC1: return "C1";
    default: return "NONE";
  }
}

HotspotClass hotspot_class_from_name(const std::string& name) {
  if (name == "C0") return HotspotClass::kC0;
  if (name == "C1") return HotspotClass::kC1;
  if (name == "NONE") return HotspotClass::kNone;
  throw DataError("unknown hotspot class: '" + name + "'");
}

std::vector<FragmentLabel> label_fragments(const Layout& layout,
                                           const std::vector<Fragment>& frags,
                                           const OracleConfig& cfg,
                                           HotspotClass target, int threads) {
  std::vector<FragmentLabel> out(frags.size());
  const RectIndex index(layout);  // read-only, safely shared across workers
  parallel_for(frags.size(), threads, [&](std::size_t i) {
    const EpeResult r = simulate_epe(layout, index, frags[i], cfg);
    FragmentLabel& l = out[i];
    l.fragment_id = frags[i].id;
    l.epe_nm = r.epe;
    l.clazz = classify_epe(r.epe, cfg);
    l.t_litho = l.clazz == target ? 1.0 : -1.0;
  });
  return out;
}

}  // namespace epic
