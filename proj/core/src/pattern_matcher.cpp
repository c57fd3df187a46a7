#include "epic/pattern_matcher.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "epic/errors.h"

namespace epic {

PmSignature pm_signature(const FeatureVector& raw, const PmConfig& cfg) {
  if (cfg.levels < 1 || cfg.levels > 255)
    throw DataError("pm_signature: levels out of range");
  if (raw.normalized)
    throw DataError("pm_signature: expects raw (unnormalized) features");
  PmSignature sig;
  sig.cells.resize(raw.values.size());
  for (std::size_t i = 0; i < raw.values.size(); ++i) {
    const double v = raw.values[i];
    if (!(v >= 0.0 && v <= 1.0))
      throw DataError("pm_signature: value outside [0,1] at cell " +
                      std::to_string(i));
    int q = static_cast<int>(std::floor(v * cfg.levels));
    if (q >= cfg.levels) q = cfg.levels - 1;  // v == 1 upper edge
    sig.cells[i] = static_cast<std::uint8_t>(q);
  }
  return sig;
}

bool pm_sig_match(const PmSignature& a, const PmSignature& b,
                  const PmConfig& cfg) {
  if (a.cells.size() != b.cells.size())
    throw DataError("pm_sig_match: dimension mismatch");
  int over = 0;
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    const int d = std::abs(static_cast<int>(a.cells[i]) - static_cast<int>(b.cells[i]));
    if (d > cfg.eps && ++over > cfg.budget) return false;
  }
  return true;
}

PmLibrary pm_build_library(const std::vector<CalibSample>& hotspots_raw,
                           const PmConfig& cfg) {
  PmLibrary lib;
  lib.cfg = cfg;
  if (hotspots_raw.empty()) return lib;

  std::vector<const CalibSample*> ordered;
  ordered.reserve(hotspots_raw.size());
  for (const CalibSample& s : hotspots_raw) {
    if (s.t_litho != 1.0)
      throw DataError("pm_build_library: non-hotspot sample supplied");
    ordered.push_back(&s);
  }
  std::sort(ordered.begin(), ordered.end(),
            [](const CalibSample* a, const CalibSample* b) {
              return a->features.fragment_id < b->features.fragment_id;
            });

  lib.dim = static_cast<int>(ordered.front()->features.values.size());
  for (const CalibSample* s : ordered) {
    PmSignature sig = pm_signature(s->features, cfg);
    bool absorbed = false;
    for (PmSignature& have : lib.sigs)
      if (pm_sig_match(have, sig, cfg)) {
        ++have.source_count;
        absorbed = true;
        break;
      }
    if (!absorbed) lib.sigs.push_back(std::move(sig));
  }
  return lib;
}

int pm_match(const PmLibrary& lib, const FeatureVector& raw) {
  const PmSignature q = pm_signature(raw, lib.cfg);
  for (const PmSignature& have : lib.sigs)
    if (pm_sig_match(have, q, lib.cfg)) return 1;
  return -1;
}

}  // namespace epic
