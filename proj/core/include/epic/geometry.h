#pragma once

#include <cstdint>
#include <vector>

#include "epic/rng.h"

namespace epic {

// Axis-aligned rectangle, integer nanometers, half-open semantics not used:
// [x1,x2] x [y1,y2] with x1 < x2, y1 < y2.
struct Rect {
  std::int64_t x1 = 0, y1 = 0, x2 = 0, y2 = 0;

  std::int64_t width() const { return x2 - x1; }
  std::int64_t height() const { return y2 - y1; }
  std::int64_t perimeter() const { return 2 * (width() + height()); }
};

struct Layout {
  std::int64_t width = 0, height = 0;
  std::uint64_t seed = 0;
  std::vector<Rect> rects;
};

struct GenConfig {
  std::int64_t width = 50000;   // field extent, nm
  std::int64_t height = 50000;
  int rect_count = 400;         // total rects, motif rects included
  std::int64_t min_dim = 200;   // regular-rect dimension band
  std::int64_t max_dim = 450;
  std::int64_t min_spacing = 64;  // L-inf separation floor; motif pairs sit exactly here
  // Everything except a planted pair keeps this much clearance (~3 sigma under
  // the oracle defaults), so unplanted adjacency never misprints.
  std::int64_t inert_spacing = 128;
  std::int64_t edge_margin = 400; // keep-out from the field border
  double motif_rate = 0.10;     // fraction of rect budget spent on risk motifs
  int max_place_tries = 400;    // rejection-sampling budget per placement
};

enum class Orientation { kHorizontal, kVertical };

// One edge piece. Center can sit on a half-integer coordinate, everything
// else stays integral.
struct Fragment {
  std::int64_t id = 0;
  double cx = 0, cy = 0;   // center, nm
  int nx = 0, ny = 0;      // outward normal, one of (+-1,0),(0,+-1)
  std::int64_t length = 0; // nm
  Orientation orientation = Orientation::kHorizontal;
  std::int64_t rect_index = 0;
};

// Deterministic function of (seed, cfg). Places risk motifs (narrow lines,
// line pairs at minimum spacing) first, then regular rects, all separated by
// at least cfg.min_spacing. Throws DataError when placement is impossible.
Layout generate_layout(std::uint64_t seed, const GenConfig& cfg);

// Splits every rect boundary into fragments of length frag_len walking each
// edge in fixed order (bottom, right, top, left). A trailing remainder of
// at most frag_len/2 merges into the previous fragment, otherwise it stays
// as a shorter fragment. Ids are sequential in traversal order.
std::vector<Fragment> fragment_layout(const Layout& layout,
                                      std::int64_t frag_len);

// Bounds, degenerate-rect, and pairwise-overlap validation. Throws DataError.
void validate_layout(const Layout& layout);

// L-inf gap between two rects; negative when they overlap.
std::int64_t rect_gap(const Rect& a, const Rect& b);

}  // namespace epic
