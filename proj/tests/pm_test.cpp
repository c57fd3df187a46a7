// Pattern-matching base learner: quantized signature fixtures, inclusive
// tolerance boundaries, build-set recall, greedy absorption, and coverage
// monotonicity when the tolerances loosen.

#include <cstdint>
#include <vector>

#include <gtest/gtest.h>

#include "epic/errors.h"
#include "epic/pattern_matcher.h"
#include "epic/rng.h"

namespace {

using namespace epic;

FeatureVector raw_of(std::vector<double> v, std::int64_t id = 0) {
  FeatureVector fv;
  fv.fragment_id = id;
  fv.values = std::move(v);
  return fv;
}

CalibSample hotspot_of(std::vector<double> v, std::int64_t id) {
  CalibSample s;
  s.features = raw_of(std::move(v), id);
  s.t_litho = 1.0;
  return s;
}

TEST(Pm, SignatureQuantizationFixtures) {
  PmConfig cfg;  // levels = 8
  const PmSignature sig =
      pm_signature(raw_of({0.0, 0.124, 0.125, 0.5, 0.999, 1.0}), cfg);
  ASSERT_EQ(sig.cells.size(), 6u);
  EXPECT_EQ(sig.cells[0], 0);
  EXPECT_EQ(sig.cells[1], 0);
  EXPECT_EQ(sig.cells[2], 1);
  EXPECT_EQ(sig.cells[3], 4);
  EXPECT_EQ(sig.cells[4], 7);
  EXPECT_EQ(sig.cells[5], 7);  // v = 1 clamps into the top level
  EXPECT_EQ(sig.source_count, 1);
}

TEST(Pm, SignatureRejectsOutOfDomain) {
  PmConfig cfg;
  EXPECT_THROW(pm_signature(raw_of({-0.01}), cfg), DataError);
  EXPECT_THROW(pm_signature(raw_of({1.01}), cfg), DataError);
}

TEST(Pm, SignatureRejectsNormalizedInput) {
  PmConfig cfg;
  FeatureVector fv = raw_of({0.5});
  fv.normalized = true;
  EXPECT_THROW(pm_signature(fv, cfg), DataError);
}

TEST(Pm, MatchBoundariesAreInclusive) {
  PmConfig cfg;  // eps = 1, budget = 4
  PmSignature base;
  base.cells.assign(16, 0);
  auto query_with = [&](int cells_at, std::uint8_t level) {
    PmSignature q;
    q.cells.assign(16, 0);
    for (int i = 0; i < cells_at; ++i)
      q.cells[static_cast<std::size_t>(i)] = level;
    return q;
  };
  // Deviation exactly eps costs no budget at all.
  EXPECT_TRUE(pm_sig_match(base, query_with(16, 1), cfg));
  // Exactly budget cells beyond eps still match (inclusive)...
  EXPECT_TRUE(pm_sig_match(base, query_with(4, 2), cfg));
  // ...one more does not.
  EXPECT_FALSE(pm_sig_match(base, query_with(5, 2), cfg));
  // Size mismatch is a data error.
  PmSignature other;
  other.cells.assign(8, 0);
  EXPECT_THROW(pm_sig_match(base, other, cfg), DataError);
}

TEST(Pm, PerfectRecallOnBuildSet) {
  Rng rng(404);
  std::vector<CalibSample> hotspots;
  for (int i = 0; i < 30; ++i) {
    std::vector<double> v(16);
    for (double& x : v) x = rng.uniform_real();
    hotspots.push_back(hotspot_of(std::move(v), i));
  }
  PmConfig cfg;
  const PmLibrary lib = pm_build_library(hotspots, cfg);
  for (const CalibSample& s : hotspots)
    ASSERT_EQ(pm_match(lib, s.features), 1) << s.features.fragment_id;
}

TEST(Pm, GreedyAbsorptionCountsSources) {
  PmConfig cfg;
  // Six dimensions so the far sample exceeds the default budget of four
  // mismatched cells (the match test is inclusive at the budget).
  std::vector<CalibSample> hotspots{
      hotspot_of({0.0, 0.0, 0.0, 0.0, 0.0, 0.0}, 0),
      hotspot_of({0.0, 0.0, 0.0, 0.0, 0.0, 0.0}, 1),    // identical: absorbed
      hotspot_of({0.13, 0.0, 0.0, 0.0, 0.0, 0.0}, 2),   // within eps: absorbed
      hotspot_of({0.9, 0.9, 0.9, 0.9, 0.9, 0.9}, 3),    // far: new entry
  };
  const PmLibrary lib = pm_build_library(hotspots, cfg);
  ASSERT_EQ(lib.sigs.size(), 2u);
  EXPECT_EQ(lib.sigs[0].source_count, 3);
  EXPECT_EQ(lib.sigs[1].source_count, 1);
  EXPECT_EQ(lib.dim, 6);
}

TEST(Pm, BuildOrderIsByFragmentIdNotInputOrder) {
  PmConfig cfg;
  // Same set handed over in two input orders: the id-sorted greedy pass
  // must produce the same library.
  std::vector<CalibSample> a{
      hotspot_of({0.0, 0.0}, 10), hotspot_of({0.5, 0.5}, 20),
      hotspot_of({0.13, 0.0}, 30)};
  std::vector<CalibSample> b{a[2], a[0], a[1]};
  const PmLibrary la = pm_build_library(a, cfg);
  const PmLibrary lb = pm_build_library(b, cfg);
  ASSERT_EQ(la.sigs.size(), lb.sigs.size());
  for (std::size_t i = 0; i < la.sigs.size(); ++i) {
    EXPECT_EQ(la.sigs[i].cells, lb.sigs[i].cells);
    EXPECT_EQ(la.sigs[i].source_count, lb.sigs[i].source_count);
  }
}

TEST(Pm, RejectsNonHotspotSamples) {
  PmConfig cfg;
  std::vector<CalibSample> mixed{hotspot_of({0.5}, 0)};
  CalibSample cold = hotspot_of({0.6}, 1);
  cold.t_litho = -1.0;
  mixed.push_back(cold);
  EXPECT_THROW(pm_build_library(mixed, cfg), DataError);
}

TEST(Pm, EmptyLibraryMatchesNothing) {
  PmConfig cfg;
  const PmLibrary lib = pm_build_library({}, cfg);
  EXPECT_TRUE(lib.sigs.empty());
  EXPECT_EQ(pm_match(lib, raw_of({0.5, 0.5})), -1);
}

TEST(Pm, SigMatchMonotoneInTolerances) {
  // The match predicate itself: once a pair matches at (eps, budget), it
  // matches at every looser setting.
  Rng rng(777);
  for (int trial = 0; trial < 300; ++trial) {
    PmSignature a, b;
    for (int i = 0; i < 12; ++i) {
      a.cells.push_back(static_cast<std::uint8_t>(rng.uniform_int(0, 7)));
      b.cells.push_back(static_cast<std::uint8_t>(rng.uniform_int(0, 7)));
    }
    for (int eps = 0; eps <= 3; ++eps)
      for (int budget = 0; budget <= 6; ++budget) {
        PmConfig cfg;
        cfg.eps = eps;
        cfg.budget = budget;
        if (!pm_sig_match(a, b, cfg)) continue;
        for (int deps = 0; deps <= 2; ++deps)
          for (int dbud = 0; dbud <= 2; ++dbud) {
            PmConfig loose = cfg;
            loose.eps += deps;
            loose.budget += dbud;
            ASSERT_TRUE(pm_sig_match(a, b, loose))
                << "eps " << eps << "+" << deps << " budget " << budget
                << "+" << dbud;
          }
      }
  }
}

TEST(Pm, LooseningLibraryToleranceNeverLosesMatches) {
  // Fixed signature list, loosened matching: the coverage knob only ever
  // widens the accepted set (the cost of loosening is false alarms, never
  // lost hits).
  Rng rng(808);
  std::vector<CalibSample> hotspots;
  for (int i = 0; i < 20; ++i) {
    std::vector<double> v(9);
    for (double& x : v) x = rng.uniform_real();
    hotspots.push_back(hotspot_of(std::move(v), i));
  }
  std::vector<FeatureVector> queries;
  for (int i = 0; i < 300; ++i) {
    std::vector<double> v(9);
    for (double& x : v) x = rng.uniform_real();
    queries.push_back(raw_of(std::move(v), 1000 + i));
  }
  PmConfig tight;
  tight.eps = 0;
  tight.budget = 1;
  const PmLibrary base = pm_build_library(hotspots, tight);
  for (int deps = 0; deps <= 2; ++deps)
    for (int dbud = 0; dbud <= 3; ++dbud) {
      PmLibrary loose = base;  // same signatures, wider tolerances
      loose.cfg.eps = tight.eps + deps;
      loose.cfg.budget = tight.budget + dbud;
      for (const FeatureVector& q : queries) {
        if (pm_match(base, q) == 1) {
          ASSERT_EQ(pm_match(loose, q), 1)
              << "deps " << deps << " dbud " << dbud;
        }
      }
    }
}

TEST(Pm, InconsistentDimensionsThrow) {
  PmConfig cfg;
  std::vector<CalibSample> bad{hotspot_of({0.5, 0.5}, 0),
                               hotspot_of({0.5}, 1)};
  EXPECT_THROW(pm_build_library(bad, cfg), DataError);
  const PmLibrary lib = pm_build_library({hotspot_of({0.5, 0.5}, 0)}, cfg);
  EXPECT_THROW(pm_match(lib, raw_of({0.5})), DataError);
}

}  // namespace
