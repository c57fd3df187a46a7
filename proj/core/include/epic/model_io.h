#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "epic/config.h"
#include "epic/pipeline.h"

namespace epic {

// ---- model file ("EPICMODEL v1", structured text) ----
//
// Canonical writer: saving a loaded model reproduces the file byte for byte.
// The config echo travels with the model verbatim.

struct ModelFile {
  int format_major = 1;
  std::string prng;  // algorithm name recorded at calibration time
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> config;  // echoed block
  MetaModel model;
};

void save_model(const ModelFile& mf, const std::string& path);
ModelFile load_model(const std::string& path);
std::string model_to_string(const ModelFile& mf);
ModelFile model_from_string(const std::string& text);

// ---- layout text format ----
// Header "LAYOUT v1 <width> <height> <seed>", then "# ..." comment lines
// (config echo), then one "RECT x1 y1 x2 y2" per rect.
void save_layout(const Layout& l, const RunConfig& cfg, const std::string& path);
Layout load_layout(const std::string& path);

// ---- CSV files ----
// All CSVs start with "# cfg <key> <value>" echo lines, a "# cfg_hash" line,
// then the header row. Rows are ordered by fragment_id.

void save_labels(const std::vector<FragmentLabel>& labels, const RunConfig& cfg,
                 const std::string& path);
std::vector<FragmentLabel> load_labels(const std::string& path);

void save_samples(const std::vector<CalibSample>& samples, const RunConfig& cfg,
                  const std::string& path);
// Echoed feature/fragment config keys in the file are checked against cfg
// (mismatch -> DataError) so models are never fit on stale extractions.
std::vector<CalibSample> load_samples(const std::string& path,
                                      const RunConfig* expect_cfg = nullptr);

void save_detections(const std::vector<Detection>& dets, const RunConfig& cfg,
                     const std::string& path);
std::vector<Detection> load_detections(const std::string& path);

void save_reports(const std::vector<DetectionReport>& rows, const RunConfig& cfg,
                  const std::string& path);
std::vector<DetectionReport> load_reports(const std::string& path);

}  // namespace epic
