#include "epic/model_io.h"

#include <cstddef>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include "epic/errors.h"
#include "epic/text_io.h"

namespace epic {

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw DataError("write failed on '" + path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Line cursor with strict, position-aware errors.
class LineReader {
 public:
  LineReader(const std::string& text, std::string origin)
      : origin_(std::move(origin)) {
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t nl = text.find('\n', start);
      if (nl == std::string::npos) {
        if (start < text.size()) lines_.push_back(text.substr(start));
        break;
      }
      lines_.push_back(text.substr(start, nl - start));
      start = nl + 1;
    }
  }

  bool done() const { return pos_ >= lines_.size(); }
  std::size_t lineno() const { return pos_; }  // next line, 0-based

  const std::string& next(const char* what) {
    if (done()) fail(std::string("unexpected end of file, expected ") + what);
    return lines_[pos_++];
  }

  std::vector<std::string_view> next_tokens(const char* what, std::size_t count) {
    std::vector<std::string_view> tok = split_ws(next(what));
    if (tok.size() != count)
      fail(std::string("malformed ") + what + " record: expected " +
           fmt_int(static_cast<std::int64_t>(count)) + " fields, got " +
           fmt_int(static_cast<std::int64_t>(tok.size())));
    return tok;
  }

  // "<tag> v1 ..." style keyword line; returns remaining tokens.
  std::vector<std::string_view> expect_keyword(const char* keyword) {
    std::vector<std::string_view> tok = split_ws(next(keyword));
    if (tok.empty() || tok[0] != keyword)
      fail(std::string("expected '") + keyword + "' record");
    tok.erase(tok.begin());
    return tok;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw DataError(origin_ + " line " + fmt_int(static_cast<std::int64_t>(pos_ + 1)) +
                    ": " + msg);
  }

 private:
  std::string origin_;
  std::vector<std::string> lines_;
  std::size_t pos_ = 0;
};

void append_doubles(std::string& out, const std::vector<double>& v,
                    std::size_t from, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    if (i) out += ' ';
    out += fmt_double(v[from + i]);
  }
  out += '\n';
}

std::vector<double> parse_doubles(LineReader& r, const char* what,
                                  std::size_t count) {
  std::vector<std::string_view> tok = r.next_tokens(what, count);
  std::vector<double> v(count);
  for (std::size_t i = 0; i < count; ++i) v[i] = parse_double(tok[i]);
  return v;
}

void append_norm(std::string& out, const char* tag, const NormParams& n) {
  out += tag;
  out += ' ';
  out += fmt_int(static_cast<std::int64_t>(n.mean.size()));
  out += '\n';
  for (std::size_t i = 0; i < n.mean.size(); ++i) {
    out += fmt_double(n.mean[i]);
    out += ' ';
    out += fmt_double(n.scale[i]);
    out += '\n';
  }
}

NormParams parse_norm(LineReader& r, const char* tag) {
  std::vector<std::string_view> head = r.expect_keyword(tag);
  if (head.size() != 1) r.fail(std::string(tag) + ": expected a dimension");
  const std::int64_t dim = parse_int(head[0]);
  if (dim < 0) r.fail(std::string(tag) + ": negative dimension");
  NormParams n;
  n.mean.resize(static_cast<std::size_t>(dim));
  n.scale.resize(static_cast<std::size_t>(dim));
  for (std::int64_t i = 0; i < dim; ++i) {
    std::vector<std::string_view> tok = r.next_tokens(tag, 2);
    n.mean[static_cast<std::size_t>(i)] = parse_double(tok[0]);
    n.scale[static_cast<std::size_t>(i)] = parse_double(tok[1]);
  }
  return n;
}

std::string cfg_comment_block(const RunConfig& cfg) {
  std::string out;
  for (const auto& [k, v] : config_echo(cfg)) {
    out += "# cfg ";
    out += k;
    out += ' ';
    out += v;
    out += '\n';
  }
  out += "# cfg_hash ";
  out += to_hex(config_hash(cfg));
  out += '\n';
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// model file
// ---------------------------------------------------------------------------

std::string model_to_string(const ModelFile& mf) {
  const MetaModel& m = mf.model;
  std::string out;
  out += "EPICMODEL v" + fmt_int(mf.format_major) + "\n";
  out += "prng " + mf.prng + "\n";
  out += "seed " + fmt_int(static_cast<std::int64_t>(mf.seed)) + "\n";
  out += "config " + fmt_int(static_cast<std::int64_t>(mf.config.size())) + "\n";
  for (const auto& [k, v] : mf.config) out += k + " " + v + "\n";
  out += "target ";
  out += hotspot_class_name(m.target);
  out += "\n";
  out += "frag_len " + fmt_int(m.frag_len) + "\n";
  out += "features " + fmt_int(m.features.window) + " " + fmt_int(m.features.grid) +
         "\n";
  out += "oracle " + fmt_double(m.oracle.sigma) + " " +
         fmt_double(m.oracle.intensity_threshold) + " " +
         fmt_double(m.oracle.epe_c0) + " " + fmt_double(m.oracle.epe_c1) + " " +
         fmt_double(m.oracle.sample_step) + "\n";
  out += "psi " + fmt_double(m.psi.alpha) + " " + fmt_double(m.psi.beta) + "\n";
  out += "theta_grid " + fmt_int(m.theta_grid) + "\n";
  out += "theta " + fmt_double(m.theta) + "\n";
  out += "lambda0 " + fmt_double(m.lambda0) + "\n";
  append_norm(out, "norm", m.norm);

  out += "ann " + fmt_int(m.ann.input_dim) + " " + fmt_int(m.ann.hidden) + " " +
         fmt_double(m.ann.b_out) + " " + fmt_double(m.ann.threshold) + "\n";
  append_norm(out, "ann_norm", m.ann.norm);
  out += "w_in\n";
  for (int j = 0; j < m.ann.hidden; ++j)
    append_doubles(out, m.ann.w_in,
                   static_cast<std::size_t>(j) *
                       static_cast<std::size_t>(m.ann.input_dim),
                   static_cast<std::size_t>(m.ann.input_dim));
  out += "b_in\n";
  append_doubles(out, m.ann.b_in, 0, m.ann.b_in.size());
  out += "w_out\n";
  append_doubles(out, m.ann.w_out, 0, m.ann.w_out.size());

  const std::size_t sv_dim = m.svm.svs.empty() ? 0 : m.svm.svs[0].v.size();
  out += "svm " + fmt_double(m.svm.gamma) + " " + fmt_double(m.svm.c_bound) + " " +
         fmt_double(m.svm.bias) + " " + fmt_double(m.svm.threshold) + " " +
         fmt_int(static_cast<std::int64_t>(m.svm.svs.size())) + " " +
         fmt_int(static_cast<std::int64_t>(sv_dim)) + "\n";
  append_norm(out, "svm_norm", m.svm.norm);
  for (const SupportVector& sv : m.svm.svs) {
    out += fmt_double(sv.alpha);
    out += ' ';
    out += fmt_double(sv.y);
    for (double x : sv.v) {
      out += ' ';
      out += fmt_double(x);
    }
    out += '\n';
  }

  out += "pm " + fmt_int(m.pm.cfg.levels) + " " + fmt_int(m.pm.cfg.eps) + " " +
         fmt_int(m.pm.cfg.budget) + " " + fmt_int(m.pm.dim) + " " +
         fmt_int(static_cast<std::int64_t>(m.pm.sigs.size())) + "\n";
  for (const PmSignature& sig : m.pm.sigs) {
    out += fmt_int(sig.source_count);
    for (std::uint8_t c : sig.cells) {
      out += ' ';
      out += fmt_int(static_cast<std::int64_t>(c));
    }
    out += '\n';
  }

  out += "weighting " + fmt_int(static_cast<std::int64_t>(m.weighting.size())) +
         "\n";
  for (const WeightingFunction& w : m.weighting) {
    out += "base " + fmt_int(w.base_index) + " " +
           fmt_int(static_cast<std::int64_t>(w.levels.size())) + "\n";
    append_doubles(out, w.levels, 0, w.levels.size());
  }
  out += "end\n";
  return out;
}

ModelFile model_from_string(const std::string& text) {
  LineReader r(text, "model");
  ModelFile mf;

  {
    std::vector<std::string_view> tok = r.expect_keyword("EPICMODEL");
    if (tok.size() != 1 || tok[0].size() < 2 || tok[0][0] != 'v')
      r.fail("malformed version tag");
    const std::int64_t major = parse_int(tok[0].substr(1));
    if (major != 1)
      throw DataError("model file version " + fmt_int(major) +
                      " not supported by this reader (expected version 1)");
    mf.format_major = static_cast<int>(major);
  }
  {
    std::vector<std::string_view> tok = r.expect_keyword("prng");
    if (tok.size() != 1) r.fail("prng: expected one token");
    mf.prng = std::string(tok[0]);
  }
  {
    std::vector<std::string_view> tok = r.expect_keyword("seed");
    if (tok.size() != 1) r.fail("seed: expected one token");
    mf.seed = static_cast<std::uint64_t>(parse_int(tok[0]));
  }
  {
    std::vector<std::string_view> tok = r.expect_keyword("config");
    if (tok.size() != 1) r.fail("config: expected a count");
    const std::int64_t n = parse_int(tok[0]);
    for (std::int64_t i = 0; i < n; ++i) {
      std::vector<std::string_view> kv = r.next_tokens("config entry", 2);
      mf.config.emplace_back(std::string(kv[0]), std::string(kv[1]));
    }
  }

  MetaModel& m = mf.model;
  {
    std::vector<std::string_view> tok = r.expect_keyword("target");
    if (tok.size() != 1) r.fail("target: expected one token");
    m.target = hotspot_class_from_name(std::string(tok[0]));
  }
  {
    std::vector<std::string_view> tok = r.expect_keyword("frag_len");
    if (tok.size() != 1) r.fail("frag_len: expected one token");
    m.frag_len = parse_int(tok[0]);
  }
  {
    std::vector<std::string_view> tok = r.expect_keyword("features");
    if (tok.size() != 2) r.fail("features: expected window and grid");
    m.features.window = parse_int(tok[0]);
    m.features.grid = static_cast<int>(parse_int(tok[1]));
  }
  {
    std::vector<std::string_view> tok = r.expect_keyword("oracle");
    if (tok.size() != 5) r.fail("oracle: expected 5 fields");
    m.oracle.sigma = parse_double(tok[0]);
    m.oracle.intensity_threshold = parse_double(tok[1]);
    m.oracle.epe_c0 = parse_double(tok[2]);
    m.oracle.epe_c1 = parse_double(tok[3]);
    m.oracle.sample_step = parse_double(tok[4]);
  }
  {
    std::vector<std::string_view> tok = r.expect_keyword("psi");
    if (tok.size() != 2) r.fail("psi: expected alpha and beta");
    m.psi.alpha = parse_double(tok[0]);
    m.psi.beta = parse_double(tok[1]);
  }
  {
    std::vector<std::string_view> tok = r.expect_keyword("theta_grid");
    if (tok.size() != 1) r.fail("theta_grid: expected one token");
    m.theta_grid = static_cast<int>(parse_int(tok[0]));
  }
  {
    std::vector<std::string_view> tok = r.expect_keyword("theta");
    if (tok.size() != 1) r.fail("theta: expected one token");
    m.theta = parse_double(tok[0]);
  }
  {
    std::vector<std::string_view> tok = r.expect_keyword("lambda0");
    if (tok.size() != 1) r.fail("lambda0: expected one token");
    m.lambda0 = parse_double(tok[0]);
  }
  m.norm = parse_norm(r, "norm");

  {
    std::vector<std::string_view> tok = r.expect_keyword("ann");
    if (tok.size() != 4) r.fail("ann: expected 4 fields");
    m.ann.input_dim = static_cast<int>(parse_int(tok[0]));
    m.ann.hidden = static_cast<int>(parse_int(tok[1]));
    m.ann.b_out = parse_double(tok[2]);
    m.ann.threshold = parse_double(tok[3]);
    if (m.ann.input_dim < 0 || m.ann.hidden < 0) r.fail("ann: negative shape");
  }
  m.ann.norm = parse_norm(r, "ann_norm");
  r.expect_keyword("w_in");
  m.ann.w_in.clear();
  for (int j = 0; j < m.ann.hidden; ++j) {
    std::vector<double> row =
        parse_doubles(r, "w_in row", static_cast<std::size_t>(m.ann.input_dim));
    m.ann.w_in.insert(m.ann.w_in.end(), row.begin(), row.end());
  }
  r.expect_keyword("b_in");
  m.ann.b_in = parse_doubles(r, "b_in", static_cast<std::size_t>(m.ann.hidden));
  r.expect_keyword("w_out");
  m.ann.w_out = parse_doubles(r, "w_out", static_cast<std::size_t>(m.ann.hidden));

  std::int64_t n_sv = 0, sv_dim = 0;
  {
    std::vector<std::string_view> tok = r.expect_keyword("svm");
    if (tok.size() != 6) r.fail("svm: expected 6 fields");
    m.svm.gamma = parse_double(tok[0]);
    m.svm.c_bound = parse_double(tok[1]);
    m.svm.bias = parse_double(tok[2]);
    m.svm.threshold = parse_double(tok[3]);
    n_sv = parse_int(tok[4]);
    sv_dim = parse_int(tok[5]);
    if (n_sv < 0 || sv_dim < 0) r.fail("svm: negative shape");
  }
  m.svm.norm = parse_norm(r, "svm_norm");
  m.svm.svs.clear();
  for (std::int64_t i = 0; i < n_sv; ++i) {
    std::vector<double> row = parse_doubles(
        r, "support vector", static_cast<std::size_t>(2 + sv_dim));
    SupportVector sv;
    sv.alpha = row[0];
    sv.y = row[1];
    sv.v.assign(row.begin() + 2, row.end());
    m.svm.svs.push_back(std::move(sv));
  }

  {
    std::vector<std::string_view> tok = r.expect_keyword("pm");
    if (tok.size() != 5) r.fail("pm: expected 5 fields");
    m.pm.cfg.levels = static_cast<int>(parse_int(tok[0]));
    m.pm.cfg.eps = static_cast<int>(parse_int(tok[1]));
    m.pm.cfg.budget = static_cast<int>(parse_int(tok[2]));
    m.pm.dim = static_cast<int>(parse_int(tok[3]));
    const std::int64_t n_sig = parse_int(tok[4]);
    if (m.pm.dim < 0 || n_sig < 0) r.fail("pm: negative shape");
    m.pm.sigs.clear();
    for (std::int64_t i = 0; i < n_sig; ++i) {
      std::vector<std::string_view> row = r.next_tokens(
          "pm signature", static_cast<std::size_t>(1 + m.pm.dim));
      PmSignature sig;
      sig.source_count = parse_int(row[0]);
      sig.cells.resize(static_cast<std::size_t>(m.pm.dim));
      for (int k = 0; k < m.pm.dim; ++k) {
        const std::int64_t cell = parse_int(row[static_cast<std::size_t>(k) + 1]);
        if (cell < 0 || cell > 255) r.fail("pm signature: cell out of range");
        sig.cells[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(cell);
      }
      m.pm.sigs.push_back(std::move(sig));
    }
  }

  {
    std::vector<std::string_view> tok = r.expect_keyword("weighting");
    if (tok.size() != 1) r.fail("weighting: expected a count");
    const std::int64_t n = parse_int(tok[0]);
    m.weighting.clear();
    for (std::int64_t i = 0; i < n; ++i) {
      std::vector<std::string_view> head = r.expect_keyword("base");
      if (head.size() != 2) r.fail("base: expected index and level count");
      WeightingFunction w;
      w.base_index = static_cast<int>(parse_int(head[0]));
      const std::int64_t levels = parse_int(head[1]);
      if (levels < 0) r.fail("base: negative level count");
      w.levels =
          parse_doubles(r, "weight levels", static_cast<std::size_t>(levels));
      m.weighting.push_back(std::move(w));
    }
  }
  r.expect_keyword("end");
  if (!r.done()) r.fail("trailing content after 'end'");
  return mf;
}

void save_model(const ModelFile& mf, const std::string& path) {
  write_file(path, model_to_string(mf));
}

ModelFile load_model(const std::string& path) {
  try {
    return model_from_string(read_file(path));
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// layout
// ---------------------------------------------------------------------------

void save_layout(const Layout& l, const RunConfig& cfg, const std::string& path) {
  std::string out = "LAYOUT v1 " + fmt_int(l.width) + " " + fmt_int(l.height) +
                    " " + fmt_int(static_cast<std::int64_t>(l.seed)) + "\n";
  out += cfg_comment_block(cfg);
  for (const Rect& r : l.rects)
    out += "RECT " + fmt_int(r.x1) + " " + fmt_int(r.y1) + " " + fmt_int(r.x2) +
           " " + fmt_int(r.y2) + "\n";
  write_file(path, out);
}

Layout load_layout(const std::string& path) {
  LineReader r(read_file(path), path);
  Layout l;
  {
    std::vector<std::string_view> tok = r.expect_keyword("LAYOUT");
    if (tok.size() != 4 || tok[0] != "v1")
      r.fail("expected 'LAYOUT v1 <width> <height> <seed>'");
    l.width = parse_int(tok[1]);
    l.height = parse_int(tok[2]);
    l.seed = static_cast<std::uint64_t>(parse_int(tok[3]));
  }
  while (!r.done()) {
    const std::string& line = r.next("RECT record");
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string_view> tok = split_ws(line);
    if (tok.size() != 5 || tok[0] != "RECT")
      r.fail("expected 'RECT x1 y1 x2 y2'");
    Rect rect;
    rect.x1 = parse_int(tok[1]);
    rect.y1 = parse_int(tok[2]);
    rect.x2 = parse_int(tok[3]);
    rect.y2 = parse_int(tok[4]);
    l.rects.push_back(rect);
  }
  return l;
}

// ---------------------------------------------------------------------------
// CSV files
// ---------------------------------------------------------------------------

void save_labels(const std::vector<FragmentLabel>& labels, const RunConfig& cfg,
                 const std::string& path) {
  std::string out = cfg_comment_block(cfg);
  out += "fragment_id,epe_nm,class,t_litho\n";
  for (const FragmentLabel& l : labels) {
    out += fmt_int(l.fragment_id);
    out += ',';
    out += fmt_double(l.epe_nm);
    out += ',';
    out += hotspot_class_name(l.clazz);
    out += ',';
    out += fmt_double(l.t_litho);
    out += '\n';
  }
  write_file(path, out);
}

std::vector<FragmentLabel> load_labels(const std::string& path) {
  LineReader r(read_file(path), path);
  std::vector<FragmentLabel> out;
  bool header_seen = false;
  while (!r.done()) {
    const std::string& line = r.next("label row");
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != "fragment_id,epe_nm,class,t_litho")
        r.fail("unexpected header '" + line + "'");
      header_seen = true;
      continue;
    }
    std::vector<std::string_view> tok = split_csv(line);
    if (tok.size() != 4) r.fail("expected 4 columns");
    FragmentLabel l;
    l.fragment_id = parse_int(tok[0]);
    l.epe_nm = parse_double(tok[1]);
    l.clazz = hotspot_class_from_name(std::string(tok[2]));
    l.t_litho = parse_double(tok[3]);
    out.push_back(l);
  }
  if (!header_seen) throw DataError(path + ": missing header row");
  return out;
}

void save_samples(const std::vector<CalibSample>& samples, const RunConfig& cfg,
                  const std::string& path) {
  std::string out = cfg_comment_block(cfg);
  const std::size_t dim = samples.empty() ? 0 : samples[0].features.values.size();
  out += "fragment_id,t_litho";
  for (std::size_t k = 0; k < dim; ++k)
    out += ",f" + fmt_int(static_cast<std::int64_t>(k));
  out += '\n';
  for (const CalibSample& s : samples) {
    if (s.features.values.size() != dim)
      throw DataError("save_samples: inconsistent feature dimensions");
    if (s.features.normalized)
      throw DataError("save_samples: refusing to persist normalized features");
    out += fmt_int(s.features.fragment_id);
    out += ',';
    out += fmt_double(s.t_litho);
    for (double v : s.features.values) {
      out += ',';
      out += fmt_double(v);
    }
    out += '\n';
  }
  write_file(path, out);
}

std::vector<CalibSample> load_samples(const std::string& path,
                                      const RunConfig* expect_cfg) {
  LineReader r(read_file(path), path);
  std::map<std::string, std::string> file_cfg;
  std::vector<CalibSample> out;
  std::size_t dim = 0;
  bool header_seen = false;
  while (!r.done()) {
    const std::string& line = r.next("sample row");
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::vector<std::string_view> tok = split_ws(line);
      if (tok.size() == 4 && tok[0] == "#" && tok[1] == "cfg")
        file_cfg[std::string(tok[2])] = std::string(tok[3]);
      continue;
    }
    if (!header_seen) {
      std::vector<std::string_view> tok = split_csv(line);
      if (tok.size() < 2 || tok[0] != "fragment_id" || tok[1] != "t_litho")
        r.fail("unexpected header '" + line + "'");
      dim = tok.size() - 2;
      for (std::size_t k = 0; k < dim; ++k)
        if (tok[k + 2] != "f" + fmt_int(static_cast<std::int64_t>(k)))
          r.fail("unexpected feature column '" + std::string(tok[k + 2]) + "'");
      header_seen = true;
      continue;
    }
    std::vector<std::string_view> tok = split_csv(line);
    if (tok.size() != dim + 2)
      r.fail("expected " + fmt_int(static_cast<std::int64_t>(dim + 2)) +
             " columns, got " + fmt_int(static_cast<std::int64_t>(tok.size())));
    CalibSample s;
    s.features.fragment_id = parse_int(tok[0]);
    s.t_litho = parse_double(tok[1]);
    s.features.values.resize(dim);
    for (std::size_t k = 0; k < dim; ++k)
      s.features.values[k] = parse_double(tok[k + 2]);
    out.push_back(std::move(s));
  }
  if (!header_seen) throw DataError(path + ": missing header row");

  if (expect_cfg) {
    // Refuse to mix extractions with a run configured differently on any key
    // that changes feature or label semantics.
    static const char* kChecked[] = {"features.window", "features.grid",
                                     "frag_len",        "oracle.sigma",
                                     "oracle.epe_c0",   "oracle.epe_c1",
                                     "target"};
    std::map<std::string, std::string> want;
    for (const auto& [k, v] : config_echo(*expect_cfg)) want[k] = v;
    for (const char* key : kChecked) {
      const auto it = file_cfg.find(key);
      if (it == file_cfg.end()) continue;  // older/hand-written file: skip
      if (it->second != want[key])
        throw DataError(path + ": config mismatch on '" + std::string(key) +
                        "': file has " + it->second + ", run has " + want[key]);
    }
  }
  return out;
}

void save_detections(const std::vector<Detection>& dets, const RunConfig& cfg,
                     const std::string& path) {
  std::string out = cfg_comment_block(cfg);
  out += "fragment_id,t_meta,score\n";
  for (const Detection& d : dets) {
    if (d.t_meta != 1 && d.t_meta != -1)
      throw DataError("save_detections: t_meta must be +-1");
    out += fmt_int(d.fragment_id);
    out += ',';
    out += fmt_int(d.t_meta);
    out += ',';
    out += fmt_double(d.score);
    out += '\n';
  }
  write_file(path, out);
}

std::vector<Detection> load_detections(const std::string& path) {
  LineReader r(read_file(path), path);
  std::vector<Detection> out;
  bool header_seen = false;
  while (!r.done()) {
    const std::string& line = r.next("detection row");
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != "fragment_id,t_meta,score")
        r.fail("unexpected header '" + line + "'");
      header_seen = true;
      continue;
    }
    std::vector<std::string_view> tok = split_csv(line);
    if (tok.size() != 3) r.fail("expected 3 columns");
    Detection d;
    d.fragment_id = parse_int(tok[0]);
    d.t_meta = static_cast<int>(parse_int(tok[1]));
    if (d.t_meta != 1 && d.t_meta != -1) r.fail("t_meta must be +-1");
    d.score = parse_double(tok[2]);
    out.push_back(d);
  }
  if (!header_seen) throw DataError(path + ": missing header row");
  return out;
}

void save_reports(const std::vector<DetectionReport>& rows, const RunConfig& cfg,
                  const std::string& path) {
  std::string out = cfg_comment_block(cfg);
  out += "theta,hit,extra,actual,accuracy,false_alarm_ratio,psi\n";
  for (const DetectionReport& r : rows) {
    out += fmt_double(r.theta);
    out += ',';
    out += fmt_int(r.hit);
    out += ',';
    out += fmt_int(r.extra);
    out += ',';
    out += fmt_int(r.actual);
    out += ',';
    out += fmt_double(r.accuracy);
    out += ',';
    out += fmt_double(r.false_alarm_ratio);
    out += ',';
    out += fmt_double(r.psi);
    out += '\n';
  }
  write_file(path, out);
}

std::vector<DetectionReport> load_reports(const std::string& path) {
  LineReader r(read_file(path), path);
  std::vector<DetectionReport> out;
  bool header_seen = false;
  while (!r.done()) {
    const std::string& line = r.next("report row");
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != "theta,hit,extra,actual,accuracy,false_alarm_ratio,psi")
        r.fail("unexpected header '" + line + "'");
      header_seen = true;
      continue;
    }
    std::vector<std::string_view> tok = split_csv(line);
    if (tok.size() != 7) r.fail("expected 7 columns");
    DetectionReport rep;
    rep.theta = parse_double(tok[0]);
    rep.hit = parse_int(tok[1]);
    rep.extra = parse_int(tok[2]);
    rep.actual = parse_int(tok[3]);
    rep.accuracy = parse_double(tok[4]);
    rep.false_alarm_ratio = parse_double(tok[5]);
    rep.psi = parse_double(tok[6]);
    rep.degenerate = rep.actual == 0;
    out.push_back(rep);
  }
  if (!header_seen) throw DataError(path + ": missing header row");
  return out;
}

}  // namespace epic
