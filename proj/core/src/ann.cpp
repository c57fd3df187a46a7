#include "epic/ann.h"

#include <cmath>
#include <string>

#include "epic/errors.h"
#include "epic/rng.h"

namespace epic {

namespace {

constexpr std::uint64_t kAnnInitTag = 0x616E6E;

void check_dims(const AnnModel& m, const std::vector<double>& v) {
  if (static_cast<int>(v.size()) != m.input_dim)
    throw DataError("ann: input dimension mismatch");
}

// Hidden pre-activations and activations for one sample.
void hidden_pass(const AnnModel& m, const std::vector<double>& v,
                 std::vector<double>& h) {
  h.resize(static_cast<std::size_t>(m.hidden));
  for (int j = 0; j < m.hidden; ++j) {
    double z = m.b_in[static_cast<std::size_t>(j)];
    const double* w = &m.w_in[static_cast<std::size_t>(j) * m.input_dim];
    for (int i = 0; i < m.input_dim; ++i) z += w[i] * v[static_cast<std::size_t>(i)];
    h[static_cast<std::size_t>(j)] = f_hid(z);
  }
}

}  // namespace

double f_hid(double x) { return 2.0 / (1.0 + std::exp(-2.0 * x)) - 1.0; }

double ann_forward(const AnnModel& m, const std::vector<double>& v) {
  check_dims(m, v);
  static thread_local std::vector<double> h;
  hidden_pass(m, v, h);
  double out = m.b_out;
  for (int j = 0; j < m.hidden; ++j)
    out += m.w_out[static_cast<std::size_t>(j)] * h[static_cast<std::size_t>(j)];
  return out;
}

double ann_gradients(const AnnModel& m, const std::vector<double>& v, double y,
                     AnnGradients& out) {
  check_dims(m, v);
  std::vector<double> h;
  hidden_pass(m, v, h);
  double o = m.b_out;
  for (int j = 0; j < m.hidden; ++j)
    o += m.w_out[static_cast<std::size_t>(j)] * h[static_cast<std::size_t>(j)];
  const double r = o - y;  // dE/d(out) for E = 0.5*(out-y)^2

  out.w_in.assign(m.w_in.size(), 0.0);
  out.b_in.assign(m.b_in.size(), 0.0);
  out.w_out.assign(m.w_out.size(), 0.0);
  out.b_out = r;
  for (int j = 0; j < m.hidden; ++j) {
    const double hj = h[static_cast<std::size_t>(j)];
    out.w_out[static_cast<std::size_t>(j)] = r * hj;
    // d f_hid / dz = (1 + f)(1 - f)
    const double back = r * m.w_out[static_cast<std::size_t>(j)] * (1.0 + hj) * (1.0 - hj);
    out.b_in[static_cast<std::size_t>(j)] = back;
    double* gw = &out.w_in[static_cast<std::size_t>(j) * m.input_dim];
    for (int i = 0; i < m.input_dim; ++i)
      gw[i] = back * v[static_cast<std::size_t>(i)];
  }
  return 0.5 * r * r;
}

double ann_raw_score(const AnnModel& m, const std::vector<double>& v) {
  return f_hid(ann_forward(m, v));
}

int ann_decide(const AnnModel& m, const std::vector<double>& v) {
  return ann_raw_score(m, v) >= m.threshold ? 1 : -1;
}

AnnTrainResult ann_train(const std::vector<CalibSample>& normalized,
                         const AnnTrainConfig& cfg) {
  if (normalized.empty()) throw DataError("ann_train: empty training set");
  if (cfg.hidden <= 0) throw DataError("ann_train: hidden count must be positive");
  const int dim = static_cast<int>(normalized[0].features.values.size());
  for (const CalibSample& s : normalized)
    if (static_cast<int>(s.features.values.size()) != dim)
      throw DataError("ann_train: inconsistent feature dimensions");

  AnnModel m;
  m.input_dim = dim;
  m.hidden = cfg.hidden;
  m.w_in.resize(static_cast<std::size_t>(cfg.hidden) * dim);
  m.b_in.resize(static_cast<std::size_t>(cfg.hidden));
  m.w_out.resize(static_cast<std::size_t>(cfg.hidden));
  Rng rng(derive_seed(cfg.seed, kAnnInitTag));
  for (double& w : m.w_in) w = rng.uniform_real(-cfg.init_scale, cfg.init_scale);
  for (double& w : m.b_in) w = rng.uniform_real(-cfg.init_scale, cfg.init_scale);
  for (double& w : m.w_out) w = rng.uniform_real(-cfg.init_scale, cfg.init_scale);
  m.b_out = rng.uniform_real(-cfg.init_scale, cfg.init_scale);

  auto batch_loss = [&](const AnnModel& model) {
    double total = 0.0;
    for (const CalibSample& s : normalized) {
      const double r = ann_forward(model, s.features.values) - s.t_litho;
      total += 0.5 * r * r;
    }
    return total;
  };

  AnnTrainResult res;
  double lr = cfg.learning_rate;
  double loss = batch_loss(m);
  if (!std::isfinite(loss))
    throw NumericError("ann_train: diverged at epoch 0 (non-finite loss)");
  res.initial_loss = loss;
  res.loss_trace.push_back(loss);

  AnnGradients g, acc;
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    acc.w_in.assign(m.w_in.size(), 0.0);
    acc.b_in.assign(m.b_in.size(), 0.0);
    acc.w_out.assign(m.w_out.size(), 0.0);
    acc.b_out = 0.0;
    for (const CalibSample& s : normalized) {
      ann_gradients(m, s.features.values, s.t_litho, g);
      for (std::size_t i = 0; i < acc.w_in.size(); ++i) acc.w_in[i] += g.w_in[i];
      for (std::size_t i = 0; i < acc.b_in.size(); ++i) acc.b_in[i] += g.b_in[i];
      for (std::size_t i = 0; i < acc.w_out.size(); ++i) acc.w_out[i] += g.w_out[i];
      acc.b_out += g.b_out;
    }

    AnnModel cand = m;
    for (std::size_t i = 0; i < cand.w_in.size(); ++i) cand.w_in[i] -= lr * acc.w_in[i];
    for (std::size_t i = 0; i < cand.b_in.size(); ++i) cand.b_in[i] -= lr * acc.b_in[i];
    for (std::size_t i = 0; i < cand.w_out.size(); ++i) cand.w_out[i] -= lr * acc.w_out[i];
    cand.b_out -= lr * acc.b_out;

    const double cand_loss = batch_loss(cand);
    if (!std::isfinite(cand_loss))
      throw NumericError("ann_train: diverged at epoch " + std::to_string(epoch));
    if (cand_loss > loss) {
      lr *= 0.5;  // reject the step, retry smaller next epoch
    } else {
      m = std::move(cand);
      loss = cand_loss;
    }
    res.loss_trace.push_back(loss);
  }

  res.final_loss = loss;
  res.model = std::move(m);
  return res;
}

}  // namespace epic
