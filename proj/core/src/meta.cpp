#include "epic/meta.h"

#include <cmath>
#include <string>

#include "epic/errors.h"

namespace epic {

void BaseOutputs::validate() const {
  if (rows < 0 || cols <= 0) throw DataError("base outputs: bad shape");
  if (x.size() != static_cast<std::size_t>(rows) * cols ||
      t.size() != static_cast<std::size_t>(rows))
    throw DataError("base outputs: storage size mismatch");
  for (double v : x)
    if (!std::isfinite(v) || v < -1.0 || v > 1.0)
      throw DataError("base outputs: value outside [-1,1]");
  for (double v : t)
    if (v != 1.0 && v != -1.0)
      throw DataError("base outputs: target not in {-1,+1}");
}

int quantize_index(double x, int L) {
  if (L < 1) throw DataError("quantize_index: L must be >= 1");
  if (!(x >= -1.0 && x <= 1.0))
    throw DataError("quantize_index: input outside [-1,1]");
  int l = 1 + static_cast<int>(std::floor((x + 1.0) / 2.0 * L));
  if (l > L) l = L;  // upper edge: x == +1 belongs to the top level
  return l;
}

ActivationTable build_activation_table(const BaseOutputs& outputs,
                                       const std::vector<int>& l_per_base) {
  outputs.validate();
  if (static_cast<int>(l_per_base.size()) != outputs.cols)
    throw DataError("activation table: level spec does not match base count");
  ActivationTable at;
  at.rows = outputs.rows;
  at.cols = outputs.cols;
  at.flat_index.resize(static_cast<std::size_t>(at.rows) * at.cols);
  at.value.resize(at.flat_index.size());
  std::vector<int> offsets(l_per_base.size(), 0);
  int total = 0;
  for (std::size_t k = 0; k < l_per_base.size(); ++k) {
    if (l_per_base[k] < 1) throw DataError("activation table: L^(k) must be >= 1");
    offsets[k] = total;
    total += l_per_base[k];
  }
  for (int i = 0; i < at.rows; ++i)
    for (int k = 0; k < at.cols; ++k) {
      const double v = outputs.at(i, k);
      const int l = quantize_index(v, l_per_base[static_cast<std::size_t>(k)]);
      const std::size_t idx = static_cast<std::size_t>(i) * at.cols + k;
      at.flat_index[idx] = offsets[static_cast<std::size_t>(k)] + (l - 1);
      at.value[idx] = v;
    }
  return at;
}

double meta_score(const std::vector<WeightingFunction>& weighting,
                  const double* x_row) {
  double s = 0.0;
  for (std::size_t k = 0; k < weighting.size(); ++k) {
    const WeightingFunction& w = weighting[k];
    const int L = static_cast<int>(w.levels.size());
    const double x = x_row[k];
    s += x * w.levels[static_cast<std::size_t>(quantize_index(x, L) - 1)];
  }
  return s;
}

int meta_decide(double score, double theta) { return score >= theta ? 1 : -1; }

double meta_mse(const std::vector<WeightingFunction>& weighting,
                const BaseOutputs& outputs) {
  if (outputs.rows == 0) throw DataError("meta_mse: empty outputs");
  if (weighting.size() != static_cast<std::size_t>(outputs.cols))
    throw DataError("meta_mse: weighting does not match base count");
  double total = 0.0;
  for (int i = 0; i < outputs.rows; ++i) {
    const double s =
        meta_score(weighting, &outputs.x[static_cast<std::size_t>(i) * outputs.cols]);
    const double r = s - outputs.t[static_cast<std::size_t>(i)];
    total += r * r;
  }
  return total / static_cast<double>(outputs.rows);
}

double pcost(const std::vector<WeightingFunction>& weighting, double lambda0) {
  double total = 0.0;
  for (const WeightingFunction& w : weighting)
    for (double p : w.levels) {
      const double d = p - 1.0;
      total += d * d;
    }
  return lambda0 * total;
}

QpProblem qp_assemble(const BaseOutputs& outputs,
                      const std::vector<int>& l_per_base, double lambda0) {
  if (lambda0 < 0) throw DataError("qp_assemble: lambda0 must be >= 0");
  if (outputs.rows == 0) throw DataError("qp_assemble: empty outputs");
  const ActivationTable at = build_activation_table(outputs, l_per_base);

  QpProblem p;
  p.l_per_base = l_per_base;
  p.lambda0 = lambda0;
  int total = 0;
  for (int L : l_per_base) {
    p.offsets.push_back(total);
    total += L;
  }
  p.Q = Matrix(total);
  p.c.assign(static_cast<std::size_t>(total), 0.0);
  p.level_counts.assign(static_cast<std::size_t>(total), 0);

  const double inv_m = 1.0 / static_cast<double>(outputs.rows);
  const double two_over_m = 2.0 * inv_m;
  double t_sq = 0.0;
  for (int i = 0; i < outputs.rows; ++i) {
    const std::size_t row = static_cast<std::size_t>(i) * at.cols;
    const double ti = outputs.t[static_cast<std::size_t>(i)];
    t_sq += ti * ti;
    for (int k1 = 0; k1 < at.cols; ++k1) {
      const int idx1 = at.flat_index[row + static_cast<std::size_t>(k1)];
      const double v1 = at.value[row + static_cast<std::size_t>(k1)];
      ++p.level_counts[static_cast<std::size_t>(idx1)];
      p.c[static_cast<std::size_t>(idx1)] -= two_over_m * v1 * ti;
      for (int k2 = 0; k2 < at.cols; ++k2) {
        const int idx2 = at.flat_index[row + static_cast<std::size_t>(k2)];
        const double v2 = at.value[row + static_cast<std::size_t>(k2)];
        p.Q.at(idx1, idx2) += two_over_m * v1 * v2;
      }
    }
  }
  for (int d = 0; d < total; ++d) {
    p.Q.at(d, d) += 2.0 * lambda0;
    p.c[static_cast<std::size_t>(d)] -= 2.0 * lambda0;
  }
  p.constant_term = inv_m * t_sq + lambda0 * static_cast<double>(total);
  return p;
}

double qp_objective(const QpProblem& p, const std::vector<double>& x) {
  const int n = p.total_levels();
  if (static_cast<int>(x.size()) != n)
    throw DataError("qp_objective: dimension mismatch");
  double quad = 0.0, lin = 0.0;
  for (int i = 0; i < n; ++i) {
    lin += p.c[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
    double row = 0.0;
    for (int j = 0; j < n; ++j) row += p.Q.at(i, j) * x[static_cast<std::size_t>(j)];
    quad += x[static_cast<std::size_t>(i)] * row;
  }
  return 0.5 * quad + lin;
}

std::vector<WeightingFunction> weights_from_solution(const QpProblem& p,
                                                     const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != p.total_levels())
    throw DataError("weights_from_solution: dimension mismatch");
  std::vector<WeightingFunction> out;
  for (std::size_t k = 0; k < p.l_per_base.size(); ++k) {
    WeightingFunction w;
    w.base_index = static_cast<int>(k);
    const int off = p.offsets[k];
    w.levels.assign(x.begin() + off, x.begin() + off + p.l_per_base[k]);
    out.push_back(std::move(w));
  }
  return out;
}

double noise_mse(const std::vector<std::vector<double>>& ideal,
                 const std::vector<std::vector<double>>& actual,
                 const std::vector<double>& grid) {
  if (ideal.size() != actual.size())
    throw DataError("noise_mse: base count mismatch");
  if (grid.size() < 2) throw DataError("noise_mse: grid needs >= 2 points");
  double total = 0.0;
  for (std::size_t k = 0; k < ideal.size(); ++k) {
    if (ideal[k].size() != grid.size() || actual[k].size() != grid.size())
      throw DataError("noise_mse: curve/grid size mismatch");
    double integral = 0.0;
    auto f = [&](std::size_t j) {
      const double e = (ideal[k][j] - actual[k][j]) * grid[j];
      return e * e;
    };
    for (std::size_t j = 0; j + 1 < grid.size(); ++j)
      integral += 0.5 * (f(j) + f(j + 1)) * (grid[j + 1] - grid[j]);
    total += integral;
  }
  return total;
}

}  // namespace epic
