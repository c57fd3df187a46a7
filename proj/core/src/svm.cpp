#include "epic/svm.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "epic/ann.h"  // f_hid squash shared with the ANN scorer
#include "epic/errors.h"
#include "epic/rng.h"

namespace epic {

namespace {

constexpr std::uint64_t kSvmPickTag = 0x73766D;

double kernel_raw(const double* a, const double* b, std::size_t n, double gamma) {
  double d2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    d2 += d * d;
  }
  return std::exp(-gamma * d2);
}

}  // namespace

double rbf_kernel(const std::vector<double>& a, const std::vector<double>& b,
                  double gamma) {
  if (a.size() != b.size()) throw DataError("rbf_kernel: dimension mismatch");
  return kernel_raw(a.data(), b.data(), a.size(), gamma);
}

double slope_func(double alpha, double c) {
  if (alpha < 0.0) return 0.0;
  if (alpha > c) return c;
  return alpha;
}

double svm_dual_objective(const std::vector<CalibSample>& data,
                          const std::vector<double>& alphas, double gamma) {
  const std::size_t n = data.size();
  if (alphas.size() != n) throw DataError("svm_dual_objective: size mismatch");
  double quad = 0.0, lin = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (alphas[i] == 0.0) {
      continue;
    }
    lin += alphas[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (alphas[j] == 0.0) continue;
      const double z = data[i].t_litho * data[j].t_litho *
                       rbf_kernel(data[i].features.values,
                                  data[j].features.values, gamma);
      quad += alphas[i] * alphas[j] * z;
    }
  }
  return 0.5 * quad - lin;
}

SvmTrainResult svm_train(const std::vector<CalibSample>& normalized,
                         const SvmTrainConfig& cfg) {
  const std::size_t n = normalized.size();
  if (n < 2) throw DataError("svm_train: need at least two samples");
  const std::size_t dim = normalized[0].features.values.size();
  bool has_pos = false, has_neg = false;
  for (const CalibSample& s : normalized) {
    if (s.features.values.size() != dim)
      throw DataError("svm_train: inconsistent feature dimensions");
    if (s.t_litho == 1.0)
      has_pos = true;
    else if (s.t_litho == -1.0)
      has_neg = true;
    else
      throw DataError("svm_train: labels must be +-1");
  }
  if (!has_pos || !has_neg)
    throw DataError("svm_train: training set has a single class");

  const double C = cfg.c;
  const double gamma = cfg.gamma > 0.0 ? cfg.gamma : 1.0 / static_cast<double>(dim);
  if (C <= 0.0) throw DataError("svm_train: C must be positive");

  std::vector<const double*> xs(n);
  std::vector<double> ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = normalized[i].features.values.data();
    ys[i] = normalized[i].t_litho;
  }
  auto K = [&](std::size_t i, std::size_t j) {
    return kernel_raw(xs[i], xs[j], dim, gamma);
  };

  std::vector<double> alpha(n, 0.0);
  std::vector<double> F(n);  // f_i - y_i with f_i = sum_j a_j y_j K(i,j)
  for (std::size_t i = 0; i < n; ++i) F[i] = -ys[i];

  Rng rng(derive_seed(cfg.seed, kSvmPickTag));
  SvmTrainResult res;

  // Midpoint-rule bias when no free vector pins it exactly.
  auto bias_of = [&]() {
    double sum = 0.0;
    std::int64_t free_count = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (alpha[i] > 0.0 && alpha[i] < C) {
        sum += -F[i];
        ++free_count;
      }
    if (free_count > 0) return sum / static_cast<double>(free_count);
    double lo = -HUGE_VAL, hi = HUGE_VAL;
    for (std::size_t i = 0; i < n; ++i) {
      const bool at_zero = alpha[i] == 0.0;
      if ((at_zero && ys[i] > 0) || (!at_zero && ys[i] < 0))
        lo = std::max(lo, -F[i]);
      else
        hi = std::min(hi, -F[i]);
    }
    if (lo == -HUGE_VAL && hi == HUGE_VAL) return 0.0;
    if (lo == -HUGE_VAL) return hi;
    if (hi == HUGE_VAL) return lo;
    return 0.5 * (lo + hi);
  };

  // KKT violation of sample i under bias b: y_i*(f_i + b) - 1 = y_i*(F_i + b).
  auto violation = [&](std::size_t i, double b) {
    const double s = ys[i] * (F[i] + b);
    if (alpha[i] == 0.0) return std::max(0.0, -s);
    if (alpha[i] == C) return std::max(0.0, s);
    return std::abs(s);
  };

  const std::int64_t budget =
      static_cast<std::int64_t>(cfg.max_passes) * static_cast<std::int64_t>(n);
  std::int64_t updates = 0;
  double final_residual = 0.0;
  bool converged = false;

  if (cfg.record_objective)
    res.objective_trace.push_back(svm_dual_objective(normalized, alpha, gamma));

  while (true) {
    const double b = bias_of();
    std::size_t i1 = 0;
    double worst = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = violation(i, b);
      if (v > worst) {
        worst = v;
        i1 = i;
      }
    }
    final_residual = worst;
    if (worst <= cfg.kkt_tol) {
      converged = true;
      break;
    }
    if (updates >= budget) break;

    // Joint optimization of the (i1, i2) pair, clipped to the box while
    // preserving y'a = 0. Returns false when the pair cannot move.
    auto attempt = [&](std::size_t i1c, std::size_t i2) {
      if (i2 == i1c) return false;
      const double eta = K(i1c, i1c) + K(i2, i2) - 2.0 * K(i1c, i2);
      if (eta <= 1e-12) return false;

      const double y1 = ys[i1c], y2 = ys[i2];
      const double a1 = alpha[i1c], a2 = alpha[i2];
      double L, H;
      if (y1 != y2) {
        L = std::max(0.0, a2 - a1);
        H = std::min(C, C + a2 - a1);
      } else {
        L = std::max(0.0, a1 + a2 - C);
        H = std::min(C, a1 + a2);
      }
      if (L >= H) return false;

      double a2_new = a2 + y2 * (F[i1c] - F[i2]) / eta;
      a2_new = std::min(H, std::max(L, a2_new));
      double a1_new = a1 - y1 * y2 * (a2_new - a2);
      // Clipped arithmetic leaves 1-ulp residue at the box corners. Snap so
      // the bound-state classification (and the support-vector set) always
      // sees exact 0 and C; otherwise near-zero ghosts read as interior
      // vectors, corrupt the bias estimate, and deadlock the pair search.
      const double snap = 1e-12 * (1.0 + C);
      if (a2_new < snap)
        a2_new = 0.0;
      else if (a2_new > C - snap)
        a2_new = C;
      if (a1_new < snap)
        a1_new = 0.0;
      else if (a1_new > C - snap)
        a1_new = C;
      a1_new = slope_func(a1_new, C);
      a2_new = slope_func(a2_new, C);
      if (std::abs(a2_new - a2) + std::abs(a1_new - a1) <
          1e-14 * (a1 + a2 + a1_new + a2_new + 1.0))
        return false;

      alpha[i1c] = a1_new;
      alpha[i2] = a2_new;
      const double w1 = (a1_new - a1) * y1;
      const double w2 = (a2_new - a2) * y2;
      for (std::size_t m = 0; m < n; ++m)
        F[m] += w1 * K(i1c, m) + w2 * K(i2, m);

      ++updates;
      if (cfg.record_objective)
        res.objective_trace.push_back(
            svm_dual_objective(normalized, alpha, gamma));
      return true;
    };

    // Seeded random second index first (cheap and usually enough).
    bool stepped = false;
    for (std::size_t tries = 0; tries < n && !stepped; ++tries)
      stepped = attempt(i1, static_cast<std::size_t>(rng.uniform_int(
                                0, static_cast<std::int64_t>(n) - 1)));

    // Random picks can miss the few partners still able to move, so before
    // declaring a fixed point, sweep violators in descending order against
    // every partner. For a strictly PD kernel, pairwise optimality over all
    // pairs is the constrained optimum, so a full-sweep stall means the
    // residual genuinely cannot improve.
    if (!stepped) {
      std::vector<std::size_t> ranked;
      for (std::size_t i = 0; i < n; ++i)
        if (violation(i, b) > cfg.kkt_tol) ranked.push_back(i);
      std::sort(ranked.begin(), ranked.end(), [&](std::size_t a, std::size_t bi) {
        const double va = violation(a, b), vb = violation(bi, b);
        if (va != vb) return va > vb;
        return a < bi;  // deterministic tie order
      });
      for (std::size_t cand : ranked) {
        for (std::size_t i2 = 0; i2 < n && !stepped; ++i2)
          stepped = attempt(cand, i2);
        if (stepped) break;
      }
    }
    if (!stepped) break;  // true pairwise fixed point: report the residual
  }

  SvmModel m;
  m.gamma = gamma;
  m.c_bound = C;
  m.bias = bias_of();
  for (std::size_t i = 0; i < n; ++i)
    if (alpha[i] > 0.0)
      m.svs.push_back(SupportVector{alpha[i], ys[i], normalized[i].features.values});

  res.model = std::move(m);
  res.converged = converged;
  res.kkt_residual = final_residual;
  res.steps = updates;
  res.alphas = std::move(alpha);
  return res;
}

double svm_margin(const SvmModel& m, const std::vector<double>& v) {
  double f = m.bias;
  for (const SupportVector& sv : m.svs) {
    if (sv.v.size() != v.size()) throw DataError("svm_margin: dimension mismatch");
    f += sv.alpha * sv.y * kernel_raw(sv.v.data(), v.data(), v.size(), m.gamma);
  }
  return f;
}

double svm_raw_score(const SvmModel& m, const std::vector<double>& v) {
  return f_hid(svm_margin(m, v));
}

int svm_decide(const SvmModel& m, const std::vector<double>& v) {
  return svm_raw_score(m, v) >= m.threshold ? 1 : -1;
}

}  // namespace epic
