#include "epic/qp.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "epic/errors.h"

namespace epic {

PdCheck check_pd(const Matrix& q) {
  const int n = q.n;
  if (static_cast<std::size_t>(n) * n != q.a.size())
    throw DataError("check_pd: malformed matrix");
  double max_diag = 0.0, max_abs = 0.0;
  for (int i = 0; i < n; ++i) {
    max_diag = std::max(max_diag, std::abs(q.at(i, i)));
    for (int j = 0; j < n; ++j) max_abs = std::max(max_abs, std::abs(q.at(i, j)));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(q.at(i, j) - q.at(j, i)) > 1e-12 * std::max(1.0, max_abs))
        throw DataError("check_pd: matrix is not symmetric");

  const double pivot_tol = 1e-12 * max_diag;
  Matrix l(n);
  for (int k = 0; k < n; ++k) {
    double d = q.at(k, k);
    for (int j = 0; j < k; ++j) d -= l.at(k, j) * l.at(k, j);
    if (!(d > pivot_tol)) return {false, k};
    const double root = std::sqrt(d);
    l.at(k, k) = root;
    for (int i = k + 1; i < n; ++i) {
      double v = q.at(i, k);
      for (int j = 0; j < k; ++j) v -= l.at(i, j) * l.at(k, j);
      l.at(i, k) = v / root;
    }
  }
  return {true, -1};
}

QpProblem adjust_lambda0(const std::function<QpProblem(double)>& assemble,
                         double lambda0_init) {
  double lambda0 = lambda0_init;
  for (int attempt = 0; attempt <= 60; ++attempt) {
    QpProblem p = assemble(lambda0);
    if (check_pd(p.Q).pd) return p;
    lambda0 = std::max(2.0 * lambda0, 1e-6);
  }
  throw NumericError(
      "adjust_lambda0: matrix still indefinite after 60 escalations");
}

QpSolution solve_qp(const QpProblem& p, const QpSolveConfig& cfg) {
  const int n = p.total_levels();
  if (static_cast<int>(p.c.size()) != n)
    throw DataError("solve_qp: malformed problem");
  for (int i = 0; i < n; ++i)
    if (!(p.Q.at(i, i) > 0.0))
      throw NumericError("solve_qp: non-positive diagonal (matrix not PD)");

  QpSolution sol;
  sol.x.assign(static_cast<std::size_t>(n), 0.0);
  std::vector<double> g = p.c;  // gradient Qx + c at x = 0

  auto refresh_gradient = [&]() {
    for (int i = 0; i < n; ++i) {
      double v = p.c[static_cast<std::size_t>(i)];
      for (int j = 0; j < n; ++j)
        v += p.Q.at(i, j) * sol.x[static_cast<std::size_t>(j)];
      g[static_cast<std::size_t>(i)] = v;
    }
  };
  auto objective = [&]() {
    // 0.5 x'Qx + c'x == 0.5 x'(g + c) with g = Qx + c
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      s += sol.x[static_cast<std::size_t>(i)] *
           (g[static_cast<std::size_t>(i)] + p.c[static_cast<std::size_t>(i)]);
    return 0.5 * s;
  };
  auto residual = [&]() {
    double r = 0.0;
    for (int i = 0; i < n; ++i) {
      const double gi = g[static_cast<std::size_t>(i)];
      const double v =
          sol.x[static_cast<std::size_t>(i)] > 0.0 ? std::abs(gi) : std::max(0.0, -gi);
      r = std::max(r, v);
    }
    return r;
  };

  std::int64_t sweep = 0;
  while (true) {
    for (int i = 0; i < n; ++i) {
      const double qii = p.Q.at(i, i);
      const double xi = sol.x[static_cast<std::size_t>(i)];
      double xi_new = xi - g[static_cast<std::size_t>(i)] / qii;
      if (xi_new < 0.0) xi_new = 0.0;
      const double delta = xi_new - xi;
      if (delta != 0.0) {
        sol.x[static_cast<std::size_t>(i)] = xi_new;
        for (int j = 0; j < n; ++j)
          g[static_cast<std::size_t>(j)] += delta * p.Q.at(i, j);
      }
      ++sol.iterations;
    }
    ++sweep;
    if (sweep % 64 == 0) refresh_gradient();  // shed accumulated drift
    sol.objective_trace.push_back(objective());

    const double r = residual();
    if (r <= cfg.tol) {
      sol.status = QpStatus::kConverged;
      break;
    }
    if (sol.iterations >= cfg.max_iter) {
      sol.status = QpStatus::kMaxIter;
      break;
    }
  }

  refresh_gradient();
  sol.kkt_residual = residual();
  sol.objective = objective();
  return sol;
}

}  // namespace epic
