#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "epic/meta.h"

namespace epic {

struct PdCheck {
  bool pd = false;
  int witness = -1;  // first non-positive pivot index when !pd
};

struct QpSolveConfig {
  double tol = 1e-8;               // KKT residual target
  std::int64_t max_iter = 1000000; // coordinate-step budget
};

enum class QpStatus { kConverged, kMaxIter };

struct QpSolution {
  std::vector<double> x;
  double objective = 0.0;      // 0.5 x'Qx + c'x at the solution
  double kkt_residual = 0.0;
  std::int64_t iterations = 0; // coordinate steps taken
  QpStatus status = QpStatus::kConverged;
  std::vector<double> objective_trace;  // per sweep
};

// Positive definiteness via Cholesky-type factorization with pivot tolerance
// 1e-12 * max|Q_ii|. Rejects non-symmetric input with DataError.
PdCheck check_pd(const Matrix& q);

// Reassemble with lambda0 <- max(2*lambda0, 1e-6) until check_pd passes,
// at most 60 escalations; NumericError when exhausted.
QpProblem adjust_lambda0(const std::function<QpProblem(double)>& assemble,
                         double lambda0_init);

// Projected coordinate descent from x = 0: exact per-coordinate minimization
// clamped at the x >= 0 bound, ascending sweep order. KKT residual is
// max_i of |g_i| on interior coordinates and max(0, -g_i) on bound ones,
// g = Qx + c. Deterministic; requires Q positive definite.
QpSolution solve_qp(const QpProblem& p, const QpSolveConfig& cfg);

}  // namespace epic
