#pragma once

#include <cstdint>
#include <vector>

namespace epic {

// Small dense square matrix, row-major.
struct Matrix {
  int n = 0;
  std::vector<double> a;

  Matrix() = default;
  explicit Matrix(int dim) : n(dim), a(static_cast<std::size_t>(dim) * dim, 0.0) {}
  double& at(int r, int c) { return a[static_cast<std::size_t>(r) * n + c]; }
  double at(int r, int c) const { return a[static_cast<std::size_t>(r) * n + c]; }
};

// Piecewise-constant weighting function for one base: levels[l-1] is the
// weight applied when the base output falls into quantization level l.
struct WeightingFunction {
  int base_index = 0;
  std::vector<double> levels;
};

// Calibration-set base outputs: M samples x N bases, plus the +-1 targets.
struct BaseOutputs {
  int rows = 0, cols = 0;
  std::vector<double> x;  // row-major, each in [-1, 1]
  std::vector<double> t;  // +-1 per sample

  double at(int i, int k) const { return x[static_cast<std::size_t>(i) * cols + k]; }
  double& at(int i, int k) { return x[static_cast<std::size_t>(i) * cols + k]; }
  // Shape, domain, finiteness checks; throws DataError.
  void validate() const;
};

// Per-sample activation of the flattened level weights: sample i activates
// exactly one level per base, with value x_i^(k).
struct ActivationTable {
  int rows = 0, cols = 0;
  std::vector<int> flat_index;  // row-major M x N
  std::vector<double> value;    // row-major M x N
};

// Bound-constrained quadratic program min 0.5 x'Qx + c'x st x >= 0 whose
// objective plus constant_term equals calibration MSE + anchor cost for any
// feasible x (the weighting-fit problem in flattened level space).
struct QpProblem {
  Matrix Q;
  std::vector<double> c;
  double constant_term = 0.0;
  double lambda0 = 0.0;
  std::vector<int> l_per_base;
  std::vector<int> offsets;                 // flat offset of each base's levels
  std::vector<std::int64_t> level_counts;   // activations per flat level

  int total_levels() const { return Q.n; }
};

// 1-based quantization level of x in [-1,1] over L uniform bins; the upper
// edge clamps so x = +1 lands in level L. Out-of-domain input or L < 1
// raises DataError.
int quantize_index(double x, int L);

ActivationTable build_activation_table(const BaseOutputs& outputs,
                                       const std::vector<int>& l_per_base);

// Meta raw score: sum_k x_k * w_k(level(x_k)).
double meta_score(const std::vector<WeightingFunction>& weighting,
                  const double* x_row);

// +1 iff score >= theta (inclusive; theta may be +-inf sentinels).
int meta_decide(double score, double theta);

// Mean squared error of the meta score against the targets.
double meta_mse(const std::vector<WeightingFunction>& weighting,
                const BaseOutputs& outputs);

// Anchor (generality) cost lambda0 * sum_k sum_l (w_k[l] - 1)^2.
double pcost(const std::vector<WeightingFunction>& weighting, double lambda0);

// Assemble the QP from calibration outputs: Q = (2/M) A'A + 2*lambda0*I,
// c = -(2/M) A'T - 2*lambda0*1, constant = (1/M) sum T^2 + lambda0 * Ltotal,
// where A is the activation matrix. Within-base off-diagonal blocks are
// structurally zero (one level active per base per sample).
QpProblem qp_assemble(const BaseOutputs& outputs,
                      const std::vector<int>& l_per_base, double lambda0);

// 0.5 x'Qx + c'x (constant_term excluded).
double qp_objective(const QpProblem& p, const std::vector<double>& x);

// Slice a flat solution vector back into per-base weighting functions.
std::vector<WeightingFunction> weights_from_solution(const QpProblem& p,
                                                     const std::vector<double>& x);

// Quantization-noise diagnostic: sum over bases of the trapezoid quadrature
// of ((ideal_k - actual_k)(x) * x)^2 on the common grid.
double noise_mse(const std::vector<std::vector<double>>& ideal,
                 const std::vector<std::vector<double>>& actual,
                 const std::vector<double>& grid);

}  // namespace epic
