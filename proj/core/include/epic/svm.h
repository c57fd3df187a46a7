#pragma once

#include <cstdint>
#include <vector>

#include "epic/features.h"

namespace epic {

struct SupportVector {
  double alpha = 0.0;
  double y = 0.0;
  std::vector<double> v;  // normalized feature vector
};

struct SvmModel {
  double gamma = 0.0;
  double c_bound = 0.0;
  double bias = 0.0;
  double threshold = 0.0;  // decision threshold on the raw score
  NormParams norm;
  std::vector<SupportVector> svs;
};

struct SvmTrainConfig {
  double c = 10.0;
  double gamma = 0.0;  // 0 => 1/feature_dim
  double kkt_tol = 1e-3;
  int max_passes = 200;  // outer budget: max_passes * n pair updates
  std::uint64_t seed = 1;
  bool record_objective = false;  // dual objective after every accepted step
};

struct SvmTrainResult {
  SvmModel model;
  bool converged = false;
  double kkt_residual = 0.0;
  std::int64_t steps = 0;              // accepted pair updates
  std::vector<double> alphas;          // full alpha over the training set
  std::vector<double> objective_trace; // filled when record_objective
};

// RBF kernel exp(-gamma * ||a-b||^2).
double rbf_kernel(const std::vector<double>& a, const std::vector<double>& b,
                  double gamma);

// Projection of a dual variable onto [0, c].
double slope_func(double alpha, double c);

// Dual objective 0.5*a'Za - e'a with Z_ij = y_i y_j K(i,j).
double svm_dual_objective(const std::vector<CalibSample>& data,
                          const std::vector<double>& alphas, double gamma);

// Pairwise (SMO-style) dual descent: first index = maximal KKT violation,
// second index = seeded random among progress-making candidates. The equality
// constraint y'a = 0 is preserved by construction; every alpha stays in
// [0, C] via slope_func. Exits when the max KKT violation (with the current
// bias estimate) falls below kkt_tol, or the pass budget runs out
// (converged=false, residual reported).
SvmTrainResult svm_train(const std::vector<CalibSample>& normalized,
                         const SvmTrainConfig& cfg);

// Kernel expansion sum_i alpha_i y_i K(v, sv_i) + bias.
double svm_margin(const SvmModel& m, const std::vector<double>& v);

// Raw score in (-1,1): margin squashed through f_hid.
double svm_raw_score(const SvmModel& m, const std::vector<double>& v);

// +1 iff raw score >= threshold.
int svm_decide(const SvmModel& m, const std::vector<double>& v);

}  // namespace epic
