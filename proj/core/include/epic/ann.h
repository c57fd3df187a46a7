#pragma once

#include <cstdint>
#include <vector>

#include "epic/features.h"

namespace epic {

// Single hidden layer, identity input/output units, squashing hidden units.
struct AnnModel {
  int input_dim = 0;
  int hidden = 0;
  std::vector<double> w_in;   // hidden x input_dim, row-major
  std::vector<double> b_in;   // hidden
  std::vector<double> w_out;  // hidden
  double b_out = 0.0;
  double threshold = 0.0;     // decision threshold on the raw score
  NormParams norm;            // applied to inputs before forward()
};

struct AnnTrainConfig {
  int hidden = 16;
  double learning_rate = 0.01;
  int epochs = 200;
  double init_scale = 0.5;  // weights start uniform in (-init_scale, init_scale)
  std::uint64_t seed = 1;
};

struct AnnGradients {
  std::vector<double> w_in;
  std::vector<double> b_in;
  std::vector<double> w_out;
  double b_out = 0.0;
};

struct AnnTrainResult {
  AnnModel model;
  std::vector<double> loss_trace;  // summed squared-error loss, initial first
  double initial_loss = 0.0;
  double final_loss = 0.0;
};

// Hidden activation 2/(1+exp(-2x)) - 1; odd, saturates to +-1.
double f_hid(double x);

// Linear output of the net for a (normalized) feature vector.
double ann_forward(const AnnModel& m, const std::vector<double>& v);

// Squared-error loss 0.5*(out - y)^2 for one sample plus its exact gradient.
double ann_gradients(const AnnModel& m, const std::vector<double>& v, double y,
                     AnnGradients& out);

// Raw score in (-1,1): the forward pass squashed through f_hid.
double ann_raw_score(const AnnModel& m, const std::vector<double>& v);

// +1 iff raw score >= threshold.
int ann_decide(const AnnModel& m, const std::vector<double>& v);

// Full-batch gradient descent on summed squared error. A step that would
// raise the loss is rejected and the learning rate halves; accepted losses
// are therefore non-increasing. NaN/Inf in the loss raises NumericError
// naming the epoch.
AnnTrainResult ann_train(const std::vector<CalibSample>& normalized,
                         const AnnTrainConfig& cfg);

}  // namespace epic
