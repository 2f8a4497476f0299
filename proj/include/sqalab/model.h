// include/sqalab/model.h

// Copyright 2026 The sqa-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SQALAB_MODEL_H_
#define SQALAB_MODEL_H_

// Frame-level quality regressor with average pooling to an utterance score.
// Each frame x_t (D features) is mapped to a frame score
//
//   linear (H = 0):  q_t = w . x_t + b
//   hidden (H > 0):  q_t = v . tanh(W x_t + c) + d
//
// and the utterance score is the mean of q_t over the T frames. Training
// minimises, per utterance with target y,
//
//   L = (y_hat - y)^2 + (alpha / T) * sum_t (q_t - y)^2.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <istream>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "sqalab/features.h"
#include "sqalab/random.h"

namespace sqalab {

/// All weights in one flat vector so the optimizer and gradient checks can
/// treat the model uniformly. Layout:
///   H = 0: [w (D), b]
///   H > 0: [W (H x D, row-major), c (H), v (H), d]
struct ModelParams {
  std::size_t input_dim = 0;
  std::size_t hidden_width = 0;
  std::vector<double> theta;

  static std::size_t ParameterCount(std::size_t input_dim,
                                    std::size_t hidden_width);
  static ModelParams Zeros(std::size_t input_dim, std::size_t hidden_width);
  /// Every entry drawn from N(0, stddev^2).
  static ModelParams RandomNormal(std::size_t input_dim,
                                  std::size_t hidden_width, double stddev,
                                  Rng &rng);

  bool operator==(const ModelParams &) const = default;
};

struct ForwardResult {
  std::vector<double> frame_scores;
  double utterance_score = 0.0;
};

/// Throws kDimension when features.cols() != input_dim or there are no
/// frames.
ForwardResult Forward(const ModelParams &params, const FeatureMatrix &features);

struct LossBreakdown {
  double utterance_term = 0.0;
  double frame_term = 0.0;  // mean squared frame error, before alpha
  double total = 0.0;       // utterance_term + alpha * frame_term
};

LossBreakdown ComputeLoss(double utterance_score, double target,
                          std::span<const double> frame_scores, double alpha);

struct Example {
  std::reference_wrapper<const FeatureMatrix> features;
  double target = 0.0;
};

/// Mean loss over the examples (dropout off).
double MeanLoss(const ModelParams &params, std::span<const Example> examples,
                double alpha);

/// Exact gradient of MeanLoss with respect to params.theta.
std::vector<double> Gradient(const ModelParams &params,
                             std::span<const Example> batch, double alpha);

/// Same, with inverted dropout on the hidden activations (masks drawn from
/// rng, frame by frame). Identical to Gradient when dropout_rate is 0 or the
/// model has no hidden layer. Returns the mean training loss under the masks
/// through *loss when non-null.
std::vector<double> GradientWithDropout(const ModelParams &params,
                                        std::span<const Example> batch,
                                        double alpha, double dropout_rate,
                                        Rng &rng, double *loss = nullptr);

struct AdamConfig {
  double learning_rate = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamState {
  std::vector<double> m;
  std::vector<double> v;
  std::uint64_t step = 0;

  static AdamState ZerosLike(const ModelParams &params);
  bool operator==(const AdamState &) const = default;
};

/// One bias-corrected Adam update of params.theta.
void AdamStep(ModelParams &params, AdamState &state,
              std::span<const double> gradient, const AdamConfig &config);

/// Text model file: versioned header, layer dims, then weights with nine
/// significant digits.
void WriteModel(std::ostream &out, const ModelParams &params);
ModelParams ReadModel(std::istream &in, std::string_view source_name);

}  // namespace sqalab

#endif  // SQALAB_MODEL_H_
