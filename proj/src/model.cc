// src/model.cc

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

#include "sqalab/model.h"

#include <cmath>
#include <string>

#include "sqalab/error.h"
#include "text_util.h"

namespace sqalab {

namespace {

constexpr std::string_view kModelMagic = "sqa-lab-model";
constexpr int kModelVersion = 1;

void CheckShape(const ModelParams &params) {
  if (params.input_dim == 0 ||
      params.theta.size() != ModelParams::ParameterCount(
                                 params.input_dim, params.hidden_width)) {
    throw Error(ErrorCode::kDimension, "model parameters have wrong shape");
  }
}

void CheckFeatures(const ModelParams &params, const FeatureMatrix &x) {
  if (x.cols() != params.input_dim) {
    throw Error(ErrorCode::kDimension,
                "features have D=" + std::to_string(x.cols()) +
                    " but the model expects D=" +
                    std::to_string(params.input_dim));
  }
  if (x.rows() == 0) {
    throw Error(ErrorCode::kDimension, "features have no frames");
  }
}

// Adds dL/dtheta for one utterance into grad (scaled by `scale`) and returns
// the loss. keep_prob < 1 enables inverted dropout on hidden units.
double AccumulateExample(const ModelParams &p, const FeatureMatrix &x,
                         double y, double alpha, double scale,
                         double keep_prob, Rng *rng,
                         std::vector<double> &grad) {
  CheckFeatures(p, x);
  const std::size_t D = p.input_dim;
  const std::size_t H = p.hidden_width;
  const std::size_t T = x.rows();
  const double inv_t = 1.0 / static_cast<double>(T);
  const double *theta = p.theta.data();

  std::vector<double> q(T);
  // Hidden activations after dropout, T x H.
  std::vector<double> act(T * H);
  std::vector<double> mask(T * H, 1.0);
  std::bernoulli_distribution keep(keep_prob);
  for (std::size_t t = 0; t < T; ++t) {
    auto xt = x.row(t);
    if (H == 0) {
      double s = theta[D];
      for (std::size_t d = 0; d < D; ++d) s += theta[d] * xt[d];
      q[t] = s;
      continue;
    }
    const double *W = theta;
    const double *c = theta + H * D;
    const double *v = c + H;
    const double bias = v[H];
    double s = bias;
    for (std::size_t h = 0; h < H; ++h) {
      double a = c[h];
      for (std::size_t d = 0; d < D; ++d) a += W[h * D + d] * xt[d];
      double z = std::tanh(a);
      if (keep_prob < 1.0) {
        mask[t * H + h] = keep(*rng) ? 1.0 / keep_prob : 0.0;
      }
      act[t * H + h] = z;
      s += v[h] * z * mask[t * H + h];
    }
    q[t] = s;
  }

  double y_hat = 0.0;
  for (double qt : q) y_hat += qt;
  y_hat *= inv_t;
  const LossBreakdown loss = ComputeLoss(y_hat, y, q, alpha);

  // dL/dq_t = 2 (y_hat - y) / T + 2 alpha (q_t - y) / T
  for (std::size_t t = 0; t < T; ++t) {
    const double g =
        scale * (2.0 * (y_hat - y) * inv_t + 2.0 * alpha * (q[t] - y) * inv_t);
    auto xt = x.row(t);
    if (H == 0) {
      for (std::size_t d = 0; d < D; ++d) grad[d] += g * xt[d];
      grad[D] += g;
      continue;
    }
    const double *v = theta + H * D + H;
    double *gW = grad.data();
    double *gc = gW + H * D;
    double *gv = gc + H;
    for (std::size_t h = 0; h < H; ++h) {
      const double z = act[t * H + h];
      const double m = mask[t * H + h];
      gv[h] += g * z * m;
      const double delta = g * v[h] * m * (1.0 - z * z);
      gc[h] += delta;
      for (std::size_t d = 0; d < D; ++d) gW[h * D + d] += delta * xt[d];
    }
    gv[H] += g;
  }
  return loss.total;
}

}  // namespace

std::size_t ModelParams::ParameterCount(std::size_t input_dim,
                                        std::size_t hidden_width) {
  if (hidden_width == 0) return input_dim + 1;
  return hidden_width * input_dim + 2 * hidden_width + 1;
}

ModelParams ModelParams::Zeros(std::size_t input_dim,
                               std::size_t hidden_width) {
  if (input_dim == 0) {
    throw Error(ErrorCode::kDimension, "model input_dim must be >= 1");
  }
  ModelParams p;
  p.input_dim = input_dim;
  p.hidden_width = hidden_width;
  p.theta.assign(ParameterCount(input_dim, hidden_width), 0.0);
  return p;
}

ModelParams ModelParams::RandomNormal(std::size_t input_dim,
                                      std::size_t hidden_width, double stddev,
                                      Rng &rng) {
  ModelParams p = Zeros(input_dim, hidden_width);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (double &w : p.theta) w = stddev * normal(rng);
  return p;
}

ForwardResult Forward(const ModelParams &params, const FeatureMatrix &features) {
  CheckShape(params);
  CheckFeatures(params, features);
  const std::size_t D = params.input_dim;
  const std::size_t H = params.hidden_width;
  const double *theta = params.theta.data();
  ForwardResult out;
  out.frame_scores.resize(features.rows());
  double sum = 0.0;
  for (std::size_t t = 0; t < features.rows(); ++t) {
    auto xt = features.row(t);
    double s;
    if (H == 0) {
      s = theta[D];
      for (std::size_t d = 0; d < D; ++d) s += theta[d] * xt[d];
    } else {
      const double *W = theta;
      const double *c = theta + H * D;
      const double *v = c + H;
      s = v[H];
      for (std::size_t h = 0; h < H; ++h) {
        double a = c[h];
        for (std::size_t d = 0; d < D; ++d) a += W[h * D + d] * xt[d];
        s += v[h] * std::tanh(a);
      }
    }
    out.frame_scores[t] = s;
    sum += s;
  }
  out.utterance_score = sum / static_cast<double>(features.rows());
  return out;
}

LossBreakdown ComputeLoss(double utterance_score, double target,
                          std::span<const double> frame_scores, double alpha) {
  if (frame_scores.empty()) {
    throw Error(ErrorCode::kPrecondition, "loss needs at least one frame");
  }
  LossBreakdown loss;
  const double e = utterance_score - target;
  loss.utterance_term = e * e;
  double sum = 0.0;
  for (double q : frame_scores) sum += (q - target) * (q - target);
  loss.frame_term = sum / static_cast<double>(frame_scores.size());
  loss.total = loss.utterance_term + alpha * loss.frame_term;
  return loss;
}

double MeanLoss(const ModelParams &params, std::span<const Example> examples,
                double alpha) {
  if (examples.empty()) {
    throw Error(ErrorCode::kPrecondition, "mean loss over an empty set");
  }
  double total = 0.0;
  for (const Example &ex : examples) {
    const ForwardResult f = Forward(params, ex.features.get());
    total += ComputeLoss(f.utterance_score, ex.target, f.frame_scores, alpha)
                 .total;
  }
  return total / static_cast<double>(examples.size());
}

std::vector<double> Gradient(const ModelParams &params,
                             std::span<const Example> batch, double alpha) {
  Rng unused;
  return GradientWithDropout(params, batch, alpha, 0.0, unused);
}

std::vector<double> GradientWithDropout(const ModelParams &params,
                                        std::span<const Example> batch,
                                        double alpha, double dropout_rate,
                                        Rng &rng, double *loss) {
  CheckShape(params);
  if (batch.empty()) {
    throw Error(ErrorCode::kPrecondition, "gradient of an empty batch");
  }
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0)) {
    throw Error(ErrorCode::kRange, "dropout rate must lie in [0, 1)");
  }
  const double keep_prob =
      params.hidden_width == 0 ? 1.0 : 1.0 - dropout_rate;
  const double scale = 1.0 / static_cast<double>(batch.size());
  std::vector<double> grad(params.theta.size(), 0.0);
  double total = 0.0;
  for (const Example &ex : batch) {
    total += AccumulateExample(params, ex.features.get(), ex.target, alpha,
                               scale, keep_prob, &rng, grad);
  }
  if (loss) *loss = total * scale;
  return grad;
}

AdamState AdamState::ZerosLike(const ModelParams &params) {
  AdamState s;
  s.m.assign(params.theta.size(), 0.0);
  s.v.assign(params.theta.size(), 0.0);
  return s;
}

void AdamStep(ModelParams &params, AdamState &state,
              std::span<const double> gradient, const AdamConfig &config) {
  const std::size_t n = params.theta.size();
  if (gradient.size() != n || state.m.size() != n || state.v.size() != n) {
    throw Error(ErrorCode::kDimension, "Adam state does not match the model");
  }
  ++state.step;
  const double t = static_cast<double>(state.step);
  const double correction1 = 1.0 - std::pow(config.beta1, t);
  const double correction2 = 1.0 - std::pow(config.beta2, t);
  for (std::size_t i = 0; i < n; ++i) {
    const double g = gradient[i];
    state.m[i] = config.beta1 * state.m[i] + (1.0 - config.beta1) * g;
    state.v[i] = config.beta2 * state.v[i] + (1.0 - config.beta2) * g * g;
    const double m_hat = state.m[i] / correction1;
    const double v_hat = state.v[i] / correction2;
    params.theta[i] -=
        config.learning_rate * m_hat / (std::sqrt(v_hat) + config.epsilon);
  }
}

void WriteModel(std::ostream &out, const ModelParams &params) {
  CheckShape(params);
  out << kModelMagic << ' ' << kModelVersion << '\n'
      << "input_dim " << params.input_dim << '\n'
      << "hidden_width " << params.hidden_width << '\n'
      << "parameters " << params.theta.size() << '\n';
  for (double w : params.theta) out << FormatSignificant(w, 9) << '\n';
}

ModelParams ReadModel(std::istream &in, std::string_view source_name) {
  const std::string source(source_name);
  LineReader reader(in);
  std::string line;
  auto fail = [&](const std::string &what) {
    return Error(ErrorCode::kParse, source + " line " +
                                        std::to_string(reader.line_number()) +
                                        ": " + what);
  };
  auto keyed = [&](std::string_view key) -> std::uint64_t {
    if (!reader.Next(&line)) throw fail("missing '" + std::string(key) + "'");
    auto fields = SplitFields(line, ' ');
    std::uint64_t value = 0;
    if (fields.size() != 2 || fields[0] != key ||
        !ParseUint64(fields[1], &value)) {
      throw fail("expected '" + std::string(key) + " <count>'");
    }
    return value;
  };

  if (!reader.Next(&line)) throw fail("empty model file");
  const std::string expected =
      std::string(kModelMagic) + " " + std::to_string(kModelVersion);
  if (line != expected) {
    throw fail("expected header '" + expected + "', got '" + line + "'");
  }
  ModelParams params;
  params.input_dim = keyed("input_dim");
  params.hidden_width = keyed("hidden_width");
  const std::uint64_t count = keyed("parameters");
  if (params.input_dim == 0 ||
      count != ModelParams::ParameterCount(params.input_dim,
                                           params.hidden_width)) {
    throw fail("parameter count does not match the layer dims");
  }
  params.theta.resize(count);
  for (double &w : params.theta) {
    if (!reader.Next(&line)) throw fail("missing weights");
    if (!ParseDouble(line, &w) || !std::isfinite(w)) {
      throw fail("bad weight '" + line + "'");
    }
  }
  return params;
}

}  // namespace sqalab
