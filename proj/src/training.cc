// Copyright 2026 The distattack Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "distattack/training.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "distattack/loss.h"
#include "distattack/rng.h"

namespace distattack {
namespace {

MlpSpec initial_spec(std::size_t input_dim, std::size_t classes,
                     const TrainConfig& config) {
  std::vector<std::size_t> widths{input_dim};
  widths.insert(widths.end(), config.hidden.begin(), config.hidden.end());
  widths.push_back(classes);
  MlpSpec spec = MlpSpec::zeros(widths, config.activation, config.quantize_levels);
  Rng rng(derive_seed(config.seed, {0x696e6974ULL}));
  for (std::size_t l = 0; l < spec.layers.size(); ++l) {
    auto& layer = spec.layers[l];
    const bool hidden = l + 1 < spec.layers.size();
    const double scale = std::sqrt((hidden ? 2.0 : 1.0) / static_cast<double>(layer.inputs));
    for (double& w : layer.weights) w = scale * rng.normal();
  }
  return spec;
}

}  // namespace

TrainResult train_mlp(const LabeledDataset& data, const TrainConfig& config) {
  if (data.train.empty()) throw std::invalid_argument("training split is empty");
  TrainResult result;
  result.spec = initial_spec(data.input_dim(), data.num_classes, config);
  MlpSpec& spec = result.spec;
  const std::size_t n_layers = spec.layers.size();

  std::vector<Vector> grad_w(n_layers), grad_b(n_layers);
  std::vector<Vector> acts(n_layers + 1), deltas(n_layers);
  std::vector<std::size_t> order(data.train.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(derive_seed(config.seed, {0x73686666ULL}));
  const std::size_t batch = std::max<std::size_t>(1, config.batch_size);

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng.engine());
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < order.size(); start += batch) {
      const std::size_t stop = std::min(order.size(), start + batch);
      for (std::size_t l = 0; l < n_layers; ++l) {
        grad_w[l].assign(spec.layers[l].weights.size(), 0.0);
        grad_b[l].assign(spec.layers[l].bias.size(), 0.0);
      }
      for (std::size_t k = start; k < stop; ++k) {
        const LabeledSample& s = data.train[order[k]];
        acts[0] = s.x;
        for (std::size_t l = 0; l < n_layers; ++l) {
          const DenseLayer& layer = spec.layers[l];
          Vector& out = acts[l + 1];
          out = layer.bias;
          for (std::size_t o = 0; o < layer.outputs; ++o) {
            const double* row = layer.weights.data() + o * layer.inputs;
            for (std::size_t i = 0; i < layer.inputs; ++i) out[o] += row[i] * acts[l][i];
          }
          if (l + 1 < n_layers) {
            for (double& a : out) a = std::max(a, 0.0);
          }
        }
        const Vector probs = softmax(acts[n_layers]);
        epoch_loss -= std::log(std::max(probs[s.label], kProbFloor));
        deltas[n_layers - 1] = probs;
        deltas[n_layers - 1][s.label] -= 1.0;
        for (std::size_t l = n_layers; l-- > 0;) {
          const DenseLayer& layer = spec.layers[l];
          const Vector& d = deltas[l];
          for (std::size_t o = 0; o < layer.outputs; ++o) {
            grad_b[l][o] += d[o];
            double* g = grad_w[l].data() + o * layer.inputs;
            for (std::size_t i = 0; i < layer.inputs; ++i) g[i] += d[o] * acts[l][i];
          }
          if (l == 0) break;
          Vector& prev = deltas[l - 1];
          prev.assign(layer.inputs, 0.0);
          for (std::size_t o = 0; o < layer.outputs; ++o) {
            const double* row = layer.weights.data() + o * layer.inputs;
            for (std::size_t i = 0; i < layer.inputs; ++i) prev[i] += row[i] * d[o];
          }
          for (std::size_t i = 0; i < layer.inputs; ++i) {
            if (acts[l][i] <= 0.0) prev[i] = 0.0;
          }
        }
      }
      const double step = config.learning_rate / static_cast<double>(stop - start);
      for (std::size_t l = 0; l < n_layers; ++l) {
        auto& layer = spec.layers[l];
        for (std::size_t i = 0; i < layer.weights.size(); ++i) layer.weights[i] -= step * grad_w[l][i];
        for (std::size_t i = 0; i < layer.bias.size(); ++i) layer.bias[i] -= step * grad_b[l][i];
      }
    }
    result.final_loss = epoch_loss / static_cast<double>(order.size());
  }

  const MlpModel model(spec);
  result.train_accuracy = accuracy(model, data.train);
  result.test_accuracy = accuracy(model, data.test);
  return result;
}

double accuracy(const BlackboxModel& model,
                const std::vector<LabeledSample>& samples, std::uint64_t seed) {
  if (samples.empty()) return 0.0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (predict(model, samples[i].x, derive_seed(seed, {i})) == samples[i].label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(samples.size());
}

}  // namespace distattack
