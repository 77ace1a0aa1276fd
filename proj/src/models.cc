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

#include "distattack/models.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "distattack/loss.h"
#include "distattack/rng.h"

namespace distattack {

void MlpSpec::validate() const {
  if (widths.size() < 2) throw ShapeError("network needs at least two widths");
  if (layers.size() + 1 != widths.size()) {
    throw ShapeError("network has " + std::to_string(layers.size()) +
                     " layers for " + std::to_string(widths.size()) + " widths");
  }
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto& layer = layers[l];
    if (layer.inputs != widths[l] || layer.outputs != widths[l + 1] ||
        layer.weights.size() != layer.inputs * layer.outputs ||
        layer.bias.size() != layer.outputs) {
      throw ShapeError("layer " + std::to_string(l) + " does not match widths");
    }
  }
  if (activation == Activation::kQuantizedRelu && quantize_levels < 2) {
    throw std::invalid_argument("quantized activation needs at least 2 levels");
  }
}

MlpSpec MlpSpec::zeros(std::vector<std::size_t> widths, Activation activation,
                       int quantize_levels) {
  MlpSpec spec;
  spec.widths = std::move(widths);
  spec.activation = activation;
  spec.quantize_levels = quantize_levels;
  for (std::size_t l = 0; l + 1 < spec.widths.size(); ++l) {
    DenseLayer layer;
    layer.inputs = spec.widths[l];
    layer.outputs = spec.widths[l + 1];
    layer.weights.assign(layer.inputs * layer.outputs, 0.0);
    layer.bias.assign(layer.outputs, 0.0);
    spec.layers.push_back(std::move(layer));
  }
  return spec;
}

double quantize_activation(double a, int levels) {
  const double step = kActivationMax / static_cast<double>(levels - 1);
  const double clamped = std::clamp(a, 0.0, kActivationMax);
  return std::round(clamped / step) * step;
}

Vector forward_logits(const MlpSpec& spec, ConstSpan x, const HiddenHook& hook) {
  if (x.size() != spec.input_dim()) {
    throw ShapeError("input has " + std::to_string(x.size()) +
                     " entries, network expects " +
                     std::to_string(spec.input_dim()));
  }
  Vector current(x.begin(), x.end());
  Vector next;
  for (std::size_t l = 0; l < spec.layers.size(); ++l) {
    const DenseLayer& layer = spec.layers[l];
    next.assign(layer.bias.begin(), layer.bias.end());
    for (std::size_t o = 0; o < layer.outputs; ++o) {
      const double* row = layer.weights.data() + o * layer.inputs;
      double acc = 0.0;
      for (std::size_t i = 0; i < layer.inputs; ++i) acc += row[i] * current[i];
      next[o] += acc;
    }
    const bool hidden = l + 1 < spec.layers.size();
    if (hidden) {
      for (double& a : next) {
        a = std::max(a, 0.0);
        if (spec.activation == Activation::kQuantizedRelu) {
          a = quantize_activation(a, spec.quantize_levels);
        }
      }
      if (hook) hook(l, next);
    }
    current.swap(next);
  }
  return current;
}

Vector softmax(ConstSpan logits) {
  const double top = *std::max_element(logits.begin(), logits.end());
  Vector out(logits.size());
  double total = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - top);
    total += out[i];
  }
  for (double& p : out) p /= total;
  return out;
}

Vector forward(const MlpSpec& spec, ConstSpan x, const HiddenHook& hook) {
  return softmax(forward_logits(spec, x, hook));
}

MlpModel::MlpModel(MlpSpec spec) : spec_(std::move(spec)) { spec_.validate(); }

Vector MlpModel::query(ConstSpan x, std::uint64_t) const {
  return forward(spec_, x);
}

std::string MlpModel::describe() const {
  std::ostringstream os;
  os << "mlp(";
  for (std::size_t i = 0; i < spec_.widths.size(); ++i) {
    os << (i ? "-" : "") << spec_.widths[i];
  }
  os << ")";
  return os.str();
}

ConstantModel::ConstantModel(std::size_t input_dim, Vector probs)
    : input_dim_(input_dim), probs_(std::move(probs)) {}

Vector ConstantModel::query(ConstSpan x, std::uint64_t) const {
  if (x.size() != input_dim_) throw ShapeError("constant model: input size mismatch");
  return probs_;
}

namespace {

class QuantizedModel final : public BlackboxModel {
 public:
  QuantizedModel(const MlpModel& inner, int levels) : spec_(inner.spec()) {
    spec_.activation = Activation::kQuantizedRelu;
    spec_.quantize_levels = levels;
  }
  Vector query(ConstSpan x, std::uint64_t) const override {
    return forward(spec_, x);
  }
  std::size_t input_dim() const override { return spec_.input_dim(); }
  std::size_t num_classes() const override { return spec_.num_classes(); }
  std::string describe() const override {
    return "quantize:" + std::to_string(spec_.quantize_levels);
  }

 private:
  MlpSpec spec_;
};

// Stochastic activation pruning: unit i of a hidden layer survives with
// probability q_i = 1 - (1 - p_i)^k, p_i = |a_i| / sum |a_j|, k = layer width,
// and survivors are divided by q_i.
class SapModel final : public BlackboxModel {
 public:
  explicit SapModel(std::shared_ptr<const MlpModel> inner)
      : inner_(std::move(inner)) {}

  Vector query(ConstSpan x, std::uint64_t seed) const override {
    auto hook = [seed](std::size_t layer, std::span<double> act) {
      double total = 0.0;
      for (double a : act) total += std::abs(a);
      if (total <= 0.0) return;
      Rng rng(derive_seed(seed, {layer}));
      const double draws = static_cast<double>(act.size());
      for (double& a : act) {
        const double p = std::abs(a) / total;
        const double keep = 1.0 - std::pow(1.0 - p, draws);
        const double u = rng.uniform();
        a = (keep > 0.0 && u < keep) ? a / keep : 0.0;
      }
    };
    return forward(inner_->spec(), x, hook);
  }
  std::size_t input_dim() const override { return inner_->input_dim(); }
  std::size_t num_classes() const override { return inner_->num_classes(); }
  std::string describe() const override { return "sap"; }

 private:
  std::shared_ptr<const MlpModel> inner_;
};

class InputNoiseModel final : public BlackboxModel {
 public:
  InputNoiseModel(ModelPtr inner, double amplitude)
      : inner_(std::move(inner)), amplitude_(amplitude) {}

  Vector query(ConstSpan x, std::uint64_t seed) const override {
    if (amplitude_ == 0.0) return inner_->query(x, seed);
    Rng rng(derive_seed(seed, {0x6e6f697365ULL}));
    Vector noisy(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      noisy[i] = std::clamp(x[i] + rng.uniform(-amplitude_, amplitude_), 0.0, 1.0);
    }
    return inner_->query(noisy, derive_seed(seed, {1}));
  }
  std::size_t input_dim() const override { return inner_->input_dim(); }
  std::size_t num_classes() const override { return inner_->num_classes(); }
  std::string describe() const override {
    std::ostringstream os;
    os << "noise:" << amplitude_;
    return os.str();
  }

 private:
  ModelPtr inner_;
  double amplitude_;
};

std::shared_ptr<const MlpModel> require_mlp(const ModelPtr& inner,
                                            const char* what) {
  auto mlp = std::dynamic_pointer_cast<const MlpModel>(inner);
  if (!mlp) {
    throw std::invalid_argument(std::string(what) +
                                " defense needs a feed-forward network");
  }
  return mlp;
}

}  // namespace

Defense parse_defense(const std::string& text) {
  if (text == "none") return Defense::none();
  if (text == "sap") return Defense::sap();
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  if (colon != std::string::npos) {
    const std::string arg = text.substr(colon + 1);
    std::size_t used = 0;
    try {
      if (head == "quantize") {
        const int levels = std::stoi(arg, &used);
        if (used == arg.size()) return Defense::quantize(levels);
      } else if (head == "noise") {
        const double amplitude = std::stod(arg, &used);
        if (used == arg.size()) return Defense::input_noise(amplitude);
      }
    } catch (const std::logic_error&) {
      // Falls through to the error below.
    }
  }
  throw std::invalid_argument("unknown defense '" + text + "'");
}

std::string to_string(const Defense& defense) {
  switch (defense.kind) {
    case DefenseKind::kNone:
      return "none";
    case DefenseKind::kQuantize:
      return "quantize:" + std::to_string(defense.levels);
    case DefenseKind::kSap:
      return "sap";
    case DefenseKind::kInputNoise: {
      std::ostringstream os;
      os << "noise:" << defense.amplitude;
      return os.str();
    }
  }
  return "none";
}

ModelPtr wrap_defense(ModelPtr inner, const Defense& defense) {
  if (!inner) throw std::invalid_argument("defense needs an inner model");
  switch (defense.kind) {
    case DefenseKind::kNone:
      return inner;
    case DefenseKind::kQuantize:
      if (defense.levels < 2) {
        throw std::invalid_argument("quantize defense needs levels >= 2");
      }
      return std::make_shared<QuantizedModel>(*require_mlp(inner, "quantize"),
                                              defense.levels);
    case DefenseKind::kSap:
      return std::make_shared<SapModel>(require_mlp(inner, "sap"));
    case DefenseKind::kInputNoise:
      if (!(defense.amplitude >= 0.0)) {
        throw std::invalid_argument("input noise amplitude must be >= 0");
      }
      return std::make_shared<InputNoiseModel>(std::move(inner), defense.amplitude);
  }
  throw std::invalid_argument("unknown defense kind");
}

std::size_t predict(const BlackboxModel& model, ConstSpan x, std::uint64_t seed) {
  return argmax(model.query(x, seed));
}

}  // namespace distattack
