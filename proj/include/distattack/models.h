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

#ifndef DISTATTACK_MODELS_H_
#define DISTATTACK_MODELS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>

#include "distattack/types.h"

namespace distattack {

enum class Activation { kRelu, kQuantizedRelu };

inline constexpr double kActivationMax = 6.0;

// Row-major `outputs x inputs` weight matrix plus bias.
struct DenseLayer {
  std::size_t inputs = 0;
  std::size_t outputs = 0;
  Vector weights;
  Vector bias;
};

// A fully connected network: widths[0] is the input dimension and
// widths.back() the number of classes. Hidden layers use `activation`; the
// output layer is followed by softmax.
struct MlpSpec {
  std::vector<std::size_t> widths;
  Activation activation = Activation::kRelu;
  int quantize_levels = 0;  // only meaningful for kQuantizedRelu
  std::vector<DenseLayer> layers;

  std::size_t input_dim() const { return widths.front(); }
  std::size_t num_classes() const { return widths.back(); }

  // Throws ShapeError if the layers do not compose with `widths`.
  void validate() const;

  // All-zero weights for the given widths.
  static MlpSpec zeros(std::vector<std::size_t> widths,
                       Activation activation = Activation::kRelu,
                       int quantize_levels = 0);
};

// Rounds a post-ReLU activation to the nearest of `levels` uniform levels on
// [0, kActivationMax]; values above the range saturate.
double quantize_activation(double a, int levels);

// Called after each hidden activation with the layer index.
using HiddenHook = std::function<void(std::size_t, std::span<double>)>;

Vector forward_logits(const MlpSpec& spec, ConstSpan x,
                      const HiddenHook& hook = {});
Vector forward(const MlpSpec& spec, ConstSpan x, const HiddenHook& hook = {});

Vector softmax(ConstSpan logits);

// Query-only classifier. Implementations are immutable and re-entrant; any
// randomness is drawn from `seed`.
class BlackboxModel {
 public:
  virtual ~BlackboxModel() = default;
  virtual Vector query(ConstSpan x, std::uint64_t seed) const = 0;
  virtual std::size_t input_dim() const = 0;
  virtual std::size_t num_classes() const = 0;
  virtual std::string describe() const = 0;
};

using ModelPtr = std::shared_ptr<const BlackboxModel>;

class MlpModel final : public BlackboxModel {
 public:
  explicit MlpModel(MlpSpec spec);

  Vector query(ConstSpan x, std::uint64_t seed) const override;
  std::size_t input_dim() const override { return spec_.input_dim(); }
  std::size_t num_classes() const override { return spec_.num_classes(); }
  std::string describe() const override;
  const MlpSpec& spec() const { return spec_; }

 private:
  MlpSpec spec_;
};

// Ignores its input; returns a fixed probability vector.
class ConstantModel final : public BlackboxModel {
 public:
  ConstantModel(std::size_t input_dim, Vector probs);

  Vector query(ConstSpan x, std::uint64_t seed) const override;
  std::size_t input_dim() const override { return input_dim_; }
  std::size_t num_classes() const override { return probs_.size(); }
  std::string describe() const override { return "constant"; }

 private:
  std::size_t input_dim_;
  Vector probs_;
};

enum class DefenseKind { kNone, kQuantize, kSap, kInputNoise };

struct Defense {
  DefenseKind kind = DefenseKind::kNone;
  int levels = 0;          // kQuantize
  double amplitude = 0.0;  // kInputNoise

  static Defense none() { return {}; }
  static Defense quantize(int levels) { return {DefenseKind::kQuantize, levels, 0.0}; }
  static Defense sap() { return {DefenseKind::kSap, 0, 0.0}; }
  static Defense input_noise(double amplitude) {
    return {DefenseKind::kInputNoise, 0, amplitude};
  }
};

// Parses "none", "quantize:<levels>", "sap", "noise:<amplitude>".
Defense parse_defense(const std::string& text);
std::string to_string(const Defense& defense);

// Wraps `inner` in a defense. kQuantize and kSap act on hidden activations
// and therefore require an MlpModel; invalid parameters throw
// std::invalid_argument.
ModelPtr wrap_defense(ModelPtr inner, const Defense& defense);

// Probability vector of `model` at `x` with no stochastic seed dependence
// beyond `seed`; convenience for accuracy checks.
std::size_t predict(const BlackboxModel& model, ConstSpan x, std::uint64_t seed);

}  // namespace distattack

#endif  // DISTATTACK_MODELS_H_
