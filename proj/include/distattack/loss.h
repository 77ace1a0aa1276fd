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

#ifndef DISTATTACK_LOSS_H_
#define DISTATTACK_LOSS_H_

#include <cstddef>

#include "distattack/types.h"

namespace distattack {

inline constexpr double kProbFloor = 1e-12;

// Index of the largest probability; ties resolve to the lowest index.
std::size_t argmax(ConstSpan probs);

// Hinge on the log-probability margin of the true class over the best other
// class: max(0, log p_y - max_{c != y} log p_c). Probabilities are floored at
// kProbFloor before the logarithm.
double cw_loss(ConstSpan probs, std::size_t true_label);

// -p_y.
double neg_prob_loss(ConstSpan probs, std::size_t true_label);

bool is_adversarial(ConstSpan probs, std::size_t true_label);

enum class LossKind { kCarliniWagner, kNegativeProbability };

double attack_loss(LossKind kind, ConstSpan probs, std::size_t true_label);

}  // namespace distattack

#endif  // DISTATTACK_LOSS_H_
