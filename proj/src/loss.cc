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

#include "distattack/loss.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace distattack {
namespace {

void check_label(ConstSpan probs, std::size_t label) {
  if (probs.size() < 2 || label >= probs.size()) {
    throw std::out_of_range("label " + std::to_string(label) +
                            " out of range for " + std::to_string(probs.size()) +
                            " classes");
  }
}

}  // namespace

std::size_t argmax(ConstSpan probs) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < probs.size(); ++i) {
    if (probs[i] > probs[best]) best = i;
  }
  return best;
}

double cw_loss(ConstSpan probs, std::size_t true_label) {
  check_label(probs, true_label);
  double other = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < probs.size(); ++c) {
    if (c != true_label) other = std::max(other, probs[c]);
  }
  const double margin = std::log(std::max(probs[true_label], kProbFloor)) -
                        std::log(std::max(other, kProbFloor));
  return std::max(0.0, margin);
}

double neg_prob_loss(ConstSpan probs, std::size_t true_label) {
  check_label(probs, true_label);
  return -probs[true_label];
}

bool is_adversarial(ConstSpan probs, std::size_t true_label) {
  check_label(probs, true_label);
  return argmax(probs) != true_label;
}

double attack_loss(LossKind kind, ConstSpan probs, std::size_t true_label) {
  return kind == LossKind::kCarliniWagner ? cw_loss(probs, true_label)
                                          : neg_prob_loss(probs, true_label);
}

}  // namespace distattack
