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

#ifndef DISTATTACK_SERIALIZATION_H_
#define DISTATTACK_SERIALIZATION_H_

#include <filesystem>
#include <string>

#include "distattack/models.h"

namespace distattack {

inline constexpr int kWeightFormatVersion = 1;

// Versioned JSON document:
//   {"format": "distattack.mlp", "version": 1, "widths": [...],
//    "activation": "relu" | "quantized_relu", "quantize_levels": n,
//    "weights": [[row-major layer 0], ...], "biases": [[...], ...]}
// Doubles are written with 17 significant digits so reloads are bit exact.
std::string dump_model(const MlpSpec& spec);
MlpSpec parse_model(const std::string& text);

void save_model(const MlpSpec& spec, const std::filesystem::path& path);
MlpSpec load_model(const std::filesystem::path& path);

// Shared file helpers; errors carry the path.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace distattack

#endif  // DISTATTACK_SERIALIZATION_H_
