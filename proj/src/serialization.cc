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

#include "distattack/serialization.h"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace distattack {
namespace {

using nlohmann::json;

const json& field(const json& doc, const char* name) {
  if (!doc.is_object() || !doc.contains(name)) {
    throw ParseError(std::string("missing field '") + name + "'");
  }
  return doc.at(name);
}

template <typename T>
T field_as(const json& doc, const char* name) {
  try {
    return field(doc, name).get<T>();
  } catch (const json::exception&) {
    throw ParseError(std::string("field '") + name + "' has the wrong type");
  }
}

}  // namespace

std::string dump_model(const MlpSpec& spec) {
  spec.validate();
  json doc;
  doc["format"] = "distattack.mlp";
  doc["version"] = kWeightFormatVersion;
  doc["widths"] = spec.widths;
  doc["activation"] =
      spec.activation == Activation::kRelu ? "relu" : "quantized_relu";
  doc["quantize_levels"] = spec.quantize_levels;
  json weights = json::array(), biases = json::array();
  for (const auto& layer : spec.layers) {
    weights.push_back(layer.weights);
    biases.push_back(layer.bias);
  }
  doc["weights"] = std::move(weights);
  doc["biases"] = std::move(biases);
  return doc.dump(1) + "\n";
}

MlpSpec parse_model(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed model document: ") + e.what());
  }
  if (field_as<std::string>(doc, "format") != "distattack.mlp") {
    throw ParseError("field 'format' is not distattack.mlp");
  }
  const int version = field_as<int>(doc, "version");
  if (version != kWeightFormatVersion) {
    throw ParseError("unsupported version " + std::to_string(version) +
                     " in field 'version' (expected " +
                     std::to_string(kWeightFormatVersion) + ")");
  }
  MlpSpec spec;
  spec.widths = field_as<std::vector<std::size_t>>(doc, "widths");
  const auto activation = field_as<std::string>(doc, "activation");
  if (activation == "relu") {
    spec.activation = Activation::kRelu;
  } else if (activation == "quantized_relu") {
    spec.activation = Activation::kQuantizedRelu;
  } else {
    throw ParseError("field 'activation' has unknown value '" + activation + "'");
  }
  spec.quantize_levels = field_as<int>(doc, "quantize_levels");
  const auto weights = field_as<std::vector<Vector>>(doc, "weights");
  const auto biases = field_as<std::vector<Vector>>(doc, "biases");
  if (spec.widths.size() < 2 || weights.size() + 1 != spec.widths.size()) {
    throw ParseError("field 'weights' does not match 'widths'");
  }
  if (biases.size() != weights.size()) {
    throw ParseError("field 'biases' does not match 'widths'");
  }
  for (std::size_t l = 0; l < weights.size(); ++l) {
    DenseLayer layer{spec.widths[l], spec.widths[l + 1], weights[l], biases[l]};
    if (layer.weights.size() != layer.inputs * layer.outputs) {
      throw ParseError("field 'weights' layer " + std::to_string(l) +
                       " has the wrong size");
    }
    if (layer.bias.size() != layer.outputs) {
      throw ParseError("field 'biases' layer " + std::to_string(l) +
                       " has the wrong size");
    }
    spec.layers.push_back(std::move(layer));
  }
  try {
    spec.validate();
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid model: ") + e.what());
  }
  return spec;
}

void save_model(const MlpSpec& spec, const std::filesystem::path& path) {
  write_text_file(path, dump_model(spec));
}

MlpSpec load_model(const std::filesystem::path& path) {
  try {
    return parse_model(read_text_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

}  // namespace distattack
