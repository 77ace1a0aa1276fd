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

#include <cmath>
#include <filesystem>
#include <random>

#include <gtest/gtest.h>

#include "distattack/serialization.h"

namespace distattack {
namespace {

MlpSpec random_spec(std::vector<std::size_t> widths, std::uint64_t seed) {
  MlpSpec spec = MlpSpec::zeros(std::move(widths));
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 0.7);
  for (auto& layer : spec.layers) {
    for (double& w : layer.weights) w = normal(gen);
    for (double& b : layer.bias) b = normal(gen);
  }
  return spec;
}

Vector probe(std::size_t dim, double offset) {
  Vector x(dim);
  for (std::size_t i = 0; i < dim; ++i) x[i] = std::fmod(0.37 * i + offset, 1.0);
  return x;
}

TEST(Forward, ZeroWeightsGiveUniform) {
  const MlpSpec spec = MlpSpec::zeros({5, 8, 3});
  for (double p : forward(spec, probe(5, 0.1))) EXPECT_DOUBLE_EQ(p, 1.0 / 3.0);
}

TEST(Forward, SingleLinearLayer) {
  MlpSpec spec = MlpSpec::zeros({2, 3});
  spec.layers[0].weights = {1.0, 2.0, -1.0, 0.5, 0.0, 3.0};
  spec.layers[0].bias = {0.1, -0.2, 0.3};
  const Vector x{0.4, 0.6};
  const double z0 = 0.1 + 0.4 + 1.2;
  const double z1 = -0.2 - 0.4 + 0.3;
  const double z2 = 0.3 + 0.0 + 1.8;
  const double total = std::exp(z0) + std::exp(z1) + std::exp(z2);
  const Vector p = forward(spec, x);
  EXPECT_NEAR(p[0], std::exp(z0) / total, 1e-15);
  EXPECT_NEAR(p[1], std::exp(z1) / total, 1e-15);
  EXPECT_NEAR(p[2], std::exp(z2) / total, 1e-15);
}

TEST(Forward, RejectsWrongInputLength) {
  const MlpSpec spec = MlpSpec::zeros({4, 2});
  EXPECT_THROW(forward(spec, Vector(3, 0.0)), ShapeError);
}

TEST(Softmax, StableForLargeLogits) {
  const Vector p = softmax(Vector{1000.0, 1000.0, -1000.0});
  EXPECT_DOUBLE_EQ(p[0], 0.5);
  EXPECT_DOUBLE_EQ(p[1], 0.5);
  EXPECT_EQ(p[2], 0.0);
}

TEST(QuantizeActivation, TwoLevels) {
  EXPECT_EQ(quantize_activation(0.1, 2), 0.0);
  EXPECT_EQ(quantize_activation(5.9, 2), 6.0);
}

TEST(QuantizeActivation, SaturatesAndSnaps) {
  EXPECT_EQ(quantize_activation(9.0, 4), 6.0);
  EXPECT_EQ(quantize_activation(-1.0, 4), 0.0);
  EXPECT_EQ(quantize_activation(2.9, 4), 2.0);
  EXPECT_EQ(quantize_activation(3.1, 4), 4.0);
}

TEST(MlpSpec, ValidateCatchesMismatch) {
  MlpSpec spec = MlpSpec::zeros({3, 4, 2});
  spec.layers[1].bias.pop_back();
  EXPECT_THROW(spec.validate(), ShapeError);
  EXPECT_THROW(MlpModel{spec}, ShapeError);
  EXPECT_THROW(MlpSpec::zeros({3}).validate(), ShapeError);
  EXPECT_THROW(MlpSpec::zeros({3, 2}, Activation::kQuantizedRelu, 1).validate(),
               std::invalid_argument);
}

TEST(MlpModel, Describe) {
  EXPECT_EQ(MlpModel(MlpSpec::zeros({64, 32, 4})).describe(), "mlp(64-32-4)");
}

TEST(ConstantModel, IgnoresInput) {
  const ConstantModel model(3, {0.2, 0.8});
  EXPECT_EQ(model.query(Vector{0.0, 0.5, 1.0}, 1), (Vector{0.2, 0.8}));
  EXPECT_EQ(model.query(Vector{1.0, 1.0, 1.0}, 2), (Vector{0.2, 0.8}));
  EXPECT_THROW(model.query(Vector{1.0}, 0), ShapeError);
}

class DefenseTest : public ::testing::Test {
 protected:
  std::shared_ptr<const MlpModel> inner_ =
      std::make_shared<MlpModel>(random_spec({6, 10, 3}, 42));
};

TEST_F(DefenseTest, NoneIsIdentical) {
  const ModelPtr wrapped = wrap_defense(inner_, Defense::none());
  for (int k = 0; k < 5; ++k) {
    const Vector x = probe(6, 0.1 * k);
    EXPECT_EQ(wrapped->query(x, k), inner_->query(x, k));
  }
}

TEST_F(DefenseTest, ZeroNoiseIsIdentical) {
  const ModelPtr wrapped = wrap_defense(inner_, Defense::input_noise(0.0));
  for (int k = 0; k < 5; ++k) {
    const Vector x = probe(6, 0.1 * k);
    EXPECT_EQ(wrapped->query(x, 1000 + k), inner_->query(x, 0));
  }
}

TEST_F(DefenseTest, SapDeterministicPerSeed) {
  const ModelPtr sap = wrap_defense(inner_, Defense::sap());
  const Vector x = probe(6, 0.3);
  EXPECT_EQ(sap->query(x, 17), sap->query(x, 17));
  bool differs = false;
  for (std::uint64_t s = 0; s < 20 && !differs; ++s) {
    differs = sap->query(x, s) != sap->query(x, 17);
  }
  EXPECT_TRUE(differs);
}

TEST_F(DefenseTest, SapIsUnbiasedOnHiddenActivations) {
  // E[pruned and rescaled activation] equals the clean activation. A head that
  // reads hidden unit 0 into logit 0 exposes it through the probabilities.
  MlpSpec spec = inner_->spec();
  auto& head = spec.layers[1];
  std::fill(head.weights.begin(), head.weights.end(), 0.0);
  std::fill(head.bias.begin(), head.bias.end(), 0.0);
  head.weights[0] = 1.0;  // logit 0 = hidden unit 0
  auto plain = std::make_shared<MlpModel>(spec);
  const ModelPtr sap = wrap_defense(plain, Defense::sap());
  const Vector x = probe(6, 0.2);
  double clean = 0.0;
  forward(spec, x, [&](std::size_t, std::span<double> a) { clean = a[0]; });
  double mean = 0.0;
  const int n = 20000;
  for (int s = 0; s < n; ++s) {
    const Vector p = sap->query(x, static_cast<std::uint64_t>(s));
    // The other logits are 0, so logit 0 = log(p0 / p1).
    mean += std::log(p[0] / p[1]) / n;
  }
  EXPECT_NEAR(mean, clean, 0.05 * std::max(1.0, std::abs(clean)));
}

TEST_F(DefenseTest, QuantizeMatchesQuantizedSpec) {
  const ModelPtr q = wrap_defense(inner_, Defense::quantize(5));
  MlpSpec spec = inner_->spec();
  spec.activation = Activation::kQuantizedRelu;
  spec.quantize_levels = 5;
  const Vector x = probe(6, 0.7);
  EXPECT_EQ(q->query(x, 3), forward(spec, x));
  EXPECT_EQ(q->describe(), "quantize:5");
}

TEST_F(DefenseTest, NoiseIsSeeded) {
  const ModelPtr noisy = wrap_defense(inner_, Defense::input_noise(0.3));
  const Vector x = probe(6, 0.5);
  EXPECT_EQ(noisy->query(x, 9), noisy->query(x, 9));
  EXPECT_NE(noisy->query(x, 9), noisy->query(x, 10));
}

TEST_F(DefenseTest, InvalidParameters) {
  EXPECT_THROW(wrap_defense(inner_, Defense::quantize(1)), std::invalid_argument);
  EXPECT_THROW(wrap_defense(inner_, Defense::input_noise(-0.1)), std::invalid_argument);
  const ModelPtr constant = std::make_shared<ConstantModel>(6, Vector{0.5, 0.5});
  EXPECT_THROW(wrap_defense(constant, Defense::sap()), std::invalid_argument);
  EXPECT_THROW(wrap_defense(constant, Defense::quantize(4)), std::invalid_argument);
  EXPECT_NO_THROW(wrap_defense(constant, Defense::input_noise(0.1)));
  EXPECT_THROW(wrap_defense(nullptr, Defense::none()), std::invalid_argument);
}

TEST(ParseDefense, RoundTrips) {
  for (const std::string text : {"none", "sap", "quantize:8", "noise:0.25"}) {
    EXPECT_EQ(to_string(parse_defense(text)), text);
  }
  EXPECT_THROW(parse_defense("quantize"), std::invalid_argument);
  EXPECT_THROW(parse_defense("quantize:8x"), std::invalid_argument);
  EXPECT_THROW(parse_defense("noise:"), std::invalid_argument);
  EXPECT_THROW(parse_defense("thermometer"), std::invalid_argument);
}

TEST(Serialization, RoundTripIsBitExact) {
  const MlpSpec spec = random_spec({7, 5, 4, 3}, 9);
  const MlpSpec back = parse_model(dump_model(spec));
  EXPECT_EQ(back.widths, spec.widths);
  for (std::size_t l = 0; l < spec.layers.size(); ++l) {
    EXPECT_EQ(back.layers[l].weights, spec.layers[l].weights);
    EXPECT_EQ(back.layers[l].bias, spec.layers[l].bias);
  }
  for (int k = 0; k < 5; ++k) {
    const Vector x = probe(7, 0.13 * k);
    EXPECT_EQ(forward(back, x), forward(spec, x));
  }
}

TEST(Serialization, KeepsQuantizedActivation) {
  MlpSpec spec = MlpSpec::zeros({2, 3, 2}, Activation::kQuantizedRelu, 6);
  const MlpSpec back = parse_model(dump_model(spec));
  EXPECT_EQ(back.activation, Activation::kQuantizedRelu);
  EXPECT_EQ(back.quantize_levels, 6);
}

TEST(Serialization, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "distattack_model_test.json";
  const MlpSpec spec = random_spec({3, 4, 2}, 1);
  save_model(spec, path);
  const MlpSpec back = load_model(path);
  EXPECT_EQ(forward(back, probe(3, 0.4)), forward(spec, probe(3, 0.4)));
  std::filesystem::remove(path);
}

TEST(Serialization, TruncatedDocumentIsParseError) {
  const std::string text = dump_model(random_spec({3, 4, 2}, 1));
  EXPECT_THROW(parse_model(text.substr(0, text.size() / 2)), ParseError);
  EXPECT_THROW(parse_model(""), ParseError);
}

TEST(Serialization, VersionMismatchIsExplicit) {
  std::string text = dump_model(random_spec({3, 2}, 1));
  const auto key = text.find("\"version\"");
  ASSERT_NE(key, std::string::npos);
  const auto digit = text.find('1', key);
  ASSERT_NE(digit, std::string::npos);
  text[digit] = '2';
  try {
    parse_model(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("unsupported version"), std::string::npos);
  }
}

TEST(Serialization, MissingFieldNamed) {
  try {
    parse_model(R"({"format":"distattack.mlp","version":1})");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("widths"), std::string::npos);
  }
}

TEST(Serialization, MissingFileNamesPath) {
  try {
    load_model("/nonexistent/dir/model.json");
    FAIL() << "expected an error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/dir/model.json"), std::string::npos);
  }
}

}  // namespace
}  // namespace distattack
