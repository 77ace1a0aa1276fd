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

#include "distattack/init.h"

#include <Eigen/Dense>

#include "distattack/rng.h"
#include "distattack/serialization.h"
#include "json.hpp"

namespace distattack {

DistParams init_from_input(ConstSpan x, const SeedMap& seed_map, double sigma,
                           double jitter_sigma, std::uint64_t seed) {
  DistParams params{seed_map.to_seed(x), sigma};
  if (jitter_sigma > 0.0) {
    Rng rng(derive_seed(seed, {0x6a6974ULL}));
    for (double& m : params.mu) m += jitter_sigma * rng.normal();
  }
  return params;
}

RidgeInitializer::RidgeInitializer(std::size_t input_dim, std::size_t seed_dim,
                                   Vector weights, Vector input_mean, Vector bias)
    : input_dim_(input_dim),
      seed_dim_(seed_dim),
      weights_(std::move(weights)),
      input_mean_(std::move(input_mean)),
      bias_(std::move(bias)) {
  if (weights_.size() != input_dim_ * seed_dim_ || input_mean_.size() != input_dim_ ||
      bias_.size() != seed_dim_) {
    throw ShapeError("ridge initializer: parameter sizes do not match dimensions");
  }
}

Vector RidgeInitializer::offset(ConstSpan x) const {
  if (x.size() != input_dim_) throw ShapeError("ridge initializer: input size mismatch");
  Vector out = bias_;
  for (std::size_t o = 0; o < seed_dim_; ++o) {
    const double* row = weights_.data() + o * input_dim_;
    double acc = 0.0;
    for (std::size_t i = 0; i < input_dim_; ++i) acc += row[i] * (x[i] - input_mean_[i]);
    out[o] += acc;
  }
  return out;
}

RidgeInitializer fit_regression_initializer(const std::vector<AdversarialPair>& pairs,
                                            const SeedMap& seed_map, double lambda) {
  if (pairs.size() < kMinRegressionPairs) {
    throw std::invalid_argument("regression initializer needs at least " +
                                std::to_string(kMinRegressionPairs) + " pairs, got " +
                                std::to_string(pairs.size()));
  }
  if (!(lambda > 0.0)) throw std::invalid_argument("ridge lambda must be > 0");
  const auto n = static_cast<Eigen::Index>(pairs.size());
  const auto d = static_cast<Eigen::Index>(seed_map.input_dim());
  const auto m = static_cast<Eigen::Index>(seed_map.seed_dim());

  Eigen::MatrixXd features(n, d), targets(n, m);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& [x, x_adv] = pairs[static_cast<std::size_t>(r)];
    if (static_cast<Eigen::Index>(x.size()) != d ||
        static_cast<Eigen::Index>(x_adv.size()) != d) {
      throw ShapeError("regression pair " + std::to_string(r) + " has the wrong size");
    }
    const Vector from = seed_map.to_seed(x);
    const Vector to = seed_map.to_seed(x_adv);
    for (Eigen::Index c = 0; c < d; ++c) features(r, c) = x[static_cast<std::size_t>(c)];
    for (Eigen::Index c = 0; c < m; ++c) {
      targets(r, c) = to[static_cast<std::size_t>(c)] - from[static_cast<std::size_t>(c)];
    }
  }
  const Eigen::RowVectorXd x_mean = features.colwise().mean();
  const Eigen::RowVectorXd y_mean = targets.colwise().mean();
  features.rowwise() -= x_mean;
  targets.rowwise() -= y_mean;
  Eigen::MatrixXd gram = features.transpose() * features;
  gram.diagonal().array() += lambda;
  // d x m solution; stored transposed as seed_dim x input_dim.
  const Eigen::MatrixXd solution = gram.ldlt().solve(features.transpose() * targets);

  Vector weights(static_cast<std::size_t>(m * d));
  for (Eigen::Index o = 0; o < m; ++o) {
    for (Eigen::Index i = 0; i < d; ++i) {
      weights[static_cast<std::size_t>(o * d + i)] = solution(i, o);
    }
  }
  return RidgeInitializer(static_cast<std::size_t>(d), static_cast<std::size_t>(m),
                          std::move(weights), Vector(x_mean.data(), x_mean.data() + d),
                          Vector(y_mean.data(), y_mean.data() + m));
}

DistParams init_with(const Initializer& initializer, ConstSpan x,
                     const SeedMap& seed_map, double sigma) {
  DistParams params{seed_map.to_seed(x), sigma};
  const Vector off = initializer.offset(x);
  if (off.size() != params.mu.size()) throw ShapeError("initializer offset size mismatch");
  for (std::size_t i = 0; i < off.size(); ++i) params.mu[i] += off[i];
  return params;
}

void save_initializer(const RidgeInitializer& init, const std::filesystem::path& path) {
  nlohmann::json doc;
  doc["format"] = "distattack.initializer";
  doc["version"] = 1;
  doc["input_dim"] = init.input_dim();
  doc["seed_dim"] = init.seed_dim();
  doc["weights"] = init.weights();
  doc["input_mean"] = init.input_mean();
  doc["bias"] = init.bias();
  write_text_file(path, doc.dump(1) + "\n");
}

RidgeInitializer load_initializer(const std::filesystem::path& path) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": malformed initializer document: " + e.what());
  }
  auto get = [&](const char* name) -> const json& {
    if (!doc.is_object() || !doc.contains(name)) {
      throw ParseError(path.string() + ": missing field '" + name + "'");
    }
    return doc.at(name);
  };
  try {
    if (get("format").get<std::string>() != "distattack.initializer") {
      throw ParseError(path.string() + ": field 'format' is not distattack.initializer");
    }
    const int version = get("version").get<int>();
    if (version != 1) {
      throw ParseError(path.string() + ": unsupported version " +
                       std::to_string(version) + " in field 'version'");
    }
    return RidgeInitializer(get("input_dim").get<std::size_t>(),
                            get("seed_dim").get<std::size_t>(),
                            get("weights").get<Vector>(),
                            get("input_mean").get<Vector>(), get("bias").get<Vector>());
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const ShapeError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace distattack
