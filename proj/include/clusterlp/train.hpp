// Copyright 2026 The ClusterLP Authors.
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

// Alternating trainer: each outer loop runs `epochs_per_stage` full-batch
// momentum steps on H with U frozen, then the same on U with H frozen.

#ifndef CLUSTERLP_TRAIN_HPP_
#define CLUSTERLP_TRAIN_HPP_

#include <cmath>
#include <optional>
#include <span>
#include <sstream>
#include <string_view>
#include <vector>

#include "clusterlp/kmeans.hpp"
#include "clusterlp/model.hpp"
#include "clusterlp/objective.hpp"
#include "clusterlp/split.hpp"

namespace clusterlp {

// One loss observation. Within a stage, epoch e < epochs_per_stage is the
// loss before the e-th update and epoch == epochs_per_stage the loss after
// the last update.
struct LossRecord {
  int outer_loop = 0;
  Stage stage = Stage::kUpdateEmbeddings;
  int epoch = 0;
  double loss = 0.0;
};

struct TrainedModel {
  Embeddings embeddings;
  Centroids centroids;
  HyperParams hyperparams;
  std::vector<LossRecord> loss_trace;

  double final_loss() const { return loss_trace.empty() ? NAN : loss_trace.back().loss; }
};

namespace detail {

[[noreturn]] inline void diverged(Stage stage, int loop, int epoch, const HyperParams& hp,
                                  std::string_view reason = "non-finite loss") {
  std::ostringstream msg;
  msg << reason << " in stage " << to_string(stage) << " (outer loop " << loop << ", epoch "
      << epoch << ") with eta=" << hp.eta;
  throw DivergenceError(msg.str());
}

}  // namespace detail

// Trains from explicit starting parameters.
inline TrainedModel train_from(Embeddings h, Centroids u, std::span<const LabeledPair> pairs,
                               const HyperParams& hp) {
  hp.validate(static_cast<std::size_t>(h.size()));
  if (pairs.empty()) throw ConfigError("no training pairs");
  if (u.size() != hp.clusters || h.dim() != hp.dim || u.dim() != hp.dim) {
    throw ConfigError("parameter shapes do not match hyperparameters");
  }
  for (const auto& p : pairs) {
    if (p.src >= h.size() || p.dst >= h.size()) throw ConfigError("pair index out of range");
  }

  TrainedModel model{std::move(h), std::move(u), hp, {}};
  const int epochs = hp.epochs_per_stage;
  double previous_loop_loss = NAN;

  for (int loop = 0; loop < hp.outer_loops; ++loop) {
    for (Stage stage : {Stage::kUpdateEmbeddings, Stage::kUpdateCentroids}) {
      Matrix& param = stage == Stage::kUpdateEmbeddings ? model.embeddings.matrix
                                                        : model.centroids.matrix;
      Matrix velocity = Matrix::Zero(param.rows(), param.cols());
      Matrix grad;
      // With H frozen the normalizing maximum is fixed for the whole stage.
      std::optional<PairwiseModel> current;
      try {
        current.emplace(model.embeddings, model.centroids, hp);
      } catch (const NumericError& e) {
        detail::diverged(stage, loop, 0, hp, e.what());
      }
      for (int epoch = 0; epoch <= epochs; ++epoch) {
        double loss = NAN;
        try {
          if (epoch > 0) {
            if (stage == Stage::kUpdateEmbeddings) {
              current->set_parameters(model.embeddings, model.centroids);
            } else {
              current->set_centroids(model.centroids);
            }
          }
          loss = epoch < epochs ? current->loss_and_gradient(pairs, stage, grad)
                                : current->loss(pairs);
        } catch (const NumericError& e) {
          detail::diverged(stage, loop, epoch, hp, e.what());
        }
        if (!std::isfinite(loss)) detail::diverged(stage, loop, epoch, hp);
        model.loss_trace.push_back({loop, stage, epoch, loss});
        if (epoch == epochs) break;
        if (!grad.allFinite()) detail::diverged(stage, loop, epoch, hp, "non-finite gradient");
        velocity = hp.delta * velocity - hp.eta * grad;
        param += velocity;
        if (!param.allFinite()) detail::diverged(stage, loop, epoch, hp, "non-finite parameters");
      }
    }
    const double loop_loss = model.loss_trace.back().loss;
    if (std::isfinite(previous_loop_loss) &&
        std::abs(loop_loss - previous_loop_loss) < hp.tolerance) {
      break;
    }
    previous_loop_loss = loop_loss;
  }
  return model;
}

// Random uniform embeddings, k-means centroids on them, then alternating
// training on the split's training pairs.
inline TrainedModel train(const LinkSplit& split, std::size_t num_nodes, const HyperParams& hp) {
  hp.validate(num_nodes);
  Embeddings h = init_embeddings(num_nodes, hp.dim, hp.seed);
  Centroids u = kmeans_init(h, hp.clusters, hp.seed);
  return train_from(std::move(h), std::move(u), split.train, hp);
}

// P_ij for each ordered pair, recomputed from the final parameters.
inline std::vector<double> predict(const TrainedModel& model, std::span<const Edge> pairs) {
  const auto n = model.embeddings.size();
  for (const auto& p : pairs) {
    if (p.src >= n || p.dst >= n) throw ConfigError("pair index out of range");
  }
  PairwiseModel pm(model.embeddings, model.centroids, model.hyperparams);
  std::vector<double> scores;
  scores.reserve(pairs.size());
  for (const auto& p : pairs) scores.push_back(pm.probability(p.src, p.dst));
  return scores;
}

inline std::vector<double> predict(const TrainedModel& model,
                                   std::span<const LabeledPair> pairs) {
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& p : pairs) edges.push_back({p.src, p.dst});
  return predict(model, edges);
}

}  // namespace clusterlp

#endif  // CLUSTERLP_TRAIN_HPP_
