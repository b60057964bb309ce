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

// Sparse evaluation of the model restricted to a list of node pairs, with the
// analytic gradient of the mean squared error. Only the normalizing maximum
// distance needs all N^2 pairs; everything else is O(|pairs| (d + K)).

#ifndef CLUSTERLP_OBJECTIVE_HPP_
#define CLUSTERLP_OBJECTIVE_HPP_

#include <cmath>
#include <span>
#include <vector>

#include "clusterlp/model.hpp"

namespace clusterlp {

enum class Stage { kUpdateEmbeddings, kUpdateCentroids };

inline const char* to_string(Stage s) {
  return s == Stage::kUpdateEmbeddings ? "update_H" : "update_U";
}

// Largest pairwise distance and one pair attaining it (first in row-major
// order over i < j).
struct MaxDistance {
  double value = 0.0;
  Eigen::Index a = 0;
  Eigen::Index b = 0;
};

inline MaxDistance max_pairwise_distance(const Matrix& h) {
  const auto n = h.rows();
  const auto d = h.cols();
  MaxDistance best{-1.0, 0, 0};
  for (Eigen::Index i = 0; i < n; ++i) {
    const double* hi = h.row(i).data();
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double* hj = h.row(j).data();
      double s = 0.0;
      for (Eigen::Index l = 0; l < d; ++l) {
        const double diff = hi[l] - hj[l];
        s += diff * diff;
      }
      if (s > best.value) best = {s, i, j};
    }
  }
  best.value = std::sqrt(std::max(best.value, 0.0));
  return best;
}

// Per-node cluster quantities shared by every pair.
class PairwiseModel {
 public:
  PairwiseModel(const Embeddings& h, const Centroids& u, const HyperParams& hp) : hp_(hp) {
    set_parameters(h, u);
  }

  // Replaces both parameter blocks, reusing internal buffers.
  void set_parameters(const Embeddings& h, const Centroids& u) {
    if (h.matrix.cols() != u.matrix.cols()) {
      throw ConfigError("embedding and centroid dimensions differ");
    }
    if (h.matrix.rows() < 2) throw NumericError("model needs at least two nodes");
    h_ = h.matrix;
    u_ = u.matrix;
    max_ = max_pairwise_distance(h_);
    if (!(max_.value > 0)) throw NumericError("degenerate embedding: all rows identical");
    refresh_tendencies();
  }

  // Reuses the cached maximum distance; valid while H is unchanged.
  void set_centroids(const Centroids& u) {
    u_ = u.matrix;
    refresh_tendencies();
  }

  double max_distance() const { return max_.value; }

  double probability(Eigen::Index i, Eigen::Index j) const {
    if (i == j) return 1.0;
    return std::exp(-hp_.beta * (distance(i, j) / max_.value) / cluster(i, j));
  }

  double loss(std::span<const LabeledPair> pairs) const {
    if (pairs.empty()) throw ConfigError("loss over an empty pair list");
    double sum = 0.0;
    for (const auto& p : pairs) {
      const double r = probability(p.src, p.dst) - p.label;
      sum += r * r;
    }
    return sum / static_cast<double>(pairs.size());
  }

  // Gradient of loss(pairs) with respect to H (stage kUpdateEmbeddings) or
  // U (stage kUpdateCentroids). The normalizing maximum is differentiated
  // through its arg-max pair.
  Matrix gradient(std::span<const LabeledPair> pairs, Stage stage) const {
    Matrix grad;
    loss_and_gradient(pairs, stage, grad);
    return grad;
  }

  // Returns loss(pairs) and writes the gradient of it into `grad`.
  double loss_and_gradient(std::span<const LabeledPair> pairs, Stage stage, Matrix& grad) const {
    if (pairs.empty()) throw ConfigError("gradient over an empty pair list");
    const auto n = h_.rows();
    const auto k = u_.rows();
    const auto dim = h_.cols();
    const double m = max_.value;
    const double inv_count = 1.0 / static_cast<double>(pairs.size());
    const bool wrt_h = stage == Stage::kUpdateEmbeddings;

    grad.setZero(wrt_h ? n : k, dim);
    grad_t_.setZero(n, k);  // w.r.t. soft assignment / raw tendency
    double grad_max = 0.0;
    double sum_sq = 0.0;

    for (const auto& p : pairs) {
      const auto i = static_cast<Eigen::Index>(p.src);
      const auto j = static_cast<Eigen::Index>(p.dst);
      if (i == j) {
        const double r = 1.0 - p.label;
        sum_sq += r * r;
        continue;
      }
      const double dist = distance(i, j);
      const double d = dist / m;
      const double c = cluster(i, j);
      const double prob = std::exp(-hp_.beta * d / c);
      sum_sq += (prob - p.label) * (prob - p.label);
      if (prob == 0.0) continue;  // underflow: every partial below carries a factor P
      const double g_p = 2.0 * (prob - p.label) * inv_count;
      const double g_d = -g_p * prob * hp_.beta / c;
      const double g_c = g_p * prob * hp_.beta * d / (c * c);

      if (wrt_h) {
        grad_max -= g_d * dist / (m * m);
        if (dist > 0) {
          const double scale = g_d / (m * dist);
          for (Eigen::Index l = 0; l < dim; ++l) {
            const double step = scale * (h_(i, l) - h_(j, l));
            grad(i, l) += step;
            grad(j, l) -= step;
          }
        }
      }
      if (hp_.directed) {
        const double sq = norm2_[i];
        const double a = g_c / sq;
        const double b = -2.0 * c * a;
        for (Eigen::Index l = 0; l < k; ++l) {
          grad_t_(i, l) += a * t_(j, l) + b * t_(i, l);
          grad_t_(j, l) += a * t_(i, l);
        }
      } else {
        const double ni = norm_[i];
        const double nj = norm_[j];
        const double cross = g_c / (ni * nj);
        const double self_i = -g_c * c / (ni * ni);
        const double self_j = -g_c * c / (nj * nj);
        for (Eigen::Index l = 0; l < k; ++l) {
          grad_t_(i, l) += cross * q_(j, l) + self_i * q_(i, l);
          grad_t_(j, l) += cross * q_(i, l) + self_j * q_(j, l);
        }
      }
    }

    if (wrt_h && grad_max != 0.0) {
      const double scale = grad_max / m;
      for (Eigen::Index l = 0; l < dim; ++l) {
        const double step = scale * (h_(max_.a, l) - h_(max_.b, l));
        grad(max_.a, l) += step;
        grad(max_.b, l) -= step;
      }
    }

    for (Eigen::Index i = 0; i < n; ++i) {
      // Chain through the normalization q = t / sum(t) for undirected graphs.
      double inner = 0.0;
      bool any = false;
      for (Eigen::Index c = 0; c < k; ++c) {
        inner += grad_t_(i, c) * (hp_.directed ? 0.0 : q_(i, c));
        any = any || grad_t_(i, c) != 0.0;
      }
      if (!any) continue;
      for (Eigen::Index c = 0; c < k; ++c) {
        const double g_raw =
            hp_.directed ? grad_t_(i, c) : (grad_t_(i, c) - inner) / rowsum_[i];
        // dT/dr for r = |H_i - U_c|^2.
        const double dt_dr = hp_.directed
                                 ? -hp_.alpha / ((1.0 + r_(i, c)) * (1.0 + r_(i, c)))
                                 : -raw_(i, c) * raw_(i, c) / hp_.alpha;
        const double g_r = g_raw * dt_dr;
        if (g_r == 0.0) continue;
        const Eigen::Index row = wrt_h ? i : c;
        const double sign = wrt_h ? 2.0 * g_r : -2.0 * g_r;
        for (Eigen::Index l = 0; l < dim; ++l) grad(row, l) += sign * (h_(i, l) - u_(c, l));
      }
    }
    return sum_sq * inv_count;
  }

  double cluster(Eigen::Index i, Eigen::Index j) const {
    if (hp_.directed) return t_.row(i).dot(t_.row(j)) / norm2_[i];
    return q_.row(i).dot(q_.row(j)) / (norm_[i] * norm_[j]);
  }

 private:
  double distance(Eigen::Index i, Eigen::Index j) const {
    double s = 0.0;
    for (Eigen::Index l = 0; l < h_.cols(); ++l) {
      const double diff = h_(i, l) - h_(j, l);
      s += diff * diff;
    }
    return std::sqrt(s);
  }

  void refresh_tendencies() {
    const auto n = h_.rows();
    const auto k = u_.rows();
    r_.resize(n, k);
    raw_.resize(n, k);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index c = 0; c < k; ++c) {
        double r = 0.0;
        for (Eigen::Index l = 0; l < h_.cols(); ++l) {
          const double diff = h_(i, l) - u_(c, l);
          r += diff * diff;
        }
        r_(i, c) = r;
        raw_(i, c) = hp_.directed ? hp_.alpha / (1.0 + r) + 1.0 : 1.0 / (1.0 + r / hp_.alpha);
      }
    }
    if (hp_.directed) {
      t_ = raw_;
      norm2_ = t_.rowwise().squaredNorm();
    } else {
      rowsum_ = raw_.rowwise().sum();
      q_ = raw_.array().colwise() / rowsum_.array();
      norm_ = q_.rowwise().norm();
      if ((norm_.array() <= 0).any() || !norm_.allFinite()) {
        throw NumericError("cluster assignment row is zero");
      }
    }
  }

  Matrix h_;
  Matrix u_;
  HyperParams hp_;
  MaxDistance max_;
  Matrix r_;    // squared node-centroid distances
  Matrix raw_;  // raw tendencies
  Matrix t_;    // directed tendencies
  Matrix q_;    // undirected soft assignments
  Vector rowsum_;
  Vector norm_;
  Vector norm2_;
  mutable Matrix grad_t_;  // scratch
};

inline Matrix loss_gradients(const Embeddings& h, const Centroids& u,
                             std::span<const LabeledPair> pairs, const HyperParams& hp,
                             Stage stage) {
  return PairwiseModel(h, u, hp).gradient(pairs, stage);
}

inline double pair_loss(const Embeddings& h, const Centroids& u,
                        std::span<const LabeledPair> pairs, const HyperParams& hp) {
  return PairwiseModel(h, u, hp).loss(pairs);
}

}  // namespace clusterlp

#endif  // CLUSTERLP_OBJECTIVE_HPP_
