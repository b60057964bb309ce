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

// Dense forward computation of the cluster-aware link model:
//
//   D_ij = |H_i - H_j| / max_{a != b} |H_a - H_b|
//   T_ik = tendency of node i to centroid k
//   C_ij = similarity of T_i and T_j
//   P_ij = exp(-beta * D_ij / C_ij)
//
// Undirected graphs use T_ik = (1 + |U_k - H_i|^2 / alpha)^-1 normalized to a
// soft assignment and cosine similarity for C. Directed graphs use the raw
// tendency T_ik = alpha / (1 + |U_k - H_i|^2) + 1 and the source-normalized
// similarity C_ij = <T_i, T_j> / |T_i|^2, so that C_ij != C_ji.

#ifndef CLUSTERLP_MODEL_HPP_
#define CLUSTERLP_MODEL_HPP_

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>

#include "clusterlp/error.hpp"
#include "clusterlp/random.hpp"
#include "clusterlp/split.hpp"

namespace clusterlp {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

// N x d node representation vectors.
struct Embeddings {
  Matrix matrix;
  Eigen::Index size() const { return matrix.rows(); }
  Eigen::Index dim() const { return matrix.cols(); }
};

// K x d cluster centroids.
struct Centroids {
  Matrix matrix;
  Eigen::Index size() const { return matrix.rows(); }
  Eigen::Index dim() const { return matrix.cols(); }
};

struct HyperParams {
  int clusters = 12;            // K
  int dim = 8;                  // d
  double alpha = 5.0;           // tendency decay scale
  double beta = 4.5;            // distance vs. cluster trade-off
  double eta = 0.1;             // learning rate
  double delta = 0.9;           // momentum
  int epochs_per_stage = 200;
  int outer_loops = 10;
  double tolerance = 1e-6;      // early stop on |loss change| per outer loop
  std::uint64_t seed = 0;
  bool directed = false;
  double threshold = 0.5;

  void validate(std::size_t num_nodes) const {
    auto fail = [](const std::string& m) { throw ConfigError("invalid hyperparameters: " + m); };
    if (clusters < 1) fail("K must be at least 1");
    if (static_cast<std::size_t>(clusters) > num_nodes) {
      fail("K=" + std::to_string(clusters) + " exceeds node count " + std::to_string(num_nodes));
    }
    if (dim < 1) fail("d must be at least 1");
    if (!(alpha > 0)) fail("alpha must be positive");
    if (!(beta > 0)) fail("beta must be positive");
    if (!(eta > 0)) fail("eta must be positive");
    if (!(delta >= 0 && delta < 1)) fail("delta must lie in [0, 1)");
    if (epochs_per_stage < 1) fail("epochs_per_stage must be positive");
    if (outer_loops < 1) fail("outer_loops must be positive");
    if (!(tolerance >= 0)) fail("tolerance must be non-negative");
    if (!(threshold >= 0 && threshold <= 1)) fail("threshold must lie in [0, 1]");
  }
};

// Entries i.i.d. uniform on [0, 1).
inline Embeddings init_embeddings(std::size_t n, std::size_t d, std::uint64_t seed) {
  if (n < 1 || d < 1) throw ConfigError("embedding shape must be positive");
  Rng rng(seed, Stream::kEmbedding);
  Embeddings h{Matrix(n, d)};
  for (Eigen::Index i = 0; i < h.matrix.size(); ++i) h.matrix.data()[i] = rng.uniform();
  return h;
}

// Max-normalized Euclidean distance matrix.
inline Matrix first_order_proximity(const Embeddings& h) {
  const auto n = h.size();
  if (n < 2) throw NumericError("first-order proximity needs at least two nodes");
  Matrix dist = Matrix::Zero(n, n);
  double max_dist = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = (h.matrix.row(i) - h.matrix.row(j)).norm();
      dist(i, j) = dist(j, i) = v;
      max_dist = std::max(max_dist, v);
    }
  }
  if (!(max_dist > 0)) throw NumericError("degenerate embedding: all rows identical");
  return dist / max_dist;
}

inline Vector tendency_undirected(const Eigen::Ref<const Vector>& h, const Centroids& u,
                                  double alpha) {
  Vector t(u.size());
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    t[k] = 1.0 / (1.0 + (u.matrix.row(k).transpose() - h).squaredNorm() / alpha);
  }
  return t;
}

inline Vector tendency_directed(const Eigen::Ref<const Vector>& h, const Centroids& u,
                                double alpha) {
  Vector t(u.size());
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    t[k] = alpha / (1.0 + (u.matrix.row(k).transpose() - h).squaredNorm()) + 1.0;
  }
  return t;
}

inline Vector soft_assignment(const Eigen::Ref<const Vector>& t) {
  const double s = t.sum();
  if (!(s > 0)) throw NumericError("soft assignment of a zero tendency vector");
  return t / s;
}

// Cosine similarity between rows.
inline Matrix cluster_proximity_undirected(const Matrix& t) {
  Vector norms = t.rowwise().norm();
  if ((norms.array() <= 0).any()) throw NumericError("cluster assignment row is zero");
  Matrix c = t * t.transpose();
  c.array().colwise() /= norms.array();
  c.array().rowwise() /= norms.transpose().array();
  c.diagonal().setOnes();
  return c;
}

// C_ij = <T_i, T_j> / |T_i|^2, normalized by the source row only.
inline Matrix cluster_proximity_directed(const Matrix& t) {
  Vector sq = t.rowwise().squaredNorm();
  if ((sq.array() <= 0).any()) throw NumericError("cluster tendency row is zero");
  Matrix c = t * t.transpose();
  c.array().colwise() /= sq.array();
  c.diagonal().setOnes();
  return c;
}

inline Matrix link_probability(const Matrix& d, const Matrix& c, double beta) {
  if (d.rows() != c.rows() || d.cols() != c.cols()) {
    throw ConfigError("distance and cluster-proximity shapes differ");
  }
  if ((c.array() <= 0).any()) throw NumericError("non-positive cluster proximity");
  Matrix p = (-beta * d.array() / c.array()).exp();
  if (p.rows() == p.cols()) p.diagonal().setOnes();
  return p;
}

// Soft assignments (undirected) or raw tendencies (directed), one row per node.
inline Matrix tendency_matrix(const Embeddings& h, const Centroids& u, double alpha,
                              bool directed) {
  Matrix t(h.size(), u.size());
  for (Eigen::Index i = 0; i < h.size(); ++i) {
    const Vector hi = h.matrix.row(i).transpose();
    t.row(i) = directed ? tendency_directed(hi, u, alpha).transpose()
                        : soft_assignment(tendency_undirected(hi, u, alpha)).transpose();
  }
  return t;
}

struct ForwardPass {
  Matrix distance;     // D
  Matrix tendency;     // T
  Matrix cluster;      // C
  Matrix probability;  // P
};

inline ForwardPass forward(const Embeddings& h, const Centroids& u, const HyperParams& hp) {
  if (h.dim() != u.dim()) throw ConfigError("embedding and centroid dimensions differ");
  ForwardPass f;
  f.distance = first_order_proximity(h);
  f.tendency = tendency_matrix(h, u, hp.alpha, hp.directed);
  f.cluster = hp.directed ? cluster_proximity_directed(f.tendency)
                          : cluster_proximity_undirected(f.tendency);
  f.probability = link_probability(f.distance, f.cluster, hp.beta);
  return f;
}

// Mean squared error of P against the pair labels.
inline double mse_loss(const Matrix& p, std::span<const LabeledPair> pairs) {
  if (pairs.empty()) throw ConfigError("loss over an empty pair list");
  double sum = 0.0;
  for (const auto& q : pairs) {
    const double r = p(q.src, q.dst) - q.label;
    sum += r * r;
  }
  return sum / static_cast<double>(pairs.size());
}

}  // namespace clusterlp

#endif  // CLUSTERLP_MODEL_HPP_
