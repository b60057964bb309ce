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

#ifndef CLUSTERLP_KMEANS_HPP_
#define CLUSTERLP_KMEANS_HPP_

#include <limits>
#include <vector>

#include "clusterlp/model.hpp"
#include "clusterlp/random.hpp"

namespace clusterlp {

struct KMeansResult {
  Matrix centroids;
  std::vector<int> assignment;
  int iterations = 0;
  bool converged = false;
};

namespace detail {

inline double squared_distance(const Matrix& a, Eigen::Index i, const Matrix& b, Eigen::Index j) {
  return (a.row(i) - b.row(j)).squaredNorm();
}

// k-means++ seeding: each new centre is drawn with probability proportional
// to the squared distance to the nearest chosen centre.
inline Matrix seed_centroids(const Matrix& x, int k, Rng& rng) {
  const auto n = x.rows();
  Matrix c(k, x.cols());
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  std::vector<bool> chosen(n, false);
  Eigen::Index pick = static_cast<Eigen::Index>(rng.below(n));
  for (int m = 0; m < k; ++m) {
    c.row(m) = x.row(pick);
    chosen[pick] = true;
    if (m + 1 == k) break;
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      nearest[i] = std::min(nearest[i], squared_distance(x, i, c, m));
      total += nearest[i];
    }
    if (total > 0) {
      double target = rng.uniform() * total;
      pick = -1;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (nearest[i] <= 0) continue;
        pick = i;
        target -= nearest[i];
        if (target < 0) break;
      }
    } else {
      // Remaining points coincide with chosen centres; take any unused row.
      std::vector<Eigen::Index> unused;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (!chosen[i]) unused.push_back(i);
      }
      pick = unused[rng.below(unused.size())];
    }
  }
  return c;
}

}  // namespace detail

// Lloyd iterations on the rows of `x` until the assignment is stable or
// `max_iterations` is reached. Empty clusters are re-seeded with the point
// farthest from its current centroid.
inline KMeansResult kmeans(const Matrix& x, int k, std::uint64_t seed, int max_iterations = 300) {
  const auto n = x.rows();
  if (k < 1) throw ConfigError("k-means needs k >= 1");
  if (k > n) {
    throw ConfigError("k-means with k=" + std::to_string(k) + " > " + std::to_string(n) +
                      " points");
  }
  Rng rng(seed, Stream::kKMeans);
  KMeansResult result;
  result.centroids = detail::seed_centroids(x, k, rng);
  result.assignment.assign(n, -1);

  for (int iter = 0; iter < max_iterations; ++iter) {
    bool changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      int best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (int c = 0; c < k; ++c) {
        const double d = detail::squared_distance(x, i, result.centroids, c);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (result.assignment[i] != best) {
        result.assignment[i] = best;
        changed = true;
      }
    }
    result.iterations = iter + 1;
    if (!changed) {
      result.converged = true;
      break;
    }

    Matrix sums = Matrix::Zero(k, x.cols());
    std::vector<Eigen::Index> counts(k, 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      sums.row(result.assignment[i]) += x.row(i);
      ++counts[result.assignment[i]];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0) {
        result.centroids.row(c) = sums.row(c) / static_cast<double>(counts[c]);
        continue;
      }
      Eigen::Index far = 0;
      double far_d = -1.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        const double d = detail::squared_distance(x, i, result.centroids, result.assignment[i]);
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      result.centroids.row(c) = x.row(far);
      --counts[result.assignment[far]];
      result.assignment[far] = c;
      counts[c] = 1;
    }
  }
  return result;
}

inline Centroids kmeans_init(const Embeddings& h, int k, std::uint64_t seed) {
  return Centroids{kmeans(h.matrix, k, seed).centroids};
}

}  // namespace clusterlp

#endif  // CLUSTERLP_KMEANS_HPP_
