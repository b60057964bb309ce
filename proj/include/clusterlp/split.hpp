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

// Train/test split generation for the undirected and the two directed
// link-prediction protocols, plus the full-matrix reconstruction set.

#ifndef CLUSTERLP_SPLIT_HPP_
#define CLUSTERLP_SPLIT_HPP_

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "clusterlp/error.hpp"
#include "clusterlp/graph.hpp"
#include "clusterlp/random.hpp"

namespace clusterlp {

enum class Provenance : std::uint8_t {
  kObservedEdge,
  kSampledNegative,
  kRemovedEdge,
  kReversedDirection,
};

inline std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::kObservedEdge: return "observed_edge";
    case Provenance::kSampledNegative: return "sampled_negative";
    case Provenance::kRemovedEdge: return "removed_edge";
    case Provenance::kReversedDirection: return "reversed_direction";
  }
  return "unknown";
}

inline Provenance parse_provenance(std::string_view s) {
  if (s == "observed_edge") return Provenance::kObservedEdge;
  if (s == "sampled_negative") return Provenance::kSampledNegative;
  if (s == "removed_edge") return Provenance::kRemovedEdge;
  if (s == "reversed_direction") return Provenance::kReversedDirection;
  throw DataError("unknown provenance '" + std::string(s) + "'");
}

struct LabeledPair {
  NodeId src = 0;
  NodeId dst = 0;
  std::uint8_t label = 0;
  Provenance provenance = Provenance::kObservedEdge;
  friend bool operator==(const LabeledPair&, const LabeledPair&) = default;
};

struct LinkSplit {
  std::vector<LabeledPair> train;
  std::vector<LabeledPair> test;
  friend bool operator==(const LinkSplit&, const LinkSplit&) = default;
};

namespace detail {

// floor() with a guard against products such as 0.57 * 100 = 56.999...
inline std::size_t floor_count(double x) {
  return static_cast<std::size_t>(std::floor(x + 1e-9));
}

// Uniform non-edges of `g`. Unordered pairs (i < j) for undirected graphs,
// ordered pairs for directed ones. Pairs in `exclude` (keyed with pair_key in
// the same orientation) are never returned and newly drawn pairs are added.
// Callers guarantee everything in `exclude` is a non-edge.
inline std::vector<Edge> sample_non_edges(const Graph& g, std::size_t count,
                                          std::unordered_set<std::uint64_t>& exclude,
                                          Rng& rng, std::string_view what) {
  const std::uint64_t n = g.num_nodes();
  const std::uint64_t total = g.directed() ? n * (n - 1) : n * (n - 1) / 2;
  const std::uint64_t available = total - g.num_edges() - exclude.size();
  if (count > available) {
    throw DataError("negative pool exhausted for " + std::string(what) + ": need " +
                    std::to_string(count) + " non-edges, only " + std::to_string(available) +
                    " available (shortfall " + std::to_string(count - available) + ")");
  }
  std::vector<Edge> out;
  out.reserve(count);
  if (count == 0) return out;

  auto eligible = [&](NodeId i, NodeId j) {
    return i != j && !g.has_edge(i, j) && !exclude.contains(pair_key(i, j));
  };

  if (2 * count <= available) {
    while (out.size() < count) {
      auto i = static_cast<NodeId>(rng.below(n));
      auto j = static_cast<NodeId>(rng.below(n));
      if (!g.directed() && i > j) std::swap(i, j);
      if (!eligible(i, j)) continue;
      exclude.insert(pair_key(i, j));
      out.push_back({i, j});
    }
    return out;
  }
  // Dense regime: enumerate the pool and take a random prefix.
  std::vector<Edge> pool;
  pool.reserve(available);
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = g.directed() ? 0 : i + 1; j < n; ++j) {
      if (eligible(i, j)) pool.push_back({i, j});
    }
  }
  for (std::size_t k = 0; k < count; ++k) {
    std::swap(pool[k], pool[k + rng.below(pool.size() - k)]);
    exclude.insert(pair_key(pool[k].src, pool[k].dst));
    out.push_back(pool[k]);
  }
  return out;
}

inline void append(std::vector<LabeledPair>& dst, const std::vector<Edge>& edges,
                   std::uint8_t label, Provenance p) {
  for (const auto& e : edges) dst.push_back({e.src, e.dst, label, p});
}

}  // namespace detail

// Undirected protocol: floor(train_frac * E) edges plus neg_train_ratio times
// as many sampled non-edges for training; the remaining edges plus an equal
// number of fresh non-edges for testing.
inline LinkSplit split_undirected(const Graph& g, double train_frac, double neg_train_ratio,
                                  std::uint64_t seed) {
  if (g.directed()) throw ConfigError("split_undirected requires an undirected graph");
  if (!(train_frac > 0.0 && train_frac < 1.0)) {
    throw ConfigError("train_frac must lie in (0, 1)");
  }
  if (!(neg_train_ratio > 0.0)) throw ConfigError("negative ratio must be positive");

  Rng rng(seed, Stream::kSplit);
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  rng.shuffle(edges);

  const std::size_t n_train = detail::floor_count(train_frac * edges.size());
  const std::size_t n_test = edges.size() - n_train;
  if (n_test == 0) throw ConfigError("train_frac leaves no test positives");
  if (n_train == 0) throw ConfigError("train_frac leaves no training positives");
  const std::size_t n_train_neg = detail::floor_count(neg_train_ratio * n_train);

  const std::uint64_t n = g.num_nodes();
  const std::uint64_t pool = n * (n - 1) / 2 - g.num_edges();
  if (n_train_neg + n_test > pool) {
    throw DataError("negative pool exhausted: need " + std::to_string(n_train_neg + n_test) +
                    " non-edges, only " + std::to_string(pool) + " exist (shortfall " +
                    std::to_string(n_train_neg + n_test - pool) + ")");
  }

  std::unordered_set<std::uint64_t> used;
  auto train_neg = detail::sample_non_edges(g, n_train_neg, used, rng, "training negatives");
  auto test_neg = detail::sample_non_edges(g, n_test, used, rng, "test negatives");

  LinkSplit split;
  split.train.reserve(n_train + n_train_neg);
  split.test.reserve(2 * n_test);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto& e = edges[k];
    if (k < n_train) {
      split.train.push_back({e.src, e.dst, 1, Provenance::kObservedEdge});
    } else {
      split.test.push_back({e.src, e.dst, 1, Provenance::kRemovedEdge});
    }
  }
  detail::append(split.train, train_neg, 0, Provenance::kSampledNegative);
  detail::append(split.test, test_neg, 0, Provenance::kSampledNegative);
  return split;
}

// Biased-negative-samples protocol: remove floor(remove_frac * E)
// unidirectional arcs; each removed (i, j) is a test positive and (j, i) a
// test negative. Training keeps every other arc plus neg_train_ratio times as
// many uniformly sampled ordered non-edges.
inline LinkSplit split_bns(const Graph& g, double remove_frac, std::uint64_t seed,
                           double neg_train_ratio = 4.0) {
  if (!g.directed()) throw ConfigError("split_bns requires a directed graph");
  if (!(remove_frac > 0.0 && remove_frac < 1.0)) {
    throw ConfigError("remove_frac must lie in (0, 1)");
  }
  if (!(neg_train_ratio >= 0.0)) throw ConfigError("negative ratio must be non-negative");

  std::vector<Edge> uni;
  for (const auto& e : g.edges()) {
    if (!g.is_reciprocal(e)) uni.push_back(e);
  }
  if (uni.empty()) throw DataError("graph has no unidirectional edge to remove");

  const std::size_t n_remove = detail::floor_count(remove_frac * g.num_edges());
  if (n_remove == 0) throw ConfigError("remove_frac removes no edges");
  if (n_remove > uni.size()) {
    throw DataError("cannot remove " + std::to_string(n_remove) + " unidirectional edges, only " +
                    std::to_string(uni.size()) + " exist");
  }

  Rng rng(seed, Stream::kSplit);
  rng.shuffle(uni);
  uni.resize(n_remove);
  std::sort(uni.begin(), uni.end());

  LinkSplit split;
  std::unordered_set<std::uint64_t> removed;
  std::unordered_set<std::uint64_t> used;
  for (const auto& e : uni) {
    removed.insert(pair_key(e.src, e.dst));
    used.insert(pair_key(e.dst, e.src));
    split.test.push_back({e.src, e.dst, 1, Provenance::kRemovedEdge});
    split.test.push_back({e.dst, e.src, 0, Provenance::kReversedDirection});
  }

  std::vector<std::size_t> remaining_degree(g.num_nodes(), 0);
  for (const auto& e : g.edges()) {
    if (removed.contains(pair_key(e.src, e.dst))) continue;
    split.train.push_back({e.src, e.dst, 1, Provenance::kObservedEdge});
    ++remaining_degree[e.src];
    ++remaining_degree[e.dst];
  }
  std::size_t stranded = 0;
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    if (remaining_degree[i] == 0 && g.degree(i) > 0) ++stranded;
  }
  if (stranded > 0) {
    warn(std::to_string(stranded) + " node(s) lost all incident edges in the training graph");
  }

  const std::size_t n_neg = detail::floor_count(neg_train_ratio * split.train.size());
  auto neg = detail::sample_non_edges(g, n_neg, used, rng, "training negatives");
  detail::append(split.train, neg, 0, Provenance::kSampledNegative);
  return split;
}

// Bidirectionality protocol: one direction of every reciprocal pair is
// removed and becomes a test positive; test negatives are reverses of as many
// randomly chosen unidirectional arcs.
inline LinkSplit split_bidirectional(const Graph& g, std::uint64_t seed,
                                     double neg_train_ratio = 4.0) {
  if (!g.directed()) throw ConfigError("split_bidirectional requires a directed graph");
  if (!(neg_train_ratio >= 0.0)) throw ConfigError("negative ratio must be non-negative");

  std::vector<Edge> reciprocal;  // stored once with src < dst
  std::vector<Edge> uni;
  for (const auto& e : g.edges()) {
    if (g.is_reciprocal(e)) {
      if (e.src < e.dst) reciprocal.push_back(e);
    } else {
      uni.push_back(e);
    }
  }
  if (reciprocal.empty()) throw DataError("graph has no reciprocal edge pair");
  if (uni.empty()) throw DataError("graph has no unidirectional edge for test negatives");

  Rng rng(seed, Stream::kSplit);
  LinkSplit split;
  std::unordered_set<std::uint64_t> used;
  std::vector<Edge> kept;
  for (const auto& e : reciprocal) {
    Edge removed = e;
    Edge keep{e.dst, e.src};
    if (rng.below(2) == 1) std::swap(removed, keep);
    kept.push_back(keep);
    split.test.push_back({removed.src, removed.dst, 1, Provenance::kRemovedEdge});
  }

  std::size_t n_neg = reciprocal.size();
  if (uni.size() < n_neg) {
    warn("only " + std::to_string(uni.size()) + " unidirectional edges for " +
         std::to_string(n_neg) + " removed directions; reducing test negatives");
    n_neg = uni.size();
  }
  std::vector<Edge> shuffled = uni;
  rng.shuffle(shuffled);
  for (std::size_t k = 0; k < n_neg; ++k) {
    const auto& e = shuffled[k];
    used.insert(pair_key(e.dst, e.src));
    split.test.push_back({e.dst, e.src, 0, Provenance::kReversedDirection});
  }

  std::vector<Edge> train_edges = uni;
  train_edges.insert(train_edges.end(), kept.begin(), kept.end());
  std::sort(train_edges.begin(), train_edges.end());
  for (const auto& e : train_edges) {
    split.train.push_back({e.src, e.dst, 1, Provenance::kObservedEdge});
  }
  const std::size_t n_train_neg = detail::floor_count(neg_train_ratio * train_edges.size());
  auto neg = detail::sample_non_edges(g, n_train_neg, used, rng, "training negatives");
  detail::append(split.train, neg, 0, Provenance::kSampledNegative);
  return split;
}

// Reconstruction: every non-diagonal pair (unordered for undirected graphs)
// is a training pair labelled by the adjacency matrix; the test set is empty
// and evaluation reuses the training pairs.
inline LinkSplit split_reconstruction(const Graph& g) {
  LinkSplit split;
  const auto n = static_cast<NodeId>(g.num_nodes());
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = g.directed() ? 0 : i + 1; j < n; ++j) {
      if (i == j) continue;
      const bool edge = g.has_edge(i, j);
      split.train.push_back({i, j, static_cast<std::uint8_t>(edge ? 1 : 0),
                             edge ? Provenance::kObservedEdge : Provenance::kSampledNegative});
    }
  }
  return split;
}

// Graph formed by the positive training pairs, over the same node set.
inline Graph training_graph(const Graph& g, const LinkSplit& split) {
  std::vector<Edge> edges;
  for (const auto& p : split.train) {
    if (p.label == 1) edges.push_back({p.src, p.dst});
  }
  std::vector<std::string> labels(g.labels().begin(), g.labels().end());
  return Graph(g.directed(), std::move(labels), std::move(edges));
}

}  // namespace clusterlp

#endif  // CLUSTERLP_SPLIT_HPP_
