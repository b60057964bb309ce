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

// Two-phase Louvain modularity maximization (resolution 1), used to pick the
// number of clusters K automatically.

#ifndef CLUSTERLP_LOUVAIN_HPP_
#define CLUSTERLP_LOUVAIN_HPP_

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "clusterlp/graph.hpp"
#include "clusterlp/random.hpp"

namespace clusterlp {

struct Partition {
  std::vector<int> community_of;     // node index -> dense community id
  int k = 0;                         // number of non-empty communities
  double modularity = 0.0;
  std::vector<double> pass_modularity;  // modularity after each level
};

namespace detail {

// Symmetric weighted graph used between aggregation levels. weight(i, j)
// sums A over ordered node pairs, so a self-loop entry holds twice the
// internal edge weight of an aggregated community.
struct WeightedGraph {
  std::vector<std::vector<std::pair<int, double>>> adj;  // includes self-loops
  std::vector<double> degree;                            // row sums of A
  double total = 0.0;                                    // sum of A (= 2m)
};

inline WeightedGraph to_weighted(const Graph& g) {
  WeightedGraph w;
  const auto n = g.num_nodes();
  w.adj.resize(n);
  w.degree.assign(n, 0.0);
  for (const auto& e : g.edges()) {
    w.adj[e.src].push_back({static_cast<int>(e.dst), 1.0});
    w.adj[e.dst].push_back({static_cast<int>(e.src), 1.0});
    w.degree[e.src] += 1.0;
    w.degree[e.dst] += 1.0;
  }
  w.total = 2.0 * static_cast<double>(g.num_edges());
  return w;
}

// Moves nodes between communities until no move improves modularity.
// Returns the (not necessarily dense) community of each node.
inline std::vector<int> local_moves(const WeightedGraph& g, Rng& rng, bool& moved_any) {
  const int n = static_cast<int>(g.adj.size());
  std::vector<int> comm(n);
  std::iota(comm.begin(), comm.end(), 0);
  std::vector<double> tot = g.degree;
  std::vector<double> link(n, 0.0);
  std::vector<int> touched;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  moved_any = false;

  bool improved = true;
  while (improved) {
    improved = false;
    for (int i : order) {
      const int own = comm[i];
      const double ki = g.degree[i];
      touched.clear();
      for (const auto& [j, w] : g.adj[i]) {
        if (j == i) continue;
        if (link[comm[j]] == 0.0) touched.push_back(comm[j]);
        link[comm[j]] += w;
      }
      tot[own] -= ki;
      // Gain of joining c, up to a positive factor: k_{i,c} - tot_c * k_i / 2m.
      const double own_gain = link[own] - tot[own] * ki / g.total;
      int best = own;
      double best_gain = own_gain;
      std::sort(touched.begin(), touched.end());
      for (int c : touched) {
        if (c == own) continue;
        const double gain = link[c] - tot[c] * ki / g.total;
        if (gain > best_gain + 1e-12 * std::max(1.0, std::abs(best_gain))) {
          best = c;
          best_gain = gain;
        }
      }
      tot[best] += ki;
      if (best != own) {
        comm[i] = best;
        improved = true;
        moved_any = true;
      }
      for (int c : touched) link[c] = 0.0;
    }
  }
  return comm;
}

inline WeightedGraph aggregate(const WeightedGraph& g, const std::vector<int>& dense, int k) {
  WeightedGraph out;
  out.adj.resize(k);
  out.degree.assign(k, 0.0);
  out.total = g.total;
  std::vector<std::map<int, double>> rows(k);
  for (std::size_t i = 0; i < g.adj.size(); ++i) {
    for (const auto& [j, w] : g.adj[i]) rows[dense[i]][dense[j]] += w;
  }
  for (int c = 0; c < k; ++c) {
    for (const auto& [d, w] : rows[c]) {
      out.adj[c].push_back({d, w});
      out.degree[c] += w;
    }
  }
  return out;
}

// Relabels ids densely in order of first appearance.
inline int densify(std::vector<int>& ids) {
  std::map<int, int> remap;
  for (auto& id : ids) {
    auto [it, inserted] = remap.emplace(id, static_cast<int>(remap.size()));
    id = it->second;
  }
  return static_cast<int>(remap.size());
}

}  // namespace detail

// Newman-Girvan modularity of a partition of an undirected (or symmetrized)
// graph, resolution 1.
inline double modularity(const Graph& graph, const std::vector<int>& community_of) {
  const Graph g = symmetrize(graph);
  if (community_of.size() != g.num_nodes()) throw ConfigError("partition size mismatch");
  const double m2 = 2.0 * static_cast<double>(g.num_edges());
  if (m2 == 0) throw DataError("modularity of a graph without edges");
  const int k = community_of.empty()
                    ? 0
                    : *std::max_element(community_of.begin(), community_of.end()) + 1;
  std::vector<double> internal(k, 0.0), tot(k, 0.0);
  for (const auto& e : g.edges()) {
    tot[community_of[e.src]] += 1.0;
    tot[community_of[e.dst]] += 1.0;
    if (community_of[e.src] == community_of[e.dst]) internal[community_of[e.src]] += 2.0;
  }
  double q = 0.0;
  for (int c = 0; c < k; ++c) q += internal[c] / m2 - (tot[c] / m2) * (tot[c] / m2);
  return q;
}

inline Partition louvain_auto_k(const Graph& graph, std::uint64_t seed) {
  const Graph g = symmetrize(graph);
  if (g.num_edges() == 0) throw DataError("Louvain needs at least one edge");
  Rng rng(seed, Stream::kLouvain);

  Partition result;
  result.community_of.resize(g.num_nodes());
  std::iota(result.community_of.begin(), result.community_of.end(), 0);
  detail::WeightedGraph level = detail::to_weighted(g);

  while (true) {
    bool moved = false;
    std::vector<int> comm = detail::local_moves(level, rng, moved);
    const int k = detail::densify(comm);
    for (auto& c : result.community_of) c = comm[c];
    result.pass_modularity.push_back(modularity(g, result.community_of));
    if (!moved || k == static_cast<int>(level.adj.size())) break;
    level = detail::aggregate(level, comm, k);
  }
  result.k = detail::densify(result.community_of);
  result.modularity = modularity(g, result.community_of);
  return result;
}

}  // namespace clusterlp

#endif  // CLUSTERLP_LOUVAIN_HPP_
