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

#ifndef CLUSTERLP_GRAPH_HPP_
#define CLUSTERLP_GRAPH_HPP_

#include <algorithm>
#include <compare>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "clusterlp/error.hpp"

namespace clusterlp {

using NodeId = std::uint32_t;

struct Edge {
  NodeId src = 0;
  NodeId dst = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline std::uint64_t pair_key(NodeId i, NodeId j) {
  return (static_cast<std::uint64_t>(i) << 32) | j;
}

// Simple graph over dense node indices 0..N-1. Undirected edges are stored
// once as (min, max). Node labels are kept verbatim from the input.
class Graph {
 public:
  Graph(bool directed, std::vector<std::string> labels, std::vector<Edge> edges)
      : directed_(directed), labels_(std::move(labels)), edges_(std::move(edges)) {
    const auto n = labels_.size();
    if (n > std::numeric_limits<NodeId>::max()) {
      throw DataError("too many nodes");
    }
    index_.reserve(n);
    for (NodeId i = 0; i < n; ++i) {
      if (!index_.emplace(labels_[i], i).second) {
        throw DataError("duplicate node label '" + labels_[i] + "'");
      }
    }
    keys_.reserve(edges_.size() * 2);
    for (auto& e : edges_) {
      if (e.src >= n || e.dst >= n) throw DataError("edge endpoint out of range");
      if (e.src == e.dst) throw DataError("self-loop on node '" + labels_[e.src] + "'");
      if (!directed_ && e.src > e.dst) std::swap(e.src, e.dst);
      if (!keys_.insert(pair_key(e.src, e.dst)).second) {
        throw DataError("duplicate edge " + labels_[e.src] + " " + labels_[e.dst]);
      }
    }
    std::sort(edges_.begin(), edges_.end());
    out_.resize(n);
    in_.resize(n);
    for (const auto& e : edges_) {
      out_[e.src].push_back(e.dst);
      if (directed_) {
        in_[e.dst].push_back(e.src);
      } else {
        out_[e.dst].push_back(e.src);
      }
    }
    for (auto& v : out_) std::sort(v.begin(), v.end());
    for (auto& v : in_) std::sort(v.begin(), v.end());
  }

  bool directed() const { return directed_; }
  std::size_t num_nodes() const { return labels_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const std::string> labels() const { return labels_; }
  const std::string& label(NodeId i) const { return labels_.at(i); }

  std::optional<NodeId> index_of(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  // Directed: is there an arc i -> j. Undirected: is {i, j} an edge.
  bool has_edge(NodeId i, NodeId j) const {
    if (!directed_ && i > j) std::swap(i, j);
    return keys_.contains(pair_key(i, j));
  }

  // Out-neighbors for directed graphs, all neighbors for undirected ones.
  std::span<const NodeId> neighbors(NodeId i) const { return out_.at(i); }
  std::span<const NodeId> in_neighbors(NodeId i) const {
    return directed_ ? std::span<const NodeId>(in_.at(i)) : neighbors(i);
  }
  std::size_t degree(NodeId i) const {
    return directed_ ? out_.at(i).size() + in_.at(i).size() : out_.at(i).size();
  }

  bool is_reciprocal(const Edge& e) const {
    return directed_ && has_edge(e.dst, e.src);
  }

 private:
  bool directed_;
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, NodeId> index_;
  std::unordered_set<std::uint64_t> keys_;
  std::vector<std::vector<NodeId>> out_;
  std::vector<std::vector<NodeId>> in_;
};

struct IngestStats {
  std::size_t lines = 0;
  std::size_t duplicate_edges = 0;
  std::size_t self_loops = 0;
};

// Reads a whitespace-separated edge list. Blank lines and lines whose first
// non-blank character is '#' are skipped. Self-loop lines are dropped before
// their labels are registered, so they never create isolated nodes.
inline Graph load_edge_list(std::istream& in, bool directed, IngestStats* stats = nullptr) {
  IngestStats local;
  std::vector<std::string> labels;
  std::unordered_map<std::string, NodeId> index;
  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> seen;

  auto intern = [&](const std::string& label) {
    auto [it, inserted] = index.emplace(label, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(label);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream tokens(line);
    std::string a, b, extra;
    if (!(tokens >> a >> b) || (tokens >> extra)) {
      throw ParseError(line_no, "expected two node labels");
    }
    ++local.lines;
    if (a == b) {
      ++local.self_loops;
      continue;
    }
    NodeId i = intern(a);
    NodeId j = intern(b);
    if (!directed && i > j) std::swap(i, j);
    if (!seen.insert(pair_key(i, j)).second) {
      ++local.duplicate_edges;
      continue;
    }
    edges.push_back({i, j});
  }
  if (edges.empty()) throw DataError("edge list contains no edges");
  if (local.duplicate_edges > 0 || local.self_loops > 0) {
    warn("dropped " + std::to_string(local.duplicate_edges) + " duplicate edge(s) and " +
         std::to_string(local.self_loops) + " self-loop(s)");
  }
  if (stats) *stats = local;
  return Graph(directed, std::move(labels), std::move(edges));
}

// Undirected view of any graph: an edge {i, j} exists if either arc does.
inline Graph symmetrize(const Graph& g) {
  if (!g.directed()) return g;
  std::vector<Edge> edges;
  edges.reserve(g.num_edges());
  for (const auto& e : g.edges()) {
    if (e.src < e.dst || !g.has_edge(e.dst, e.src)) {
      edges.push_back({std::min(e.src, e.dst), std::max(e.src, e.dst)});
    }
  }
  std::vector<std::string> labels(g.labels().begin(), g.labels().end());
  return Graph(false, std::move(labels), std::move(edges));
}

}  // namespace clusterlp

#endif  // CLUSTERLP_GRAPH_HPP_
