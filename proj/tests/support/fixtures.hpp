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

// Small graphs shared by the test suites.

#ifndef CLUSTERLP_TESTS_SUPPORT_FIXTURES_HPP_
#define CLUSTERLP_TESTS_SUPPORT_FIXTURES_HPP_

#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "clusterlp/graph.hpp"
#include "clusterlp/random.hpp"

namespace clusterlp::testing {

inline Graph make_graph(std::size_t n, const std::vector<std::pair<int, int>>& edges,
                        bool directed = false) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  std::vector<Edge> e;
  for (auto [a, b] : edges) e.push_back({static_cast<NodeId>(a), static_cast<NodeId>(b)});
  return Graph(directed, std::move(labels), std::move(e));
}

inline Graph clique(int n, int offset = 0, std::vector<std::pair<int, int>>* out = nullptr) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) edges.emplace_back(offset + i, offset + j);
  }
  if (out) out->insert(out->end(), edges.begin(), edges.end());
  return make_graph(static_cast<std::size_t>(offset + n), edges);
}

inline Graph two_triangles() { return make_graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}}); }

// Two 5-cliques {0..4} and {5..9} joined by the bridge (4, 5).
inline Graph barbell() {
  std::vector<std::pair<int, int>> edges;
  clique(5, 0, &edges);
  clique(5, 5, &edges);
  edges.emplace_back(4, 5);
  return make_graph(10, edges);
}

// Ten nodes, two loose communities plus a pendant chain.
inline Graph ten_node() {
  return make_graph(10, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5},
                         {5, 6}, {5, 7}, {6, 7}, {6, 8}, {7, 8}, {8, 9}});
}

// Directed graph with reciprocal pairs (0,1), (2,3), (6,7) and several
// unidirectional arcs.
inline Graph directed_mixed() {
  return make_graph(8, {{0, 1}, {1, 0}, {2, 3}, {3, 2}, {1, 2}, {2, 4}, {4, 5}, {5, 0},
                        {3, 6}, {6, 7}, {7, 6}, {7, 1}, {0, 4}, {5, 3}},
                    true);
}

// Erdos-Renyi style random graph, always containing edge (0, 1).
inline Graph random_graph(std::size_t n, double p, std::uint64_t seed, bool directed = false) {
  Rng rng(seed);
  std::vector<std::pair<int, int>> edges = {{0, 1}};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = directed ? 0 : i + 1; j < n; ++j) {
      if (i == j || (i == 0 && j == 1)) continue;
      if (rng.uniform() < p) edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return make_graph(n, edges, directed);
}

inline std::filesystem::path data_dir() { return CLUSTERLP_DATA_DIR; }

inline Graph karate() {
  std::ifstream in(data_dir() / "karate.edgelist");
  return load_edge_list(in, false);
}

// Fresh scratch directory under the build tree.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::path(CLUSTERLP_SCRATCH_DIR) / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace clusterlp::testing

#endif  // CLUSTERLP_TESTS_SUPPORT_FIXTURES_HPP_
