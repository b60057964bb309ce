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

#ifndef CLUSTERLP_HEURISTICS_HPP_
#define CLUSTERLP_HEURISTICS_HPP_

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clusterlp/graph.hpp"

namespace clusterlp {

enum class Heuristic { kJaccard, kAdamicAdar, kPreferentialAttachment };

inline std::string_view to_string(Heuristic h) {
  switch (h) {
    case Heuristic::kJaccard: return "jc";
    case Heuristic::kAdamicAdar: return "aa";
    case Heuristic::kPreferentialAttachment: return "pa";
  }
  return "?";
}

inline Heuristic parse_heuristic(std::string_view s) {
  if (s == "jc") return Heuristic::kJaccard;
  if (s == "aa") return Heuristic::kAdamicAdar;
  if (s == "pa") return Heuristic::kPreferentialAttachment;
  throw ConfigError("unknown heuristic '" + std::string(s) + "' (expected jc, aa or pa)");
}

inline double heuristic_score(const Graph& g, NodeId i, NodeId j, Heuristic method) {
  const auto ni = g.neighbors(i);
  const auto nj = g.neighbors(j);
  switch (method) {
    case Heuristic::kPreferentialAttachment:
      return static_cast<double>(ni.size()) * static_cast<double>(nj.size());
    case Heuristic::kJaccard: {
      std::vector<NodeId> shared;
      std::set_intersection(ni.begin(), ni.end(), nj.begin(), nj.end(),
                            std::back_inserter(shared));
      const std::size_t common = shared.size();
      const std::size_t uni = ni.size() + nj.size() - common;
      return uni == 0 ? 0.0 : static_cast<double>(common) / static_cast<double>(uni);
    }
    case Heuristic::kAdamicAdar: {
      std::vector<NodeId> common;
      std::set_intersection(ni.begin(), ni.end(), nj.begin(), nj.end(),
                            std::back_inserter(common));
      double s = 0.0;
      for (NodeId z : common) {
        const auto dz = g.neighbors(z).size();
        if (dz > 1) s += 1.0 / std::log(static_cast<double>(dz));
      }
      return s;
    }
  }
  return 0.0;
}

inline std::vector<double> heuristic_scores(const Graph& g, std::span<const Edge> pairs,
                                            Heuristic method) {
  if (g.directed()) throw ConfigError("heuristic scores are defined for undirected graphs");
  std::vector<double> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) {
    if (p.src >= g.num_nodes() || p.dst >= g.num_nodes()) {
      throw ConfigError("pair index out of range");
    }
    out.push_back(heuristic_score(g, p.src, p.dst, method));
  }
  return out;
}

}  // namespace clusterlp

#endif  // CLUSTERLP_HEURISTICS_HPP_
