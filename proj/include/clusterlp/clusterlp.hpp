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

// Umbrella header.

#ifndef CLUSTERLP_CLUSTERLP_HPP_
#define CLUSTERLP_CLUSTERLP_HPP_

#include "clusterlp/error.hpp"
#include "clusterlp/experiment.hpp"
#include "clusterlp/graph.hpp"
#include "clusterlp/heuristics.hpp"
#include "clusterlp/io.hpp"
#include "clusterlp/kmeans.hpp"
#include "clusterlp/louvain.hpp"
#include "clusterlp/metrics.hpp"
#include "clusterlp/model.hpp"
#include "clusterlp/objective.hpp"
#include "clusterlp/random.hpp"
#include "clusterlp/split.hpp"
#include "clusterlp/train.hpp"

#endif  // CLUSTERLP_CLUSTERLP_HPP_
