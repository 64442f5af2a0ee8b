// Copyright 2026 The gbsclust Authors.
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
#include "gbsclust/clustering.h"

#include <algorithm>

#include "gbsclust/error.h"

namespace gbsclust {

Clustering::Clustering(std::vector<NodeSet> clusters, std::size_t point_count,
                       std::string method, nlohmann::json params)
    : clusters_(std::move(clusters)),
      assignment_(point_count, -1),
      method_(std::move(method)),
      params_(std::move(params)) {
  for (std::size_t c = 0; c < clusters_.size(); ++c) {
    NodeSet& nodes = clusters_[c];
    if (nodes.empty()) throw InvalidInputError("clustering has an empty cluster");
    std::sort(nodes.begin(), nodes.end());
    for (int u : nodes) {
      if (u < 0 || static_cast<std::size_t>(u) >= point_count) {
        throw InvalidInputError("cluster member " + std::to_string(u) +
                                " out of range");
      }
      int& slot = assignment_[static_cast<std::size_t>(u)];
      if (slot != -1) {
        throw InvalidInputError("point " + std::to_string(u) +
                                " assigned to more than one cluster");
      }
      slot = static_cast<int>(c);
    }
  }
  for (std::size_t u = 0; u < point_count; ++u) {
    if (assignment_[u] == -1) {
      throw InvalidInputError("point " + std::to_string(u) + " is unassigned");
    }
  }
}

}  // namespace gbsclust
