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
#ifndef GBSCLUST_CLUSTERING_H_
#define GBSCLUST_CLUSTERING_H_

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gbsclust/graph.h"

namespace gbsclust {

// A partition of point indices 0..M-1 into nonempty clusters, tagged with the
// method and parameters that produced it.
class Clustering {
 public:
  // Throws InvalidInputError unless `clusters` is a partition of 0..M-1 with
  // no empty cluster. Node lists are sorted; cluster order is kept.
  Clustering(std::vector<NodeSet> clusters, std::size_t point_count,
             std::string method = {}, nlohmann::json params = {});

  const std::vector<NodeSet>& clusters() const { return clusters_; }
  std::size_t cluster_count() const { return clusters_.size(); }
  std::size_t point_count() const { return assignment_.size(); }
  // Cluster index of each point.
  const std::vector<int>& assignment() const { return assignment_; }
  const std::string& method() const { return method_; }
  const nlohmann::json& params() const { return params_; }

 private:
  std::vector<NodeSet> clusters_;
  std::vector<int> assignment_;
  std::string method_;
  nlohmann::json params_;
};

}  // namespace gbsclust

#endif  // GBSCLUST_CLUSTERING_H_
