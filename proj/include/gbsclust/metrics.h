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
#ifndef GBSCLUST_METRICS_H_
#define GBSCLUST_METRICS_H_

#include <cstddef>
#include <vector>

#include <nlohmann/json.hpp>

#include "gbsclust/clustering.h"
#include "gbsclust/graph.h"

namespace gbsclust {

struct ClusterBreakdown {
  std::size_t size = 0;
  // Graph density d_i, 1 for singletons.
  double density = 0.0;
  // Internal edges over n_i (n_i - 1) / 2, 1 for singletons.
  double delta_int = 0.0;
  // Boundary edges over n_i (M - n_i), 0 when the cluster is everything.
  double delta_ext = 0.0;
};

struct MetricsReport {
  double silhouette = 0.0;
  double weighted_density = 0.0;
  double cohesion = 0.0;
  std::vector<ClusterBreakdown> per_cluster;

  nlohmann::json to_json() const;
};

std::vector<ClusterBreakdown> cluster_breakdown(const Clustering& clustering,
                                                const Graph& g);

// Mean of (b - a) / max(a, b); points in singleton clusters score 0.
// Throws UndefinedMetricError with fewer than two clusters.
double silhouette(const DistanceMatrix& distances, const Clustering& clustering);
double silhouette(const PointSet& points, const Clustering& clustering);

// sum_i n_i d_i / M.
double weighted_density(const Clustering& clustering, const Graph& g);

// Mean over clusters of delta_int - delta_ext.
double cohesion(const Clustering& clustering, const Graph& g);

// All three scores; checks each lies in its declared range.
MetricsReport evaluate(const DistanceMatrix& distances, const Graph& g,
                       const Clustering& clustering);

}  // namespace gbsclust

#endif  // GBSCLUST_METRICS_H_
