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
#ifndef GBSCLUST_BASELINES_H_
#define GBSCLUST_BASELINES_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "gbsclust/clustering.h"
#include "gbsclust/graph.h"

namespace gbsclust {

struct KMeansOptions {
  int restarts = 10;
  int max_iterations = 300;
};

struct KMeansResult {
  std::vector<std::array<double, 2>> centroids;
  std::vector<int> assignment;
  double inertia = 0.0;
  // Inertia after every Lloyd iteration of the winning restart.
  std::vector<double> inertia_history;
  int restart = 0;

  Clustering to_clustering(std::uint64_t seed) const;
};

// Lloyd iterations from k-means++ seeding, best of options.restarts runs by
// inertia. Empty clusters take the point farthest from its centroid in the
// largest cluster. Throws InvalidInputError unless 1 <= k <= M.
KMeansResult kmeans(const PointSet& points, std::size_t k, std::uint64_t seed,
                    const KMeansOptions& options = {});

struct ElbowAnalysis {
  std::size_t k = 0;
  // inertia[k - 1] for k = 1..k_max.
  std::vector<double> inertia;
};

// Picks the interior k maximizing inertia(k-1) - 2 inertia(k) + inertia(k+1);
// ties go to the smaller k. Requires 3 <= k_max <= M.
ElbowAnalysis elbow_analysis(const PointSet& points, std::size_t k_max,
                             std::uint64_t seed,
                             const KMeansOptions& options = {});
std::size_t elbow_select_k(const PointSet& points, std::size_t k_max,
                           std::uint64_t seed);

struct DbscanResult {
  std::vector<NodeSet> clusters;
  NodeSet noise;
};

// Closed neighbourhoods (distance <= eps, the point itself included); a core
// point has at least min_pts neighbours. Points are scanned in index order.
DbscanResult dbscan(const PointSet& points, double eps, std::size_t min_pts);

// dbscan followed by the graph post-processing of the noise points.
Clustering dbscan_with_postprocess(const PointSet& points, double eps,
                                   std::size_t min_pts, const Graph& g);

}  // namespace gbsclust

#endif  // GBSCLUST_BASELINES_H_
