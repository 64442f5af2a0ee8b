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
#ifndef GBSCLUST_QCLUST_H_
#define GBSCLUST_QCLUST_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "gbsclust/clustering.h"
#include "gbsclust/gbs.h"
#include "gbsclust/graph.h"

namespace gbsclust {

struct ClusterParams {
  // Edge threshold as a percentile of the pairwise distances...
  double d_percentile = 0.35;
  // ...unless an absolute threshold is given.
  std::optional<double> d_tilde;
  // Mean photon number as a fraction of the current graph size.
  double n_mean_factor = 0.5;
  // Samples drawn per round.
  std::size_t samples = 50;
  // Post-selection size L as a fraction of the current graph size.
  double l_factor = 1.0 / 3.0;
  // Density threshold schedule t(i) = max(t_min, t0 * gamma^i).
  double t0 = 0.90;
  double gamma = 0.95;
  double t_min = 0.50;
  // Extraction stops once fewer nodes remain.
  std::size_t min_remaining = 3;
  // Consecutive failed rounds before L is halved or extraction gives up.
  std::size_t max_rounds_per_cluster = 50;
  // Recompute L and n_mean on the shrunken graph (false: keep initial ones).
  bool recompute_per_iteration = true;
  DetectionMode mode = DetectionMode::kPnrPostselected;
  std::uint64_t seed = 0;

  // Throws InvalidInputError on out-of-range fields.
  void validate() const;
  nlohmann::json to_json() const;
  // Keys missing from `j` keep their value in `base`.
  static ClusterParams from_json(const nlohmann::json& j,
                                 ClusterParams base);
  static ClusterParams from_json(const nlohmann::json& j);
};

struct AcceptedCluster {
  NodeSet nodes;  // original node indices
  double density = 0.0;
  double threshold = 0.0;
  std::size_t rounds = 0;
  std::size_t post_selection_size = 0;
};

struct GbsClusterRun {
  Clustering clustering;
  std::vector<AcceptedCluster> accepted;
  // Nodes handed to post-processing.
  NodeSet leftover;
  std::size_t total_rounds = 0;
};

// t(i) = max(t_min, t0 * gamma^i).
double compute_threshold(std::size_t failed_rounds, const ClusterParams& params);

// Densest subset with at least `min_size` nodes; ties go to the larger subset,
// then to the lexicographically smaller node list. nullopt when no sample
// survives post-selection.
std::optional<NodeSet> find_densest_candidate(const SampleBatch& batch,
                                              const Graph& g,
                                              std::size_t min_size);

// Assigns every unclustered node: nodes without edges into any cluster become
// singletons; others join the cluster maximizing edges(n, c) / |c|, with ties
// to the lower cluster index. Ratios use the clusters as given, so the order
// in which unclustered nodes are handled does not matter.
Clustering post_process(std::span<const int> unclustered,
                        const std::vector<NodeSet>& clusters, const Graph& g,
                        std::string method = "gbs",
                        nlohmann::json params = {});

// Iterative densest-subgraph extraction on an already built graph.
GbsClusterRun gbs_cluster_graph(const Graph& g, const ClusterParams& params);

// Builds the distance matrix and threshold graph, then clusters.
GbsClusterRun gbs_cluster_run(const PointSet& points,
                              const ClusterParams& params);
Clustering gbs_cluster(const PointSet& points, const ClusterParams& params);

// Graph construction shared by every method: percentile or absolute
// threshold over the pairwise distances.
double edge_threshold(const DistanceMatrix& distances,
                      const ClusterParams& params);

}  // namespace gbsclust

#endif  // GBSCLUST_QCLUST_H_
