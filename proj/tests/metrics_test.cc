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
#include <cmath>
#include <map>
#include <random>

#include <gtest/gtest.h>

#include "gbsclust/error.h"
#include "gbsclust/metrics.h"
#include "gbsclust/qclust.h"
#include "test_support.h"

namespace gbsclust {
namespace {

namespace gt = gbsclust::testing;

PointSet tight_pairs() {
  return PointSet({{"a", 0.0, 0.0}, {"b", 0.0, 0.01}, {"c", 10.0, 10.0}, {"d", 10.0, 10.01}});
}

Graph two_triangles() {
  return gt::graph_from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
}

// Plain per-point silhouette straight from the definition.
double silhouette_oracle(const DistanceMatrix& d, const std::vector<int>& label) {
  const std::size_t n = d.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::map<int, std::pair<double, int>> by_cluster;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      auto& [sum, count] = by_cluster[label[j]];
      sum += d(i, j);
      ++count;
    }
    if (!by_cluster.count(label[i])) continue;
    const double a = by_cluster[label[i]].first / by_cluster[label[i]].second;
    double b = INFINITY;
    for (const auto& [c, sc] : by_cluster) {
      if (c != label[i]) b = std::min(b, sc.first / sc.second);
    }
    total += (b - a) / std::max(a, b);
  }
  return total / static_cast<double>(n);
}

TEST(SilhouetteTest, TightPairs) {
  EXPECT_NEAR(silhouette(tight_pairs(), Clustering({{0, 1}, {2, 3}}, 4)), 0.999, 1e-3);
}

TEST(SilhouetteTest, AllSingletonsScoreZero) {
  EXPECT_EQ(silhouette(tight_pairs(), Clustering({{0}, {1}, {2}, {3}}, 4)), 0.0);
}

TEST(SilhouetteTest, MisassignedPointIsNegative) {
  const PointSet pts = tight_pairs();
  const DistanceMatrix d = compute_distance_matrix(pts);
  const Clustering swapped({{0, 2}, {1, 3}}, 4);
  const double a = d(0, 2);
  const double b = (d(0, 1) + d(0, 3)) / 2.0;
  EXPECT_LT((b - a) / std::max(a, b), 0.0);
  EXPECT_LT(silhouette(d, swapped), 0.0);
}

TEST(SilhouetteTest, SingleClusterUndefined) {
  EXPECT_THROW(silhouette(tight_pairs(), Clustering({{0, 1, 2, 3}}, 4)), UndefinedMetricError);
}

TEST(SilhouetteTest, MatchesDefinitionOnRandomLabelings) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, 3);
  std::vector<Point> raw;
  for (int i = 0; i < 16; ++i) raw.push_back({"p" + std::to_string(i), u(rng), u(rng)});
  const PointSet pts(raw);
  const DistanceMatrix d = compute_distance_matrix(pts);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<NodeSet> clusters(4);
    std::vector<int> label(16);
    for (int i = 0; i < 16; ++i) {
      label[static_cast<std::size_t>(i)] = i < 4 ? i : pick(rng);
      clusters[static_cast<std::size_t>(label[static_cast<std::size_t>(i)])].push_back(i);
    }
    const double s = silhouette(d, Clustering(clusters, 16));
    EXPECT_NEAR(s, silhouette_oracle(d, label), 1e-12);
    EXPECT_GE(s, -1.0);
    EXPECT_LE(s, 1.0);
  }
}

TEST(WeightedDensityTest, Examples) {
  EXPECT_EQ(weighted_density(Clustering({{0, 1, 2, 3}}, 4), gt::complete_graph(4)), 1.0);
  EXPECT_EQ(weighted_density(Clustering({{0}, {1}, {2}}, 3), gt::path_graph(3)), 1.0);
  const Graph g = gt::graph_from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}});
  EXPECT_NEAR(weighted_density(Clustering({{0, 1, 2}, {3, 4, 5}}, 6), g), 5.0 / 6.0, 1e-15);
}

TEST(CohesionTest, Examples) {
  EXPECT_EQ(cohesion(Clustering({{0, 1, 2}, {3, 4, 5}}, 6), two_triangles()), 1.0);
  const Graph p4 = gt::path_graph(4);
  EXPECT_NEAR(cohesion(Clustering({{0, 1, 2, 3}}, 4), p4),
              graph_density(p4, std::vector<int>{0, 1, 2, 3}), 1e-15);
  const Graph pendant = gt::graph_from_edges(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}});
  EXPECT_NEAR(cohesion(Clustering({{0, 1, 2}, {3}}, 4), pendant), 2.0 / 3.0, 1e-15);
}

TEST(CohesionTest, CrossEdgeNeverHelps) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = Graph::from_adjacency(gt::random_symmetric_01(8, 0.4, rng));
    const Clustering c({{0, 1, 2}, {3, 4}, {5, 6, 7}}, 8);
    const double before = cohesion(c, g);
    const double w_before = weighted_density(c, g);
    if (!g.has_edge(2, 5)) g.add_edge(2, 5);
    EXPECT_LE(cohesion(c, g), before + 1e-15);
    EXPECT_EQ(weighted_density(c, g), w_before);
  }
}

TEST(MetricsTest, RelabelingAndPermutationInvariant) {
  std::mt19937_64 rng(9);
  const Eigen::MatrixXd a = gt::random_symmetric_01(7, 0.5, rng);
  const Graph g = Graph::from_adjacency(a);
  const Clustering c({{0, 3}, {1, 2, 6}, {4, 5}}, 7);
  const Clustering relabeled({{4, 5}, {0, 3}, {1, 2, 6}}, 7);
  EXPECT_NEAR(cohesion(c, g), cohesion(relabeled, g), 1e-15);
  EXPECT_NEAR(weighted_density(c, g), weighted_density(relabeled, g), 1e-15);
  // Relabel node i as perm[i].
  const std::vector<int> perm{6, 2, 0, 5, 1, 3, 4};
  Graph h(7);
  for (const auto& [u, v] : g.edges()) {
    h.add_edge(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
  }
  std::vector<NodeSet> moved;
  for (const NodeSet& s : c.clusters()) {
    NodeSet t;
    for (int u : s) t.push_back(perm[static_cast<std::size_t>(u)]);
    moved.push_back(t);
  }
  const Clustering cp(moved, 7);
  EXPECT_NEAR(cohesion(c, g), cohesion(cp, h), 1e-15);
  EXPECT_NEAR(weighted_density(c, g), weighted_density(cp, h), 1e-15);
}

TEST(BreakdownTest, Conventions) {
  const Graph g = gt::graph_from_edges(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}});
  const auto parts = cluster_breakdown(Clustering({{0, 1, 2}, {3}}, 4), g);
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts[0].size, 3u);
  EXPECT_EQ(parts[0].delta_int, 1.0);
  EXPECT_NEAR(parts[0].delta_ext, 1.0 / 3.0, 1e-15);
  EXPECT_EQ(parts[1].density, 1.0);
  EXPECT_EQ(parts[1].delta_int, 1.0);
  const auto whole = cluster_breakdown(Clustering({{0, 1, 2, 3}}, 4), g);
  EXPECT_EQ(whole[0].delta_ext, 0.0);
}

TEST(EvaluateTest, ReportAndJson) {
  const PointSet pts = gt::three_clique_points();
  const DistanceMatrix d = compute_distance_matrix(pts);
  const Graph g = build_adjacency(d, 0.01);
  std::vector<NodeSet> clusters{{0, 1, 2, 3, 4}, {5, 6, 7, 8, 9}, {10, 11, 12, 13, 14}};
  const MetricsReport r = evaluate(d, g, Clustering(clusters, 15));
  EXPECT_EQ(r.weighted_density, 1.0);
  EXPECT_EQ(r.cohesion, 1.0);
  EXPECT_GT(r.silhouette, 0.99);
  const nlohmann::json j = r.to_json();
  EXPECT_EQ(j["weighted_density"], 1.0);
  EXPECT_EQ(j["per_cluster"].size(), 3u);
  std::size_t total = 0;
  for (const auto& part : r.per_cluster) total += part.size;
  EXPECT_EQ(total, 15u);
}

TEST(EvaluateTest, RangesHoldOnRandomInstances) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Point> raw;
    for (int i = 0; i < 14; ++i) raw.push_back({"p" + std::to_string(i), u(rng), u(rng)});
    const PointSet pts(raw);
    const DistanceMatrix d = compute_distance_matrix(pts);
    ClusterParams p;
    p.seed = static_cast<std::uint64_t>(trial);
    const Graph g = build_adjacency(d, edge_threshold(d, p));
    const Clustering c = gbs_cluster_graph(g, p).clustering;
    if (c.cluster_count() < 2) continue;
    const MetricsReport r = evaluate(d, g, c);
    EXPECT_GE(r.silhouette, -1.0);
    EXPECT_LE(r.silhouette, 1.0);
    EXPECT_GE(r.weighted_density, 0.0);
    EXPECT_LE(r.weighted_density, 1.0);
    EXPECT_GE(r.cohesion, -1.0);
    EXPECT_LE(r.cohesion, 1.0);
  }
}

}  // namespace
}  // namespace gbsclust
