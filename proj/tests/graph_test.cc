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
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "gbsclust/error.h"
#include "gbsclust/graph.h"
#include "gbsclust/io.h"
#include "test_support.h"

namespace gbsclust {
namespace {

namespace gt = gbsclust::testing;

PointSet points_of(std::vector<std::pair<double, double>> coords) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    pts.push_back({"p" + std::to_string(i), coords[i].first, coords[i].second});
  }
  return PointSet(std::move(pts));
}

TEST(PointSetTest, RejectsBadInput) {
  EXPECT_THROW(PointSet({{"a", 0.0, 0.0}}), InvalidInputError);
  EXPECT_THROW(PointSet({{"a", 0.0, 0.0}, {"a", 1.0, 1.0}}), InvalidInputError);
  EXPECT_THROW(PointSet({{"a", 0.0, 0.0}, {"b", NAN, 1.0}}), InvalidInputError);
}

TEST(DistanceMatrixTest, ThreeFourFive) {
  const DistanceMatrix d = compute_distance_matrix(points_of({{0, 0}, {3, 4}}));
  EXPECT_EQ(d(0, 1), 5.0);
  EXPECT_EQ(d(1, 0), 5.0);
  EXPECT_EQ(d(0, 0), 0.0);
}

TEST(DistanceMatrixTest, CoincidentPoints) {
  const DistanceMatrix d = compute_distance_matrix(points_of({{1, 1}, {1, 1}}));
  EXPECT_EQ(d(0, 1), 0.0);
}

TEST(DistanceMatrixTest, Diagonal) {
  const DistanceMatrix d =
      compute_distance_matrix(points_of({{0, 0}, {1, 0}, {0, 1}}));
  EXPECT_NEAR(d(1, 2), 1.41421356, 1e-8);
}

TEST(DistanceMatrixTest, SymmetricAndTriangleInequality) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::pair<double, double>> coords;
  for (int i = 0; i < 12; ++i) coords.emplace_back(u(rng), u(rng));
  const DistanceMatrix d = compute_distance_matrix(points_of(coords));
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = 0; j < d.size(); ++j) {
      EXPECT_EQ(d(i, j), d(j, i));
      for (std::size_t k = 0; k < d.size(); ++k) {
        EXPECT_LE(d(i, k), d(i, j) + d(j, k) + 1e-12);
      }
    }
  }
  EXPECT_EQ(d.pair_distances().size(), 12u * 11u / 2u);
}

TEST(PercentileTest, LinearInterpolation) {
  std::vector<double> values;
  for (int i = 1; i <= 100; ++i) values.push_back(i);
  EXPECT_NEAR(percentile(values, 0.35), 35.65, 1e-12);
  EXPECT_EQ(percentile(std::vector<double>{7.0}, 0.3), 7.0);
  EXPECT_EQ(percentile(std::vector<double>{1.0, 2.0}, 1.0), 2.0);
  EXPECT_EQ(percentile(std::vector<double>{2.0, 1.0}, 0.0), 1.0);
}

TEST(PercentileTest, Errors) {
  EXPECT_THROW(percentile(std::vector<double>{}, 0.5), InvalidInputError);
  EXPECT_THROW(percentile(std::vector<double>{1.0}, 1.5), InvalidInputError);
}

TEST(PercentileTest, MonotoneInQ) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  std::vector<double> values(37);
  for (double& v : values) v = u(rng);
  double previous = -1.0;
  for (int i = 0; i <= 100; ++i) {
    const double p = percentile(values, i / 100.0);
    EXPECT_GE(p, previous);
    previous = p;
  }
}

TEST(BuildAdjacencyTest, StrictThreshold) {
  const DistanceMatrix d = compute_distance_matrix(points_of({{0, 0}, {3, 4}}));
  EXPECT_TRUE(build_adjacency(d, 6.0).has_edge(0, 1));
  EXPECT_FALSE(build_adjacency(d, 5.0).has_edge(0, 1));
  EXPECT_THROW(build_adjacency(d, 0.0), InvalidInputError);
}

TEST(BuildAdjacencyTest, CollinearPath) {
  const DistanceMatrix d =
      compute_distance_matrix(points_of({{0, 0}, {1, 0}, {2, 0}}));
  EXPECT_EQ(build_adjacency(d, 1.5), gt::path_graph(3));
}

TEST(BuildAdjacencyTest, EdgeSetGrowsWithThreshold) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::pair<double, double>> coords;
  for (int i = 0; i < 15; ++i) coords.emplace_back(u(rng), u(rng));
  const DistanceMatrix d = compute_distance_matrix(points_of(coords));
  std::size_t previous = 0;
  for (double t = 0.05; t < 1.5; t += 0.05) {
    const Graph g = build_adjacency(d, t);
    EXPECT_GE(g.edge_count(), previous);
    previous = g.edge_count();
    for (int i = 0; i < 15; ++i) EXPECT_FALSE(g.has_edge(i, i));
  }
}

TEST(GraphTest, Density) {
  const std::vector<int> all3{0, 1, 2};
  EXPECT_EQ(graph_density(gt::complete_graph(3), all3), 1.0);
  EXPECT_NEAR(graph_density(gt::path_graph(3), all3), 2.0 / 3.0, 1e-15);
  const Graph k4_minus = gt::graph_from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
  const std::vector<int> all4{0, 1, 2, 3};
  EXPECT_NEAR(graph_density(k4_minus, all4), 5.0 / 6.0, 1e-15);
  EXPECT_EQ(graph_density(k4_minus, std::vector<int>{2}), 0.0);
  EXPECT_THROW(graph_density(k4_minus, std::vector<int>{4}), InvalidInputError);
}

TEST(GraphTest, InducedSubgraph) {
  const Graph tri = gt::complete_graph(3);
  EXPECT_EQ(induced_subgraph(tri, std::vector<int>{0, 1, 2}), tri);
  const Graph edge = induced_subgraph(tri, std::vector<int>{0, 1});
  EXPECT_EQ(edge.size(), 2u);
  EXPECT_EQ(edge.edge_count(), 1u);
  const Graph apart = induced_subgraph(gt::path_graph(3), std::vector<int>{0, 2});
  EXPECT_EQ(apart.edge_count(), 0u);
  EXPECT_EQ(apart.labels(), (std::vector<int>{0, 2}));
  EXPECT_THROW(induced_subgraph(tri, std::vector<int>{}), InvalidInputError);
}

TEST(GraphTest, EdgeCounts) {
  const Graph tri = gt::complete_graph(3);
  EdgeCounts c = edge_counts(tri, std::vector<int>{0, 1, 2});
  EXPECT_EQ(c.internal, 3u);
  EXPECT_EQ(c.external, 0u);
  c = edge_counts(tri, std::vector<int>{1});
  EXPECT_EQ(c.internal, 0u);
  EXPECT_EQ(c.external, 2u);
  const Graph bridged = gt::graph_from_edges(
      6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}});
  c = edge_counts(bridged, std::vector<int>{0, 1, 2});
  EXPECT_EQ(c.internal, 3u);
  EXPECT_EQ(c.external, 1u);
}

TEST(GraphTest, DegreeSumIdentity) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = Graph::from_adjacency(gt::random_symmetric_01(10, 0.4, rng));
    std::vector<int> s;
    for (int u = 0; u < 10; u += 2) s.push_back(u);
    const EdgeCounts c = edge_counts(g, s);
    std::size_t deg = 0;
    for (int u : s) deg += static_cast<std::size_t>(g.degree(u));
    EXPECT_EQ(2 * c.internal + c.external, deg);
  }
}

TEST(GraphTest, FromAdjacencyValidates) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3, 3);
  a(0, 1) = 1.0;
  EXPECT_THROW(Graph::from_adjacency(a), InvalidInputError);
  a(1, 0) = 1.0;
  EXPECT_NO_THROW(Graph::from_adjacency(a));
  a(2, 2) = 1.0;
  EXPECT_THROW(Graph::from_adjacency(a), InvalidInputError);
}

TEST(IoTest, PointsRoundTrip) {
  const PointSet pts = points_of({{45.01, 7.61}, {45.0123456789012, 7.7}, {-1e-9, 0}});
  std::stringstream ss;
  write_points_csv(ss, pts);
  const PointSet back = read_points_csv(ss);
  ASSERT_EQ(back.size(), pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    EXPECT_EQ(back[i].id, pts[i].id);
    EXPECT_EQ(back[i].lat, pts[i].lat);
    EXPECT_EQ(back[i].lon, pts[i].lon);
  }
}

TEST(IoTest, PointsCsvErrors) {
  std::stringstream bad_header("name,lat,lon\na,1,2\nb,3,4\n");
  EXPECT_THROW(read_points_csv(bad_header), InvalidInputError);
  std::stringstream bad_number("id,lat,lon\na,1,x\nb,3,4\n");
  EXPECT_THROW(read_points_csv(bad_number), InvalidInputError);
  std::stringstream short_row("id,lat,lon\na,1\nb,3,4\n");
  EXPECT_THROW(read_points_csv(short_row), InvalidInputError);
  EXPECT_THROW(read_points_csv(std::string("/nonexistent/points.csv")), IoError);
}

TEST(IoTest, EdgeListRoundTripKeepsIsolatedNodes) {
  Graph g(5);
  g.add_edge(0, 3);
  g.add_edge(1, 2);
  std::stringstream ss;
  write_edge_list(ss, g);
  EXPECT_EQ(read_edge_list(ss), g);
}

TEST(IoTest, EdgeListWithoutHeader) {
  std::stringstream ss("0 1\n1 2\n\n2 3\n");
  EXPECT_EQ(read_edge_list(ss), gt::path_graph(4));
  std::stringstream loop("1 1\n");
  EXPECT_THROW(read_edge_list(loop), InvalidInputError);
}

}  // namespace
}  // namespace gbsclust
